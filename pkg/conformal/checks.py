from django.conf import settings
from django.core.checks import Error, register
from django.core.exceptions import ValidationError

from modfunctor.validators import BUILTIN_NAMES

from .blocks import builtin_modular_data
from .exceptions import ConformalError

POSITIVE_SETTINGS = (
    "TOLERANCE",
    "ENUMERATION_CAP",
    "RADICAL_CAPACITY",
    "AXIOM_CAPACITY",
    "QFORM_BRUTE_FORCE",
    "MAX_GENUS",
    "JSON_PRECISION",
)


@register()
def check_builtin_tables(app_configs, **kwargs):
    errors = []
    for name in BUILTIN_NAMES:
        try:
            builtin_modular_data(name)
        except (ConformalError, ValidationError) as exc:
            errors.append(Error(
                f"Builtin {name} modular data is invalid: {exc}",
                hint="Check the embedded S and T tables.",
                id="conformal.E001",
            ))
    return errors


@register()
def check_settings(app_configs, **kwargs):
    conf = getattr(settings, "CONFORMAL", None)
    if not isinstance(conf, dict):
        return [Error("settings.CONFORMAL must be a dict.", id="conformal.E002")]
    errors = []
    for key in POSITIVE_SETTINGS:
        value = conf.get(key)
        if not isinstance(value, (int, float)) or value <= 0:
            errors.append(Error(
                f"CONFORMAL[{key!r}] must be a positive number, got {value!r}.",
                id="conformal.E002",
            ))
    if not errors and conf["AXIOM_CAPACITY"] > conf["RADICAL_CAPACITY"]:
        errors.append(Error(
            "CONFORMAL['AXIOM_CAPACITY'] cannot exceed CONFORMAL['RADICAL_CAPACITY'].",
            hint="The axiom report also computes the Mueger center.",
            id="conformal.E002",
        ))
    return errors
