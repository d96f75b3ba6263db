"""
Run configuration files.

A config is a UTF-8 JSON object naming exactly one category variant:

    {"category": {"pointed": {"invariant_factors": [2], "qform_matrix": [["1/4"]], "h0": [0]}}}
    {"category": {"lattice": {"gram": [[2]], "xi": ["0/1"]}}}
    {"category": {"builtin": "fibonacci"}}

plus the optional run options ``tolerance`` and ``enumeration_cap``.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError

from modfunctor.validators import validate_builtin_name

from .exceptions import ConfigError
from .forms import LatticeForm, OptionsForm, PointedCategoryForm

logger = logging.getLogger(__name__)

VARIANTS = ("pointed", "lattice", "builtin")
TOP_LEVEL_KEYS = ("category", "tolerance", "enumeration_cap")
VARIANT_FORMS = {
    "pointed": PointedCategoryForm,
    "lattice": LatticeForm,
}


@dataclass(frozen=True)
class Config:
    variant: str
    category: object = None
    lattice: object = None
    builtin: str = None
    tolerance: float = None
    enumeration_cap: int = None

    @property
    def is_builtin(self):
        return self.variant == "builtin"


def _escape(message):
    return message.replace("%", "%%")


def _raise_form_errors(form, prefix):
    name, errors = next(iter(form.errors.as_data().items()))
    error = errors[0]
    if name == "__all__":
        field = prefix
    else:
        field = f"{prefix}.{name}" if prefix else name
    code = error.code if error.code and "." in error.code else "cli.config_error"
    params = dict(error.params or {})
    params["field"] = field
    raise ConfigError(
        "%(field)s: " + _escape("; ".join(error.messages)),
        code=code,
        params=params,
    )


def _check_keys(data, allowed, prefix):
    extra = sorted(set(data) - set(allowed))
    if extra:
        field = f"{prefix}.{extra[0]}" if prefix else extra[0]
        raise ConfigError("%(field)s: unknown key.", params={"field": field})


def load_config(data):
    if not isinstance(data, dict):
        raise ConfigError("The config must be a JSON object.", params={"field": ""})
    _check_keys(data, TOP_LEVEL_KEYS, "")
    category = data.get("category")
    if not isinstance(category, dict):
        raise ConfigError("%(field)s: an object is required.", params={"field": "category"})
    _check_keys(category, VARIANTS, "category")
    if len(category) != 1:
        raise ConfigError(
            "%(field)s: exactly one category of pointed, lattice or builtin is required, got %(count)s.",
            params={"field": "category", "count": len(category)},
        )

    options = OptionsForm(data={
        "tolerance": data.get("tolerance"),
        "enumeration_cap": data.get("enumeration_cap"),
    })
    if not options.is_valid():
        _raise_form_errors(options, "")
    tolerance = options.cleaned_data["tolerance"] or settings.CONFORMAL["TOLERANCE"]
    cap = options.cleaned_data["enumeration_cap"] or settings.CONFORMAL["ENUMERATION_CAP"]

    (variant, body), = category.items()
    prefix = f"category.{variant}"
    if variant == "builtin":
        try:
            name = validate_builtin_name(body)
        except ValidationError as exc:
            raise ConfigError(
                "%(field)s: " + _escape("; ".join(exc.messages)),
                code=exc.code,
                params={"field": prefix},
            ) from exc
        return Config("builtin", builtin=name, tolerance=tolerance, enumeration_cap=cap)

    if not isinstance(body, dict):
        raise ConfigError("%(field)s: an object is required.", params={"field": prefix})
    form_class = VARIANT_FORMS[variant]
    _check_keys(body, form_class.base_fields, prefix)
    missing = sorted(set(form_class.base_fields) - set(body))
    if missing:
        raise ConfigError("%(field)s: missing key.", params={"field": f"{prefix}.{missing[0]}"})
    form = form_class(data=body)
    if not form.is_valid():
        _raise_form_errors(form, prefix)

    logger.info("loaded a %s category with invariant factors %s", variant,
                form.cleaned_data["category"].group.invariant_factors)
    return Config(
        variant,
        category=form.cleaned_data["category"],
        lattice=form.cleaned_data.get("lattice"),
        tolerance=tolerance,
        enumeration_cap=cap,
    )


def parse_config(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(
            "Cannot read %(path)s: %(error)s",
            params={"path": str(path), "error": str(exc), "field": ""},
        ) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            "%(path)s is not valid JSON (line %(line)s, column %(column)s).",
            params={"path": str(path), "line": exc.lineno, "column": exc.colno, "field": ""},
        ) from exc
    return load_config(data)
