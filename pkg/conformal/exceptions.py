"""
Failures that are not plain input validation.

Input validation raises ``django.core.exceptions.ValidationError`` with a
module-qualified ``code``; the classes here cover capacity limits and operations a
category does not support. ``CompositionError`` and ``MoveNotApplicable`` are
validation errors of their own kind so callers can catch them specifically.
"""
from django.core.exceptions import ValidationError


class ConformalError(Exception):
    code = "conformal.error"

    def __init__(self, message, code=None, params=None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.params = params or {}

    def __str__(self):
        if self.params:
            try:
                return self.message % self.params
            except (KeyError, TypeError, ValueError):
                pass
        return self.message


class CapacityError(ConformalError):
    code = "conformal.capacity"


class UnsupportedError(ConformalError):
    code = "conformal.unsupported"


class DegenerateError(UnsupportedError):
    code = "conformal.degenerate"


class CompositionError(ValidationError):
    pass


class MoveNotApplicable(ValidationError):
    pass


class ConfigError(ValidationError):
    """A config file problem; params['field'] is the dotted path of the offending entry."""

    def __init__(self, message, code="cli.config_error", params=None):
        super().__init__(message, code=code, params=params or {})


def error_code(exc):
    """Machine-readable code of a ValidationError or ConformalError."""
    if isinstance(exc, ConformalError):
        return exc.code
    if isinstance(exc, ValidationError):
        if hasattr(exc, "code") and exc.code:
            return exc.code
        codes = [e.code for e in exc.error_list if getattr(e, "code", None)] if hasattr(exc, "error_list") else []
        if codes:
            return codes[0]
        return "validation_error"
    return "internal_error"


def error_params(exc):
    params = getattr(exc, "params", None) or {}
    return {key: _plain(value) for key, value in params.items()}


def error_message(exc):
    if isinstance(exc, ValidationError):
        return "; ".join(exc.messages)
    return str(exc)


def _plain(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return str(value)
