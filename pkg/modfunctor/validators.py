import re
from fractions import Fraction

from django.core.exceptions import ValidationError

RATIONAL_REGEX = r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$"
LABELS_REGEX = r"^\s*[+-]?\d+(\s*,\s*[+-]?\d+)*(\s*;\s*[+-]?\d+(\s*,\s*[+-]?\d+)*)*\s*$"
BUILTIN_NAMES = ("fibonacci", "ising")


def validate_rational(value):
    """
    Parses a "p/q" string (or a bare integer "p") into an exact Fraction.
    """
    if isinstance(value, bool):
        raise ValidationError("Rationals must be strings like \"p/q\".", code="cli.malformed_rational")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValidationError(
            "Rationals must be strings like \"p/q\", got %(value)r.",
            code="cli.malformed_rational",
            params={"value": value},
        )
    match = re.match(RATIONAL_REGEX, value)
    if not match:
        raise ValidationError(
            "Malformed rational %(value)r; use \"p/q\" with q > 0.",
            code="cli.malformed_rational",
            params={"value": value},
        )

    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValidationError(
            "Zero denominator in %(value)r.",
            code="cli.malformed_rational",
            params={"value": value},
        )
    return Fraction(int(match.group(1)), denominator)


def validate_labels(value):
    """
    Parses "a,b;c,d" into ((a, b), (c, d)); the empty string means no labels.
    """
    if value is None or value.strip() == "":
        return ()
    if not re.match(LABELS_REGEX, value):
        raise ValidationError(
            "Labels must be semicolon-separated elements of comma-separated integers, got %(value)r.",
            code="cli.malformed_labels",
            params={"value": value},
        )
    return tuple(
        tuple(int(coord) for coord in element.split(","))
        for element in value.split(";")
    )


def validate_builtin_name(value):
    if value not in BUILTIN_NAMES:
        raise ValidationError(
            "Unknown builtin modular data %(value)r; choose one of %(names)s.",
            code="blocks.unknown_builtin",
            params={"value": value, "names": ", ".join(BUILTIN_NAMES)},
        )
    return value
