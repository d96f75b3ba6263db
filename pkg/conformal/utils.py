from fractions import Fraction

from django.core.exceptions import ValidationError


def format_rational(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_element(x):
    return "(" + ", ".join(str(c) for c in x) + ")"


def label_indices(md, labels):
    """
    Builtin data is addressed by label index: "--labels 1;1" means two copies of label 1.
    """
    indices = []
    for position, label in enumerate(labels):
        if len(label) != 1 or not 0 <= label[0] < md.rank:
            raise ValidationError(
                "Label %(position)s = %(label)s is not an index 0..%(top)s of %(name)s.",
                code="blocks.invalid_label",
                params={"position": position, "label": label, "top": md.rank - 1, "name": md.name},
            )
        indices.append(label[0])
    return tuple(indices)


def parse_element(group, value, what):
    """A JSON list of integers as an element of ``group``, coordinates reduced."""
    if not isinstance(value, list) or any(isinstance(c, bool) or not isinstance(c, int) for c in value):
        raise ValidationError(
            "%(what)s must be a list of integers, got %(value)r.",
            code="cli.config_error",
            params={"what": what, "value": value},
        )
    return group.reduce(value)
