from django import template

from conformal.utils import format_element

register = template.Library()


@register.filter
def group_name(invariant_factors):
    return " x ".join(f"Z/{n}" for n in invariant_factors) or "trivial"


@register.filter
def element(coordinates):
    return format_element(coordinates)


@register.filter
def spaced(values):
    return " ".join(str(value) for value in values)
