from django import forms
from django.core.exceptions import ValidationError

from modfunctor.validators import validate_rational

from .finite_forms import make_group, make_qform
from .lattice_data import make_lattice, to_pointed_gv
from .pointed_gv import make_category
from .utils import parse_element


def _rows(value, what):
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise ValidationError(
            "%(what)s must be a list of rows.",
            code="cli.config_error",
            params={"what": what},
        )
    return value


def _rationals(values):
    return [validate_rational(entry) for entry in values]


# Config data arrives already decoded, so its fields never parse strings.

class DecodedJSONField(forms.JSONField):
    def to_python(self, value):
        if isinstance(value, str):
            raise ValidationError("A list is required, not the string %(value)r.", code="cli.config_error", params={"value": value})
        return super().to_python(value)


class NumberMixin:
    def to_python(self, value):
        if isinstance(value, (bool, str)):
            raise ValidationError("A number is required, got %(value)r.", code="cli.config_error", params={"value": value})
        return super().to_python(value)


class NumberField(NumberMixin, forms.FloatField):
    pass


class WholeNumberField(NumberMixin, forms.IntegerField):
    pass


# Category variants

class PointedCategoryForm(forms.Form):
    invariant_factors = DecodedJSONField(required=False)
    qform_matrix = DecodedJSONField(required=False)
    h0 = DecodedJSONField(required=False)

    def clean_invariant_factors(self):
        factors = self.cleaned_data.get("invariant_factors") or []
        if not isinstance(factors, list):
            raise ValidationError("invariant_factors must be a list.", code="cli.config_error")
        return make_group(factors)

    def clean_qform_matrix(self):
        matrix = _rows(self.cleaned_data.get("qform_matrix") or [], "qform_matrix")
        return [_rationals(row) for row in matrix]

    def clean(self):
        cleaned_data = super().clean()
        group = cleaned_data.get("invariant_factors")
        matrix = cleaned_data.get("qform_matrix")
        if group is None or matrix is None:
            return cleaned_data

        qform = make_qform(group, matrix)
        h0 = parse_element(group, self.cleaned_data.get("h0") or [], "h0")
        cleaned_data["category"] = make_category(group, qform, h0)
        return cleaned_data


class LatticeForm(forms.Form):
    gram = DecodedJSONField(required=False)
    xi = DecodedJSONField(required=False)

    def clean_gram(self):
        gram = _rows(self.cleaned_data.get("gram") or [], "gram")
        for row in gram:
            if any(isinstance(entry, bool) or not isinstance(entry, int) for entry in row):
                raise ValidationError("Gram entries must be integers.", code="lattice_data.invalid_shape")
        return gram

    def clean_xi(self):
        xi = self.cleaned_data.get("xi") or []
        if not isinstance(xi, list):
            raise ValidationError("xi must be a list of rationals.", code="cli.config_error")
        return _rationals(xi)

    def clean(self):
        cleaned_data = super().clean()
        if "gram" not in cleaned_data or "xi" not in cleaned_data:
            return cleaned_data

        lattice = make_lattice(cleaned_data["gram"], cleaned_data["xi"])
        cleaned_data["lattice"] = lattice
        cleaned_data["category"] = to_pointed_gv(lattice)
        return cleaned_data


# Run options

class OptionsForm(forms.Form):
    tolerance = NumberField(required=False, min_value=0)
    enumeration_cap = WholeNumberField(required=False, min_value=1)

    def clean_tolerance(self):
        tolerance = self.cleaned_data.get("tolerance")
        if tolerance == 0:
            raise ValidationError("tolerance must be positive.", code="cli.config_error")
        return tolerance
