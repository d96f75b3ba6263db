"""
Bosonic lattice data: an even Gram matrix together with xi in the dual lattice.

The discriminant group Lambda*/Lambda is presented through the Smith normal form
U G V = D of the Gram matrix G: its generators are the columns of V scaled by 1/d_i
(for the d_i > 1), and a dual vector y has coordinates (U G y)_i mod d_i. The
discriminant form is q(x) = <x~, x~>/2 mod 1 on the rational lift x~.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from django.core.exceptions import ValidationError

from .finite_forms import integer_determinant, make_group, make_qform, smith_normal_form
from .pointed_gv import make_category

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeData:
    gram: tuple
    xi: tuple

    @property
    def rank(self):
        return len(self.gram)

    @property
    def determinant(self):
        return integer_determinant(self.gram)

    def pairing(self, x, y):
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))


@dataclass(frozen=True)
class DiscriminantGroup:
    group: object
    lifts: tuple
    transform: tuple
    factors: tuple


def make_lattice(gram, xi):
    try:
        rows = tuple(tuple(int(entry) for entry in row) for row in gram)
        xi = tuple(Fraction(entry) for entry in xi)
    except (TypeError, ValueError) as exc:
        raise ValidationError(
            "Gram entries must be integers and xi entries rationals: %(error)s.",
            code="lattice_data.invalid_shape",
            params={"error": str(exc)},
        ) from exc
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows) or len(xi) != k:
        raise ValidationError(
            "The Gram matrix must be square and xi must have one entry per row.",
            code="lattice_data.invalid_shape",
        )
    for i in range(k):
        for j in range(k):
            if rows[i][j] != rows[j][i]:
                raise ValidationError(
                    "The Gram matrix is not symmetric at (%(i)s, %(j)s).",
                    code="lattice_data.not_symmetric",
                    params={"i": i, "j": j},
                )
        if rows[i][i] % 2:
            raise ValidationError(
                "The lattice is not even: diagonal entry %(i)s is %(value)s.",
                code="lattice_data.not_even",
                params={"i": i, "value": rows[i][i]},
            )
    if integer_determinant(rows) == 0:
        raise ValidationError(
            "The Gram matrix is degenerate (determinant 0).",
            code="lattice_data.degenerate",
        )
    dual = [sum(rows[i][j] * xi[j] for j in range(k)) for i in range(k)]
    for i, value in enumerate(dual):
        if value.denominator != 1:
            raise ValidationError(
                "xi is not in the dual lattice: (gram . xi)_%(i)s = %(value)s.",
                code="lattice_data.xi_not_dual",
                params={"i": i, "value": str(value)},
            )
    return LatticeData(rows, xi)


def _presentation(lattice):
    U, D, V = smith_normal_form(lattice.gram)
    k = lattice.rank
    kept = [i for i in range(k) if D[i, i] > 1]
    factors = tuple(int(D[i, i]) for i in kept)
    lifts = tuple(
        tuple(Fraction(int(V[row, i]), int(D[i, i])) for row in range(k))
        for i in kept
    )
    transform = tuple(tuple(int(U[i, j]) for j in range(k)) for i in kept)
    return DiscriminantGroup(make_group(factors), lifts, transform, factors)


def discriminant_group(lattice):
    """Lambda*/Lambda with rational generator lifts in Lambda-coordinates."""
    presentation = _presentation(lattice)
    logger.debug(
        "discriminant group %s for a rank %s lattice",
        presentation.factors, lattice.rank,
    )
    return presentation.group, presentation.lifts


def dual_coordinates(lattice, y, presentation=None):
    """The class of a dual vector y (Lambda-coordinates) in the discriminant group."""
    presentation = presentation or _presentation(lattice)
    k = lattice.rank
    gy = [sum(lattice.gram[i][j] * Fraction(y[j]) for j in range(k)) for i in range(k)]
    if any(value.denominator != 1 for value in gy):
        raise ValidationError(
            "Vector %(vector)s is not in the dual lattice.",
            code="lattice_data.not_dual",
            params={"vector": [str(c) for c in y]},
        )
    coordinates = []
    for row, d in zip(presentation.transform, presentation.factors):
        value = sum(row[j] * gy[j] for j in range(k))
        coordinates.append(int(value) % d)
    return tuple(coordinates)


def discriminant_form(lattice):
    group, lifts = discriminant_group(lattice)
    matrix = [
        [lattice.pairing(lifts[a], lifts[b]) / 2 for b in range(group.rank)]
        for a in range(group.rank)
    ]
    return make_qform(group, matrix)


def xi_class(lattice):
    return dual_coordinates(lattice, lattice.xi)


def to_pointed_gv(lattice):
    qform = discriminant_form(lattice)
    h0 = xi_class(lattice)
    logger.info("lattice of determinant %s gives h0 = %s", lattice.determinant, h0)
    return make_category(qform.group, qform, h0)
