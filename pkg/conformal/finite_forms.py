"""
Finite abelian groups with Q/Z-valued quadratic forms.

Elements of ``Z/n_1 x ... x Z/n_k`` are tuples of integers reduced mod n_i. A
quadratic form is given by a symmetric rational matrix A with q(x) = x^T A x mod 1;
its polarization is b(x, y) = q(x + y) - q(x) - q(y) = 2 x^T A y mod 1. All Q/Z
values are exact ``Fraction`` objects in [0, 1); only the Gauss sum leaves exact
arithmetic.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .exceptions import CapacityError

logger = logging.getLogger(__name__)


def mod1(value):
    value = Fraction(value)
    return value - math.floor(value)


# Groups

@dataclass(frozen=True)
class FinAbGroup:
    invariant_factors: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def order(self):
        return math.prod(self.invariant_factors)

    @property
    def zero(self):
        return (0,) * self.rank

    def reduce(self, x):
        if len(x) != self.rank:
            raise ValidationError(
                "Element %(element)r has %(got)s coordinates; the group has %(rank)s.",
                code="finite_forms.invalid_element",
                params={"element": tuple(x), "got": len(x), "rank": self.rank},
            )
        return tuple(int(c) % n for c, n in zip(x, self.invariant_factors))

    def contains(self, x):
        return len(x) == self.rank and all(0 <= c < n for c, n in zip(x, self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple(-a % n for a, n in zip(x, self.invariant_factors))

    def sub(self, x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, self.invariant_factors))

    def scale(self, k, x):
        return tuple(k * a % n for a, n in zip(x, self.invariant_factors))

    def sum(self, elements):
        total = self.zero
        for x in elements:
            total = self.add(total, x)
        return total

    def elements(self):
        """All elements, zero first, in lexicographic order."""
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def basis(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]


def make_group(invariant_factors):
    factors = tuple(invariant_factors)
    for n in factors:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValidationError(
                "Invariant factors must be integers >= 1, got %(factor)r.",
                code="finite_forms.invalid_factor",
                params={"factor": n},
            )
    return FinAbGroup(factors)


def _ensure_capacity(group, limit, what):
    if group.order > limit:
        raise CapacityError(
            "%(what)s enumerates the whole group; order %(order)s exceeds the limit %(limit)s.",
            code="finite_forms.capacity",
            params={"what": what, "order": group.order, "limit": limit},
        )


# Subgroups

@dataclass(frozen=True)
class Subgroup:
    elements: tuple
    invariant_factors: tuple

    @property
    def order(self):
        return len(self.elements)

    @property
    def is_trivial(self):
        return len(self.elements) == 1


def _prime_factors(n):
    primes, p = [], 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def subgroup_invariant_factors(group, elements):
    """
    Invariant factors (divisibility chain, without 1s) of the finite abelian group
    formed by ``elements``, read off from the sizes of its p^k-torsion.
    """
    elements = list(elements)
    order = len(elements)
    primary = []
    for p in _prime_factors(order):
        exponents = []
        previous, k = 0, 1
        while True:
            killed = sum(1 for x in elements if group.scale(p ** k, x) == group.zero)
            logp = round(math.log(killed, p))
            gained = logp - previous
            if gained == 0:
                break
            exponents.append(gained)
            previous, k = logp, k + 1
        # exponents[k-1] = number of cyclic p-parts of order >= p^k
        parts = []
        for k, count in enumerate(exponents, start=1):
            following = exponents[k] if k < len(exponents) else 0
            parts.extend([p ** k] * (count - following))
        primary.append(sorted(parts, reverse=True))

    width = max((len(parts) for parts in primary), default=0)
    factors = []
    for i in range(width):
        factors.append(math.prod(parts[i] for parts in primary if i < len(parts)))
    return tuple(sorted(factors))


def make_subgroup(group, elements):
    elements = tuple(sorted(elements))
    return Subgroup(elements, subgroup_invariant_factors(group, elements))


# Quadratic and bilinear forms

@dataclass(frozen=True)
class QForm:
    group: FinAbGroup
    matrix: tuple

    def __call__(self, x):
        return mod1(sum(
            self.matrix[i][j] * x[i] * x[j]
            for i in range(self.group.rank)
            for j in range(self.group.rank)
        ))

    def values(self):
        return {x: self(x) for x in self.group.elements()}


@dataclass(frozen=True)
class BilinearForm:
    group: FinAbGroup
    matrix: tuple

    def __call__(self, x, y):
        return mod1(sum(
            self.matrix[i][j] * x[i] * y[j]
            for i in range(self.group.rank)
            for j in range(self.group.rank)
        ))


def _witness(qform, limit):
    """First (x, i) with q(x + n_i e_i) != q(x), searched exhaustively."""
    group = qform.group
    if group.order > limit:
        return None
    for x in group.elements():
        for i, n in enumerate(group.invariant_factors):
            shifted = list(x)
            shifted[i] += n
            if qform(shifted) != qform(x):
                return x, i
    return None


def make_qform(group, matrix, *, brute_force_limit=None):
    k = group.rank
    try:
        rows = tuple(tuple(Fraction(entry) for entry in row) for row in matrix)
    except (TypeError, ValueError) as exc:
        raise ValidationError(
            "Quadratic form entries must be rationals: %(error)s.",
            code="finite_forms.invalid_qform",
            params={"error": str(exc)},
        ) from exc
    if len(rows) != k or any(len(row) != k for row in rows):
        raise ValidationError(
            "The quadratic form matrix must be %(rank)s x %(rank)s.",
            code="finite_forms.invalid_qform",
            params={"rank": k},
        )
    for i in range(k):
        for j in range(k):
            if rows[i][j] != rows[j][i]:
                raise ValidationError(
                    "The quadratic form matrix is not symmetric at (%(i)s, %(j)s).",
                    code="finite_forms.invalid_qform",
                    params={"i": i, "j": j},
                )
    qform = QForm(group, rows)

    # q(x + n_i e_i) - q(x) = 2 n_i (A x)_i + n_i^2 A_ii
    for i, n in enumerate(group.invariant_factors):
        if (n * n * rows[i][i]).denominator != 1:
            witness = group.zero
        else:
            bad = [j for j in range(k) if (2 * n * rows[i][j]).denominator != 1]
            witness = group.basis()[bad[0]] if bad else None
        if witness is not None:
            shifted = list(witness)
            shifted[i] += n
            raise ValidationError(
                "Quadratic form is not well defined: q(%(shifted)s) = %(value)s but q(%(witness)s) = %(expected)s.",
                code="finite_forms.invalid_qform",
                params={
                    "witness": witness,
                    "shifted": tuple(shifted),
                    "value": qform(shifted),
                    "expected": qform(witness),
                },
            )

    limit = brute_force_limit if brute_force_limit is not None else settings.CONFORMAL["QFORM_BRUTE_FORCE"]
    found = _witness(qform, limit)
    if found is not None:
        x, i = found
        raise ValidationError(
            "Quadratic form is not well defined at %(witness)s along factor %(factor)s.",
            code="finite_forms.invalid_qform",
            params={"witness": x, "factor": i},
        )
    return qform


def zero_qform(group):
    return QForm(group, tuple(tuple(Fraction(0) for _ in range(group.rank)) for _ in range(group.rank)))


def bilinear(qform):
    return BilinearForm(
        qform.group,
        tuple(tuple(2 * entry for entry in row) for row in qform.matrix),
    )


def radical(form, *, capacity=None):
    """{x : b(x, y) = 0 for all y}, by enumeration."""
    group = form.group
    limit = capacity if capacity is not None else settings.CONFORMAL["RADICAL_CAPACITY"]
    _ensure_capacity(group, limit, "The radical")
    # b(x, -) vanishes iff it vanishes on the generators
    basis = group.basis()
    members = [x for x in group.elements() if all(form(x, e) == 0 for e in basis)]
    logger.debug("radical of order %s in a group of order %s", len(members), group.order)
    return make_subgroup(group, members)


def gauss_sum(qform):
    """|G|^(-1/2) * sum over x of exp(2 pi i q(x))."""
    phases = np.array([float(value) for value in qform.values().values()])
    return complex(np.exp(2j * np.pi * phases).sum() / math.sqrt(qform.group.order))


# Smith normal form

@dataclass(frozen=True)
class SmithForm:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def identity_matrix(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """
    U, D, V with U and V unimodular, U A V = D diagonal and d_1 | d_2 | ...
    (nonnegative). Exact on Python integers.
    """
    A = [[int(entry) for entry in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(target, source, factor):
        A[target] = [a + factor * b for a, b in zip(A[target], A[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_col(target, source, factor):
        for row in A:
            row[target] += factor * row[source]
        for row in V:
            row[target] += factor * row[source]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = A[t][t]

            done = True
            for i in range(t + 1, m):
                add_row(i, t, -(A[i][t] // pivot))
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // pivot))
                if A[t][j]:
                    done = False
            if not done:
                continue

            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    return SmithForm(_object_array(U, m, m), _object_array(A, m, n), _object_array(V, n, n))


def _object_array(rows, nrows, ncols):
    return np.array(rows, dtype=object).reshape(nrows, ncols)


def integer_determinant(matrix):
    """Exact determinant of a square integer matrix via Fraction elimination."""
    rows = [[Fraction(entry) for entry in row] for row in matrix]
    size = len(rows)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return int(det)
