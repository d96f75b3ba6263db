"""
Projective SL(2, Z) representations on the torus from modular pointed categories.

T is diagonal with entries exp(2 pi i q(x)) and S_xy = |G|^(-1/2) exp(-2 pi i b(x, y)).
With this convention (ST)^3 = gamma(q) S^2 where gamma(q) is the Gauss sum of q.
"""
import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from .exceptions import ConformalError, DegenerateError, UnsupportedError
from .finite_forms import gauss_sum, radical
from .modular_data import make_modular_data
from .pointed_gv import Verdict

logger = logging.getLogger(__name__)


def _tolerance(tol):
    return tol if tol is not None else settings.CONFORMAL["TOLERANCE"]


def _require_modular(category, what):
    if category.h0 != category.group.zero:
        raise UnsupportedError(
            "%(what)s needs h0 = 0; this category has h0 = %(h0)s and only block dimensions are available.",
            code="mcg_torus.unsupported",
            params={"what": what, "h0": category.h0},
        )
    if not radical(category.braiding).is_trivial:
        raise DegenerateError(
            "%(what)s needs a non-degenerate braiding.",
            code="mcg_torus.degenerate",
            params={"what": what},
        )


def st_matrices(category, *, tol=None):
    _require_modular(category, "The torus representation")
    group = category.group
    b, q = category.braiding, category.qform
    elements = list(group.elements())
    index = {x: i for i, x in enumerate(elements)}
    S = np.array([
        [np.exp(-2j * np.pi * float(b(x, y))) for y in elements]
        for x in elements
    ]) / math.sqrt(group.order)
    T = np.diag([np.exp(2j * np.pi * float(q(x))) for x in elements])
    dual = tuple(index[group.neg(x)] for x in elements)
    return make_modular_data(tuple(elements), S, T, dual, group=group, name="pointed", tol=_tolerance(tol))


@dataclass(frozen=True)
class RelationReport:
    lam: complex
    st_residual: float
    s2_residual: float
    unitarity_residual: float
    tol: float

    @property
    def passed(self):
        return max(self.st_residual, self.s2_residual, self.unitarity_residual) < self.tol


def _sup(matrix):
    return float(np.abs(matrix).max(initial=0.0))


def check_relations(md, tol=None):
    """Residuals of (ST)^3 = lambda S^2, S^2 = C and S S^dagger = 1 (entrywise sup-norm)."""
    tol = _tolerance(tol)
    S, T = md.S, md.T
    ST = S @ T
    st3 = ST @ ST @ ST
    s2 = S @ S
    lam = complex(st3[0, 0] / s2[0, 0])
    report = RelationReport(
        lam=lam,
        st_residual=_sup(st3 - lam * s2),
        s2_residual=_sup(s2 - md.conjugation),
        unitarity_residual=_sup(S @ S.conj().T - np.eye(md.rank)),
        tol=tol,
    )
    if not report.passed:
        logger.warning("modular data %s violates the SL(2,Z) relations: %s", md.name, report)
    return report


@dataclass(frozen=True)
class AnomalyReport:
    gamma: complex
    central_charge: float


def anomaly(category, *, tol=None):
    """Gauss sum gamma(q) and c = (8 / 2 pi) arg(gamma) mod 8."""
    tol = _tolerance(tol)
    _require_modular(category, "The framing anomaly")
    gamma = gauss_sum(category.qform)
    if abs(abs(gamma) - 1) > tol:
        raise ConformalError(
            "The Gauss sum of a non-degenerate form must have modulus 1, got %(modulus)s.",
            code="mcg_torus.gauss_sum",
            params={"modulus": abs(gamma)},
        )
    c = (8 / (2 * math.pi) * cmath.phase(gamma)) % 8
    nearest = round(c)
    if abs(c - nearest) < tol:
        c = float(nearest % 8)
    return AnomalyReport(gamma=gamma, central_charge=c)


@dataclass(frozen=True)
class FusionReport:
    N: np.ndarray
    residual: float
    group_law: bool = None


def fusion_from_s(md, *, tol=None):
    """N_xy^z = sum_w S_xw S_yw conj(S_zw) / S_0w, rounded."""
    tol = _tolerance(tol)
    s0 = md.S[0, :]
    if np.abs(s0).min() < tol:
        raise DegenerateError(
            "S has a vanishing entry in the unit row.",
            code="mcg_torus.degenerate",
        )
    raw = np.einsum("xw,yw,zw,w->xyz", md.S, md.S, md.S.conj(), 1 / s0)
    N = np.rint(raw.real).astype(int)
    residual = float(np.abs(raw - N).max())

    group_law = None
    if md.group is not None:
        group = md.group
        expected = np.zeros_like(N)
        for x, gx in enumerate(md.labels):
            for y, gy in enumerate(md.labels):
                expected[x, y, md.labels.index(group.add(gx, gy))] = 1
        group_law = bool((N == expected).all())
        if not group_law:
            raise ConformalError(
                "Fusion rules from S do not reproduce the group law.",
                code="mcg_torus.fusion_mismatch",
            )
    if residual > tol:
        logger.warning("fusion coefficients of %s are %s away from integers", md.name, residual)
    return FusionReport(N=N, residual=residual, group_law=group_law)


def connectedness_verdict(category):
    if radical(category.braiding).is_trivial:
        return Verdict.TRUE, "cofactorizable (non-degenerate b)"
    return Verdict.UNDETERMINED, (
        "braiding is degenerate, so cofactorizability fails; the genus-one comparison "
        "of handlebody maps is not computable here. Blocks still exist and glue, "
        "carrying handlebody-group actions."
    )
