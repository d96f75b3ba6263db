"""
Report payloads shared by the text templates and the JSON output.

Every payload is plain JSON data: rationals as "p/q" strings, complex numbers as
[re, im] pairs, floats rounded to CONFORMAL["JSON_PRECISION"] digits with -0.0
normalised, so that the same config and flags always give byte-identical JSON.
"""
import json
import logging
import math

from django.conf import settings
from django.core.exceptions import ValidationError

from .blocks import block_condition, block_dim_direct, block_dim_glued, builtin_modular_data, verlinde_dim
from .exceptions import CapacityError, UnsupportedError, error_message
from .lattice_data import discriminant_form, discriminant_group, xi_class
from .mcg_torus import anomaly, check_relations, connectedness_verdict, st_matrices
from .pointed_gv import check_axioms, mueger_center, verdicts
from .surfaces import enumerate_decompositions, make_surface
from .utils import format_element, format_rational, label_indices

logger = logging.getLogger(__name__)

# value tables are listed only for small groups
VALUE_TABLE_LIMIT = 64


def number(value):
    digits = settings.CONFORMAL["JSON_PRECISION"]
    rounded = round(float(value), digits)
    return 0.0 if rounded == 0 else rounded


def pair(z):
    z = complex(z)
    return [number(z.real), number(z.imag)]


def matrix(M):
    return [[pair(entry) for entry in row] for row in M]


def element(x):
    return list(x)


def subgroup(sub):
    return {"order": sub.order, "invariant_factors": list(sub.invariant_factors)}


def dumps(payload):
    return json.dumps(payload, sort_keys=True, indent=2)


def central_charge(lam, tol):
    c = (8 / (2 * math.pi) * math.atan2(complex(lam).imag, complex(lam).real)) % 8
    nearest = round(c)
    return float(nearest % 8) if abs(c - nearest) < tol else c


def relations(report):
    return {
        "lambda": pair(report.lam),
        "residuals": {
            "st": number(report.st_residual),
            "s2": number(report.s2_residual),
            "unitarity": number(report.unitarity_residual),
        },
        "passed": report.passed,
    }


# inspect

def inspect_report(config, tol):
    if config.is_builtin:
        md = builtin_modular_data(config.builtin, tol=tol)
        report = check_relations(md, tol)
        return {
            "variant": "builtin",
            "builtin": md.name,
            "labels": list(md.labels),
            "relations": relations(report),
            "central_charge": number(central_charge(report.lam, tol)),
        }

    category = config.category
    group = category.group
    payload = {
        "variant": config.variant,
        "group": {"invariant_factors": list(group.invariant_factors), "order": group.order},
        "h0": element(category.h0),
        "g0": element(category.g0),
    }
    if group.order <= VALUE_TABLE_LIMIT:
        payload["values"] = [
            {
                "element": format_element(x),
                "q": format_rational(category.qform(x)),
                "theta": format_rational(category.twist(x)),
                "dual": format_element(category.dual(x)),
            }
            for x in group.elements()
        ]

    try:
        axioms = check_axioms(category)
        payload["axioms"] = {
            check.name: {"passed": check.passed, "witness": _witness(check.witness)}
            for check in axioms.checks
        }
        payload["axioms_passed"] = axioms.passed
    except CapacityError as exc:
        payload["axioms"] = None
        payload["axioms_note"] = str(exc)

    center, balanced = mueger_center(category)
    payload["mueger"] = {"center": subgroup(center), "balanced": subgroup(balanced)}
    payload["verdicts"] = verdicts(category).as_dict()
    payload["connected_justification"] = connectedness_verdict(category)[1]

    try:
        result = anomaly(category, tol=tol)
        payload["anomaly"] = {
            "gauss_sum": pair(result.gamma),
            "central_charge": number(result.central_charge),
        }
    except UnsupportedError as exc:
        payload["anomaly"] = None
        payload["anomaly_note"] = str(exc)
    return payload


def _witness(witness):
    if witness is None:
        return None
    return [format_element(x) for x in witness]


# blocks

def blocks_report(config, genus, labels, *, glued=False, tol=None):
    if config.is_builtin:
        md = builtin_modular_data(config.builtin, tol=tol)
        result = verlinde_dim(md, genus, label_indices(md, labels), tol=tol)
        return {
            "genus": genus,
            "labels": [list(label) for label in labels],
            "dim": result.nearest,
            "method": "verlinde",
            "value": pair(result.value),
            "residual": number(result.residual),
            "condition_met": result.nearest > 0,
        }

    category = config.category
    surface = make_surface(genus, labels, category.group)
    dim = block_dim_direct(category, surface)
    payload = {
        "genus": genus,
        "labels": [list(label) for label in surface.boundary_labels],
        "dim": dim,
        "method": "direct",
        "condition_met": block_condition(category, surface),
    }
    if glued:
        payload["glued"] = []
        try:
            decompositions = enumerate_decompositions(surface, cap=config.enumeration_cap)
        except ValidationError as exc:
            if exc.code != "surfaces.complexity_out_of_range":
                raise
            payload["glued_note"] = error_message(exc)
            logger.info("no pants decompositions to glue along: %s", payload["glued_note"])
            return payload
        for index, pd in enumerate(decompositions):
            value = block_dim_glued(category, pd, surface.boundary_labels)
            if value != dim:
                logger.warning("decomposition %s glues to %s, the direct formula gives %s", index, value, dim)
            payload["glued"].append({"decomposition_id": index, "dim": value, "method": "glued"})
    return payload


# torus_rep

def torus_report(config, tol):
    if config.is_builtin:
        md = builtin_modular_data(config.builtin, tol=tol)
        labels = list(md.labels)
    else:
        md = st_matrices(config.category, tol=tol)
        labels = [format_element(x) for x in md.labels]
    report = check_relations(md, tol)
    payload = {
        "labels": labels,
        "S": matrix(md.S),
        "T": matrix(md.T),
        "central_charge": number(central_charge(report.lam, tol)),
        **relations(report),
    }
    if not config.is_builtin:
        result = anomaly(config.category, tol=tol)
        payload["gauss_sum"] = pair(result.gamma)
        payload["central_charge"] = number(result.central_charge)
    return payload


# lattice

def lattice_report(config):
    lattice = config.lattice
    group, lifts = discriminant_group(lattice)
    qform = discriminant_form(lattice)
    h0 = xi_class(lattice)
    category = config.category
    return {
        "gram": [list(row) for row in lattice.gram],
        "determinant": lattice.determinant,
        "xi": [format_rational(x) for x in lattice.xi],
        "discriminant": {
            "invariant_factors": list(group.invariant_factors),
            "order": group.order,
            "lifts": [[format_rational(c) for c in lift] for lift in lifts],
            "qform_matrix": [[format_rational(c) for c in row] for row in qform.matrix],
        },
        "h0": element(h0),
        "g0": element(category.g0),
        "rigid_duality": category.g0 == group.zero,
    }


# verlinde

def verlinde_report(config, max_genus, tol):
    note = None
    if config.is_builtin:
        md = builtin_modular_data(config.builtin, tol=tol)
    else:
        try:
            md = st_matrices(config.category, tol=tol)
        except UnsupportedError as exc:
            md, note = None, str(exc)
    rows = []
    for g in range(1, max_genus + 1):
        row = {"genus": g, "verlinde": None, "residual": None, "direct": None}
        if md is not None:
            result = verlinde_dim(md, g, tol=tol)
            row["verlinde"] = result.nearest
            row["residual"] = number(result.residual)
        if not config.is_builtin:
            row["direct"] = block_dim_direct(config.category, make_surface(g))
        rows.append(row)
    return {"rows": rows, "note": note}
