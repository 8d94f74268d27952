"""Analysis pipeline for a finite semigroup and deterministic JSON rendering."""
from __future__ import annotations

import json
from typing import Dict, List, Optional

from qsglab.core import (
    FiniteSemigroup,
    FunctionAlgebra,
    build_delta_from_w,
    coassoc_check,
    counit_projections,
    counit_solve,
    delta_map,
    gns_construct,
    haar_solve,
    isometry_oracle,
    kac_takesaki,
    multiplicative_isometry,
    pentagon_check,
    quantum_group_density_check,
    star_hom_check,
    verify_gns,
)
from qsglab.core.semigroup import ValidationReport
from qsglab.linalg import LinearMap, Scalar, flip, is_isometry, is_unitary


def jsonable(obj):
    if isinstance(obj, Scalar):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def structure_section(rep: ValidationReport) -> dict:
    out = {
        "associative": rep.associative,
        "identity": rep.identity,
        "zero": rep.zero,
        "right_translations_bijective": rep.right_translations_bijective,
    }
    if not rep.associative:
        out["violation"] = list(rep.violation)
    return out


def _roundtrip(w: LinearMap, which: str, delta: LinearMap) -> dict:
    built = build_delta_from_w(w, which)
    return {
        "coassociative": built.coassociative,
        "unital_star_hom": built.unital_star_hom,
        "reproduces_delta": built.delta == delta,
    }


def analyze(s: FiniteSemigroup) -> dict:
    """Run every construction on ``C(S)`` and collect the evaluated identities.

    ``report["required_failures"]`` lists identities that must hold for any
    finite semigroup; a non-empty list indicates an implementation fault.
    """
    n = s.order
    algebra = FunctionAlgebra.of(s)
    delta = delta_map(s)
    required: Dict[str, bool] = {}
    report: dict = {"order": n, "structure": structure_section(s.report)}
    if s.names is not None:
        report["names"] = list(s.names)

    coassoc = coassoc_check(delta, n)
    hom = star_hom_check(delta, algebra, algebra.tensor_square())[0]
    report["comultiplication"] = {"coassociative": coassoc, "unital_star_hom": hom}
    required["coassociative"] = coassoc
    required["comultiplication_star_hom"] = hom

    left, right = quantum_group_density_check(algebra, delta)
    report["density"] = {"left": left, "right": right}

    haar = haar_solve(algebra, delta)
    report["haar"] = {
        "solutions": [list(h.values) for h in haar.states],
        "unique": haar.unique,
        "invariant_dimension": haar.invariant_dimension,
    }

    eps = counit_solve(algebra, delta)
    report["counit"] = None if eps is None else eps.values.index(Scalar(1))

    gns_reports: List[dict] = []
    iso_reports: List[dict] = []
    for i, h in enumerate(haar.states):
        gns = gns_construct(algebra, h)
        checks = verify_gns(algebra, h, gns)
        gns_reports.append({"quotient_dimension": gns.quotient_dim, "basis": list(gns.pivots), "checks": checks})
        iso = multiplicative_isometry(algebra, delta, h, gns)
        oracle = isometry_oracle(algebra, delta, h, gns) == iso.u
        iso_reports.append(
            {
                "is_isometry": iso.is_isometry,
                "is_unitary": iso.is_unitary,
                "pentagon": iso.pentagon,
                "conjugation_identity": iso.conjugation_identity,
                "reverse_conjugation": iso.reverse_conjugation,
                "oracle_agrees": oracle,
            }
        )
        for k, v in checks.items():
            required[f"gns[{i}].{k}"] = v
        for k in ("is_isometry", "pentagon", "conjugation_identity", "oracle_agrees"):
            required[f"isometry[{i}].{k}"] = iso_reports[-1][k]
    report["gns"] = gns_reports
    report["isometry"] = iso_reports

    u = kac_takesaki(s)
    kt = {"pentagon": pentagon_check(u), "unitary": is_unitary(u), "isometry": is_isometry(u)}
    report["kac_takesaki"] = kt
    required["kac_takesaki.pentagon"] = kt["pentagon"]
    required["kac_takesaki.unitary_iff_bijective"] = kt["unitary"] == s.report.right_translations_bijective

    roundtrips = {"kac_takesaki_lift": _roundtrip(u, "left", delta)}
    if eps is not None:
        suite = counit_projections(algebra, delta, eps)
        report["w_operators"] = {"identities": suite.checklist, "details": suite.details}
        for k, v in suite.details.items():
            if k != "pentagon_wr":
                required[f"w_operators.{k}"] = v
        sigma = flip((n, n))
        roundtrips["counit_left"] = _roundtrip(suite.w_l, "left", delta)
        roundtrips["counit_right_flipped"] = _roundtrip(sigma @ suite.w_r @ sigma, "right", delta)
    else:
        report["w_operators"] = None
    report["delta_from_w"] = roundtrips
    for name, rt in roundtrips.items():
        for k, v in rt.items():
            required[f"delta_from_w.{name}.{k}"] = v

    report["required_failures"] = sorted(k for k, v in required.items() if not v)
    return report


def not_associative_report(rep: ValidationReport, names: Optional[list] = None) -> dict:
    out = {"order": rep.order, "structure": structure_section(rep)}
    if names is not None:
        out["names"] = names
    return out
