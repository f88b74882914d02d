"""JSON shapes for verdicts, campaign records and example instances."""

from __future__ import annotations

from typing import Any

from addcomb.group import GroupSpec
from addcomb.theorems import TheoremVerdict


def group_dict(G: GroupSpec) -> dict[str, list[int]]:
    return {"orders": list(G.orders)}


def verdict_dict(v: TheoremVerdict) -> dict[str, Any]:
    w = v.witness
    witness = None
    if w is not None:
        witness = {
            "A_prime": list(w.A_prime.elements),
            "B_prime": list(w.B_prime.elements),
            "l": w.l,
            "H": list(w.H.elements),
            "rho": w.rho,
        }
    return {
        "theorem": v.theorem,
        "holds": bool(v.holds),
        "branch": v.branch.value,
        "lhs": int(v.lhs),
        "rhs": int(v.rhs),
        "witness": witness,
        "elapsed_ns": int(v.elapsed_ns),
    }


def record_dict(record) -> dict[str, Any]:
    return {
        "group": {"orders": list(record.group)},
        "A": list(record.A),
        "B": list(record.B),
        "t": record.t,
        "verdicts": {k: verdict_dict(v) for k, v in record.verdicts.items()},
        "tightness_gap": record.tightness_gap,
        "elapsed_ns": record.elapsed_ns,
    }


def example_dict(inst) -> dict[str, Any]:
    from addcomb.sums import pollard_sum

    sigma = pollard_sum(inst.A, inst.B, inst.t)
    return {
        "family": inst.family,
        "group": group_dict(inst.G),
        "A": list(inst.A.elements),
        "B": list(inst.B.elements),
        "subgroup": list(inst.H_or_L.elements),
        "t": inst.t,
        "x": inst.x,
        "s": inst.s,
        "r": inst.r,
        "pollard_sum": sigma,
        "defect": inst.defect(),
        "predicted_defect": inst.predicted_defect,
        "holds": inst.defect() == inst.predicted_defect,
    }
