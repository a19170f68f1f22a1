"""Machine-readable reports backing both the CLI and the HTTP service.

Every handler returns a plain dict with insertion-ordered keys and
deterministic content, so serialized reports are byte-identical across
runs and across degrees of parallelism.  Timings are opt-in for the same
reason.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any

from .bisets import faithful_part
from .corpus import CorpusSpec, resolve_group, spec_label
from .genetics import genetic_basis, rational_irrep_count
from .groups import Group, center, classify_type
from .lattice import lattice_of
from .ring import primitive_idempotent, table_of_marks
from .units import (
    enumerate_units_bruteforce,
    exp_image,
    units_via_genetic_basis,
    verify_rank_theorem,
)


def describe_report(group: Group) -> dict[str, Any]:
    lat = lattice_of(group)
    return {
        "name": group.name,
        "order": group.order,
        "type": classify_type(group).label,
        "abelian": group.is_abelian(),
        "cyclic": group.is_cyclic(),
        "center_order": center(group).order,
        "subgroups": len(lat.subgroups),
        "classes": lat.num_classes,
    }


def lattice_report(group: Group) -> dict[str, Any]:
    lat = lattice_of(group)
    subgroups = [
        {
            "index": i,
            "mask": s.mask,
            "order": s.order,
            "class_index": lat.class_of[i],
            "normal": lat.normal[i],
        }
        for i, s in enumerate(lat.subgroups)
    ]
    mobius = []
    for i, k in enumerate(lat.subgroups):
        for j, h in enumerate(lat.subgroups):
            if k.mask & ~h.mask == 0:
                mobius.append([i, j, lat.mobius(k, h)])
    return {
        "name": group.name,
        "order": group.order,
        "subgroups": subgroups,
        "class_representatives": list(lat.class_reps),
        "mobius": mobius,
    }


def marks_report(group: Group, include_idempotents: bool = False) -> dict[str, Any]:
    lat = lattice_of(group)
    tab = table_of_marks(lat)
    report: dict[str, Any] = {
        "name": group.name,
        "classes": [
            {"index": ci, "mask": lat.rep(ci).mask, "order": lat.rep(ci).order}
            for ci in range(lat.num_classes)
        ],
        "matrix": [list(row) for row in tab.matrix],
    }
    if include_idempotents:
        report["idempotents"] = [
            {
                "class_index": ci,
                "coeffs": [str(Fraction(c)) for c in
                           primitive_idempotent(lat, lat.rep(ci)).coeffs],
            }
            for ci in range(lat.num_classes)
        ]
    return report


def _sign_string(signs: int, width: int) -> str:
    return "".join("1" if (signs >> i) & 1 else "0" for i in range(width))


def units_report(group: Group, method: str = "both",
                 budget: int | None = None) -> dict[str, Any]:
    if method not in ("brute", "genetic", "both"):
        raise ValueError(f"unknown method {method!r}")
    lat = lattice_of(group)
    brute = constructed = None
    if method in ("brute", "both"):
        brute = enumerate_units_bruteforce(lat, budget=budget)
    if method in ("genetic", "both"):
        constructed = units_via_genetic_basis(group)
    shown = brute if brute is not None else constructed
    report: dict[str, Any] = {
        "name": group.name,
        "method": method,
        "rank": shown.rank,
        "order": shown.order,
        "basis": [
            {"signs": _sign_string(u.signs, lat.num_classes),
             "coeffs": list(u.element.coeffs)}
            for u in shown.basis
        ],
    }
    if method == "both":
        report["agreement"] = brute == constructed
    return report


def genetic_report(group: Group) -> dict[str, Any]:
    gb = genetic_basis(group)
    oracle = rational_irrep_count(group)
    return {
        "name": group.name,
        "count": len(gb.entries),
        "oracle_count": oracle,
        "agrees_with_oracle": len(gb.entries) == oracle,
        "entries": [
            {
                "subgroup_mask": e.subgroup.mask,
                "subgroup_order": e.subgroup.order,
                "section_order": e.section_order,
                "type": e.type_tag.label,
            }
            for e in gb.entries
        ],
        "classes": [list(cls) for cls in gb.classes],
    }


def exp_report(group: Group, budget: int | None = None) -> dict[str, Any]:
    lat = lattice_of(group)
    image = exp_image(lat)
    units = enumerate_units_bruteforce(lat, budget=budget)
    gb = genetic_basis(group)
    formula = sum(1 for e in gb.entries
                  if e.type_tag.kind == "trivial"
                  or (e.type_tag.kind == "cyclic" and e.type_tag.order == 2))
    return {
        "name": group.name,
        "image_rank": image.rank,
        "unit_rank": units.rank,
        "surjective": image == units,
        "formula_rank": formula,
        "formula_matches": image.rank == formula,
    }


def verify_group_report(spec: str | dict[str, Any], budget: int | None = None,
                        check_exp: bool = True, check_faithful: bool = True,
                        include_timings: bool = False) -> dict[str, Any]:
    """All cross-checks for one group; ``passed`` iff every check agrees."""
    started = time.monotonic()
    group = resolve_group(spec)
    lat = lattice_of(group)
    gb = genetic_basis(group)
    oracle = rational_irrep_count(group)
    rank_check = verify_rank_theorem(group, budget=budget)
    type_counts = gb.type_counts()
    checks = {
        "genetic_count_matches_oracle": len(gb.entries) == oracle,
        "ranks_equal": rank_check.ranks_equal,
        "spans_equal": (rank_check.brute_contains_genetic
                        and rank_check.genetic_contains_brute),
    }
    report: dict[str, Any] = {
        "name": group.name,
        "order": group.order,
        "subgroup_classes": lat.num_classes,
        "genetic_count": len(gb.entries),
        "oracle_count": oracle,
        "types": dict(sorted(type_counts.items())),
        "brute_rank": rank_check.brute_rank,
        "genetic_rank": rank_check.genetic_rank,
        "formula_rank": rank_check.formula_rank,
    }
    if check_faithful:
        part = faithful_part(enumerate_units_bruteforce(lat, budget=budget))
        report["faithful_order"] = part.order
    if check_exp:
        exp = exp_report(group, budget=budget)
        report["exp_image_rank"] = exp["image_rank"]
        report["exp_surjective"] = exp["surjective"]
        checks["exp_rank_matches_formula"] = exp["formula_matches"]
    report["checks"] = checks
    report["passed"] = all(checks.values())
    if include_timings:
        report["time_ms"] = round((time.monotonic() - started) * 1000.0, 3)
    return report


def _verify_entry(args: tuple[Any, int | None, bool, bool, bool]) -> dict[str, Any]:
    spec, budget, check_exp, check_faithful, include_timings = args
    try:
        return verify_group_report(spec, budget=budget, check_exp=check_exp,
                                   check_faithful=check_faithful,
                                   include_timings=include_timings)
    except Exception as exc:
        raise RuntimeError(
            f"verification aborted on group {spec_label(spec)}: {exc}") from exc


def verify_report(corpus: CorpusSpec, jobs: int = 1,
                  include_timings: bool = False) -> dict[str, Any]:
    """Run the verification corpus, optionally across processes.

    Group results always appear in corpus order, so the report content
    does not depend on the degree of parallelism.
    """
    entries = list(corpus.groups)
    tasks = [(spec, corpus.budget, corpus.check_exp, corpus.check_faithful,
              include_timings) for spec in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_verify_entry, tasks))
    else:
        groups = [_verify_entry(task) for task in tasks]
    report: dict[str, Any] = {
        "corpus": [spec_label(spec) for spec in entries],
        "budget": corpus.budget,
        "groups": groups,
        "passed": all(g["passed"] for g in groups),
    }
    return report
