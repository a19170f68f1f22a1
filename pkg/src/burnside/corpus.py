"""Group descriptors, ingestion formats, and the default corpus."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

from .groups import (
    Group,
    GroupError,
    build_family,
    direct_product,
    group_from_cayley,
    group_from_permutations,
)


class DescriptorError(ValueError):
    """Unparseable group descriptor or ingestion payload."""


DEFAULT_CORPUS: tuple[str, ...] = (
    "C2", "C4", "C8", "C16", "C2xC2", "C2xC4", "C2xC2xC2",
    "D8", "D16", "D32", "Q8", "Q16", "SD16", "SD32",
    "C3", "C9", "C27", "C3xC3",
)

_COMPACT = re.compile(r"^(SD|C|D|Q|E)(\d+)$", re.IGNORECASE)
_FAMILY = re.compile(r"^([a-zA-Z_-]+):(\d+)$")

_COMPACT_FAMILIES = {
    "C": "cyclic",
    "D": "dihedral",
    "Q": "quaternion",
    "SD": "semidihedral",
    "E": "elementary_abelian",
}

_FAMILY_NAMES = {
    "cyclic": "cyclic",
    "dihedral": "dihedral",
    "quaternion": "quaternion",
    "semidihedral": "semidihedral",
    "elementary_abelian": "elementary_abelian",
    "elementary-abelian": "elementary_abelian",
    "klein": None,  # spelled out below: klein is C2xC2
}


def _parse_token(token: str) -> Group:
    m = _COMPACT.match(token)
    if m:
        return build_family(_COMPACT_FAMILIES[m.group(1).upper()], int(m.group(2)))
    m = _FAMILY.match(token)
    if m:
        kind = m.group(1).lower()
        if kind == "klein":
            raise DescriptorError("spell klein as C2xC2 or elementary_abelian:4")
        family = _FAMILY_NAMES.get(kind)
        if family is None:
            raise DescriptorError(f"unknown family {m.group(1)!r}")
        return build_family(family, int(m.group(2)))
    raise DescriptorError(f"cannot parse group token {token!r}")


@lru_cache(maxsize=None)
def parse_descriptor(text: str) -> Group:
    """Group from a descriptor: compact (D16, C2xC4) or family:order form.

    Tokens joined by "x" build a direct product; groups are immutable and
    cached per descriptor.
    """
    cleaned = text.strip()
    if not cleaned:
        raise DescriptorError("empty group descriptor")
    tokens = [t for t in cleaned.split("x") if t != ""]
    if not tokens:
        raise DescriptorError(f"cannot parse group descriptor {text!r}")
    try:
        group = _parse_token(tokens[0])
        for token in tokens[1:]:
            group = direct_product(group, _parse_token(token))
    except GroupError as exc:
        raise DescriptorError(str(exc)) from exc
    group.name = cleaned
    return group


def group_from_json(payload: dict[str, Any]) -> Group:
    """Group from an ingestion object.

    Accepted shapes: {"name", "family": {"kind", "order"}},
    {"name", "order", "cayley"}, or {"name", "degree",
    "permutation_generators"}.
    """
    if not isinstance(payload, dict):
        raise DescriptorError("group payload must be an object")
    name = payload.get("name")
    if not isinstance(name, str) or not name:
        raise DescriptorError("group payload needs a non-empty name")
    try:
        if "family" in payload and payload["family"] is not None:
            fam = payload["family"]
            kind = _FAMILY_NAMES.get(str(fam.get("kind", "")).lower())
            if kind is None:
                raise DescriptorError(f"unknown family kind {fam.get('kind')!r}")
            group = build_family(kind, int(fam.get("order", 0)))
        elif payload.get("cayley") is not None:
            table = payload["cayley"]
            order = payload.get("order")
            if order is not None and int(order) != len(table):
                raise DescriptorError(
                    f"declared order {order} != table size {len(table)}")
            group = group_from_cayley(table, name=name)
        elif payload.get("permutation_generators") is not None:
            group = group_from_permutations(
                int(payload.get("degree", 0)),
                payload["permutation_generators"], name=name)
        else:
            raise DescriptorError(
                "group payload needs family, cayley, or permutation_generators")
    except GroupError as exc:
        raise DescriptorError(str(exc)) from exc
    group.name = name
    return group


def resolve_group(spec: str | dict[str, Any]) -> Group:
    if isinstance(spec, str):
        return parse_descriptor(spec)
    return group_from_json(spec)


def spec_label(spec: str | dict[str, Any]) -> str:
    if isinstance(spec, str):
        return spec
    return str(spec.get("name", "<unnamed>"))


@dataclass(frozen=True)
class CorpusSpec:
    """A verification run: group specs plus budget and check toggles."""

    groups: tuple[Any, ...] = DEFAULT_CORPUS
    budget: int | None = None
    check_exp: bool = True
    check_faithful: bool = True

    def resolved(self) -> list[Group]:
        return [resolve_group(s) for s in self.groups]


def corpus_from_payload(payload: dict[str, Any]) -> CorpusSpec:
    groups = payload.get("groups")
    if groups is None:
        groups = list(DEFAULT_CORPUS)
    if not isinstance(groups, list) or not groups:
        raise DescriptorError("corpus needs a non-empty groups list")
    checks = payload.get("checks", {})
    spec = CorpusSpec(
        groups=tuple(groups),
        budget=payload.get("budget"),
        check_exp=bool(checks.get("exp", True)),
        check_faithful=bool(checks.get("faithful", True)),
    )
    for g in spec.groups:
        resolve_group(g)  # validate every descriptor up front
    return spec


def load_corpus(path: str | Path) -> CorpusSpec:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DescriptorError(f"cannot read corpus file {path}: {exc}") from exc
    return corpus_from_payload(payload)
