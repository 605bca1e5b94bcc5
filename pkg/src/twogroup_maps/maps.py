"""Euler characteristics of the five arc-transitive map types.

``chi`` evaluates the closed formula from subgroup orders (computed by the
Schreier route of the engine).  ``realize`` counts vertices, edges and faces
as cosets of subgroups closed by breadth-first search, and checks that the
two routes agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .catalog import Element, FamilyDescriptor, GroupInstance
from .engine import (
    EXHAUSTIVE_MAX_ELL,
    closure_indices,
    conjugate,
    dense,
    element_order,
    normal_core,
    subgroup_order,
)
from .errors import GroupError, KindMismatchError
from .triples import GenTuple, Kind, enumerate_tuples, orbit_partition


class MapType(str, Enum):
    TYPE1 = "Type1"
    TYPE2_STAR = "Type2Star"
    TYPE2_P = "Type2P"
    TYPE2_STAR_EX = "Type2StarEx"
    TYPE2_P_EX = "Type2PEx"

    @property
    def kind(self) -> Kind:
        if self is MapType.TYPE1:
            return Kind.REGULAR
        if self in (MapType.TYPE2_STAR, MapType.TYPE2_P):
            return Kind.REVERSING
        return Kind.ROTARY_PAIR

    @property
    def symbol(self) -> str:
        return {"Type1": "1", "Type2Star": "2*", "Type2P": "2^P", "Type2StarEx": "2*ex", "Type2PEx": "2^P ex"}[
            self.value
        ]

    @classmethod
    def parse(cls, text: str) -> "MapType":
        for m in cls:
            if text.lower() in (m.value.lower(), m.name.lower(), m.symbol.lower()):
                return m
        raise ValueError(f"unknown map type {text!r}; choose from {[m.value for m in cls]}")

    @classmethod
    def for_kind(cls, kind: Kind) -> tuple["MapType", ...]:
        return tuple(m for m in cls if m.kind is kind)


@dataclass(frozen=True)
class MapRecord:
    map_type: MapType
    group: FamilyDescriptor
    tuple: GenTuple
    stab_orders: dict[str, int]
    chi: int
    vef: tuple[int, int, int]
    passes_filter: bool
    edge_core_order: int | None = None

    def __post_init__(self) -> None:
        v, e, f = self.vef
        if v - e + f != self.chi:
            raise GroupError(f"V - E + F = {v - e + f} but chi = {self.chi}")


def passes_filter(chi: int) -> bool:
    """True when 4 does not divide ``chi`` (negative values included)."""
    return chi % 4 != 0


def _check_kind(t: GenTuple, mt: MapType) -> None:
    if t.kind is not mt.kind:
        raise KindMismatchError(f"{mt.value} maps need a {mt.kind.value} tuple, got {t.kind.value}")


def _subgroups(g: GroupInstance, t: GenTuple, mt: MapType) -> dict[str, list[Element]]:
    """Generators of each subgroup whose index enters the formula for ``mt``."""
    if mt in (MapType.TYPE2_STAR_EX, MapType.TYPE2_P_EX):
        alpha, z = t.parts
        if mt is MapType.TYPE2_STAR_EX:
            return {"<alpha>": [alpha], "<z,z^alpha>": [z, conjugate(g, z, alpha)]}
        return {"<alpha>": [alpha], "<alpha*z>": [g.mul(alpha, z)]}
    x, y, z = t.parts
    if mt is MapType.TYPE1:
        return {"<x,y>": [x, y], "<x,z>": [x, z], "<y,z>": [y, z]}
    if mt is MapType.TYPE2_STAR:
        return {"<x,y>": [x, y], "<x,z>": [x, z], "<y,z>": [y, z]}
    return {"<x,y>": [x, y], "<x,y^z>": [x, conjugate(g, y, z)]}


def _vef(order: int, mt: MapType, idx: Callable[[str], int]) -> tuple[int, int, int]:
    G = order
    if mt is MapType.TYPE1:
        return G // idx("<x,y>"), G // idx("<x,z>"), G // idx("<y,z>")
    if mt is MapType.TYPE2_STAR:
        return G // idx("<x,y>"), G // 2, G // idx("<x,z>") + G // idx("<y,z>")
    if mt is MapType.TYPE2_P:
        return G // idx("<x,y>"), G // 2, G // idx("<x,y^z>")
    if mt is MapType.TYPE2_STAR_EX:
        return G // idx("<alpha>"), G // 2, G // idx("<z,z^alpha>")
    return G // idx("<alpha>"), G // 2, G // idx("<alpha*z>")


def chi(g: GroupInstance, t: GenTuple, mt: MapType) -> int:
    """Euler characteristic from the closed formula for ``mt``."""
    _check_kind(t, mt)
    G = g.order
    subs = _subgroups(g, t, mt)
    orders = {k: subgroup_order(g, v) for k, v in subs.items()}
    if mt is MapType.TYPE1:
        return G // orders["<x,y>"] - G // 4 + G // orders["<y,z>"]
    if mt is MapType.TYPE2_STAR:
        return G // orders["<x,y>"] - G // 2 + G // orders["<x,z>"] + G // orders["<y,z>"]
    if mt is MapType.TYPE2_P:
        return G // orders["<x,y>"] - G // 2 + G // orders["<x,y^z>"]
    if mt is MapType.TYPE2_STAR_EX:
        return G // element_order(g, t.parts[0]) - G // 2 + G // orders["<z,z^alpha>"]
    return G // element_order(g, t.parts[0]) - G // 2 + G // element_order(g, subs["<alpha*z>"][0])


def realize(g: GroupInstance, t: GenTuple, mt: MapType) -> MapRecord:
    """Vertex, edge and face counts as coset counts, checked against ``chi``."""
    _check_kind(t, mt)
    subs = _subgroups(g, t, mt)
    core = None
    if g.ell <= EXHAUSTIVE_MAX_ELL:
        tables = dense(g)
        members = {k: closure_indices(tables, [g.index(u) for u in v]) for k, v in subs.items()}
        orders = {k: len(m) for k, m in members.items()}
        if mt is MapType.TYPE1:
            core = len(normal_core(g, members["<x,z>"]))
    else:
        orders = {k: subgroup_order(g, v) for k, v in subs.items()}
    vef = _vef(g.order, mt, orders.__getitem__)
    value = chi(g, t, mt)
    return MapRecord(mt, g.descriptor, t, orders, value, vef, passes_filter(value), core)


def classify(g: GroupInstance) -> list[MapRecord]:
    """One record per orbit representative and admissible map type."""
    out: list[MapRecord] = []
    for kind in Kind:
        partition = orbit_partition(g, enumerate_tuples(g, kind))
        for orbit in partition.classes:
            for mt in MapType.for_kind(kind):
                out.append(realize(g, orbit.representative, mt))
    return out


# -- the shape of chi -----------------------------------------------------


@dataclass(frozen=True)
class ChiForm:
    form: str
    ell: int | None = None
    s: int | None = None

    def __str__(self) -> str:
        if self.form == "2-2^l":
            return f"2-2^{self.ell}"
        if self.form == "2-2^l+2^s":
            return f"2-2^{self.ell}+2^{self.s}"
        return self.form


def _power_of_two(m: int) -> int | None:
    if m > 0 and m & (m - 1) == 0:
        return m.bit_length() - 1
    return None


def chi_form(value: int) -> ChiForm:
    """Classify ``value`` as 1, 2, 2-2^l (l >= 2) or 2-2^l+2^s (l > s >= 2)."""
    if value == 1:
        return ChiForm("1")
    if value == 2:
        return ChiForm("2")
    m = 2 - value
    if m <= 0:
        return ChiForm("other")
    ell = _power_of_two(m)
    if ell is not None:
        return ChiForm("2-2^l", ell) if ell >= 2 else ChiForm("other")
    # m = 2^s * (2^(l-s) - 1)
    s = (m & -m).bit_length() - 1
    top = _power_of_two((m >> s) + 1)
    if s >= 2 and top is not None:
        return ChiForm("2-2^l+2^s", s + top, s)
    return ChiForm("other")


def record_row(g: GroupInstance, r: MapRecord) -> dict:
    """Flat, serializable view of a record."""
    v, e, f = r.vef
    return {
        "family": r.group.family.value,
        "ell": r.group.ell,
        "group": g.label,
        "map_type": r.map_type.value,
        "tuple": list(r.tuple.words(g)),
        "chi": r.chi,
        "V": v,
        "E": e,
        "F": f,
        "passes_filter": r.passes_filter,
        "chi_form": str(chi_form(r.chi)),
    }


def orbit_sample(partition, i: int, k: int, rng: np.random.Generator) -> list[GenTuple]:
    """Up to ``k`` random members of orbit ``i``."""
    pos = np.flatnonzero(partition.labels == i)
    pick = rng.choice(pos, size=min(k, len(pos)), replace=False)
    return [partition.space[int(p)] for p in np.sort(pick)]
