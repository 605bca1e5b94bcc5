"""Published reference data, transcribed as generator words.

Everything here is data to verify against, never an input to the
computations in the other modules.  Representative sets are instantiated
at a given ``ell`` from their symbolic parameter ranges.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .catalog import Family, FamilyDescriptor

Words = tuple[str, ...]


def _a(e: int, tail: str = "") -> str:
    head = "" if e == 0 else ("a" if e == 1 else f"a^{e}")
    if head and tail:
        return f"{head}*{tail}"
    return head or tail or "1"


def _three_shapes(w: str, left: str = "b", right: str = "a*b") -> list[Words]:
    return [(left, right, w), (w, left, right), (right, w, left)]


def _rotations(t: Words) -> list[Words]:
    return [t, t[1:] + t[:1], t[2:] + t[:2]]


def _is_z2sq(d: FamilyDescriptor) -> bool:
    return d.family is Family.CYCLIC_TIMES_Z2 and d.ell == 1


# -- representative sets --------------------------------------------------


def reversing_representatives(d: FamilyDescriptor) -> list[Words]:
    d = d.normalized()
    f, ell = d.family, d.ell
    if _is_z2sq(d):
        return [("a", "a*b", "b"), ("a", "b", "b"), ("b", "a", "b"), ("b", "b", "a")]
    if f is Family.ELEMENTARY_ABELIAN_8:
        return [("a", "b", "c")]
    if f is Family.DIHEDRAL:
        ws = [_a(2 ** (ell - 1))] + [_a(2 * x, "b") for x in range(2 ** (ell - 1))]
        return [t for w in ws for t in _three_shapes(w)]
    if f is Family.QUATERNION_CENTRAL_Z4:
        if ell == 2:
            return [("a*d", "a*c*d", "c*d")]
        q = _a(2 ** (ell - 2), "d")
        return [(q, "a*c*d", "c*d"), ("c*d", q, "a*c*d"), ("a*c*d", "c*d", q)]
    if f is Family.DIHEDRAL_TIMES_Z2:
        ws = ["c"] + [_a(2 * x, "b*c") for x in range(2 ** (ell - 2))]
        return [t for w in ws for t in _three_shapes(w)]
    if f is Family.DIHEDRAL_SEMI_Z2:
        xs = [
            ("b", "a*b", "c"), ("a*b", "b", "c"), ("c", "b", "a*b"),
            ("c", "a*b", "b"), ("a*b", "c", "b"), ("b", "c", "a*b"),
        ]
        ys = [t for x in range(2 ** (ell - 2)) for t in _three_shapes(_a(2 * x, "b*c"))]
        return xs + ys
    return []


def regular_representatives(d: FamilyDescriptor) -> list[Words]:
    d = d.normalized()
    f, ell = d.family, d.ell
    if _is_z2sq(d):
        return [("a", "a*b", "b"), ("a", "b", "b"), ("b", "b", "a")]
    if f is Family.ELEMENTARY_ABELIAN_8:
        return [("a", "b", "c")]
    if f is Family.DIHEDRAL:
        a0 = _a(2 ** (ell - 1))
        return [("b", "a*b", a0), ("b", "a*b", f"{a0}*b"), (a0, "b", "a*b")]
    if f is Family.DIHEDRAL_TIMES_Z2:
        return [("b", "a*b", "c"), ("b", "a*b", "b*c"), ("c", "b", "a*b")]
    if f is Family.DIHEDRAL_SEMI_Z2:
        return [("b", "a*b", "c"), ("c", "a*b", "b"), ("b", "a*b", "b*c")]
    return []


def rotary_representatives(d: FamilyDescriptor) -> list[Words]:
    d = d.normalized()
    f, ell = d.family, d.ell
    if f is Family.CYCLIC:
        return [("a", _a(2 ** (ell - 1)))]
    if f in (Family.CYCLIC_TIMES_Z2, Family.MODULAR):
        return [("a", "b")]
    if f in (Family.DIHEDRAL, Family.SEMIDIHEDRAL):
        return [("a", "b"), ("a*b", "b")]
    return []


# -- feature flags and structure labels -----------------------------------


@dataclass(frozen=True)
class FeatureFlags:
    has_reversing: bool
    has_regular: bool
    has_rotary: bool

    def as_marks(self) -> str:
        return " ".join("yes" if v else "no" for v in (self.has_reversing, self.has_regular, self.has_rotary))


_FLAGS = {
    Family.CYCLIC: FeatureFlags(False, False, True),
    Family.CYCLIC_TIMES_Z2: FeatureFlags(False, False, True),
    Family.DIHEDRAL: FeatureFlags(True, True, True),
    Family.SEMIDIHEDRAL: FeatureFlags(False, False, True),
    Family.MODULAR: FeatureFlags(False, False, True),
    Family.QUATERNION: FeatureFlags(False, False, False),
    Family.QUATERNION_CENTRAL_Z4: FeatureFlags(True, False, False),
    Family.DIHEDRAL_TIMES_Z2: FeatureFlags(True, True, False),
    Family.DIHEDRAL_SEMI_Z2: FeatureFlags(True, True, False),
    Family.ELEMENTARY_ABELIAN_8: FeatureFlags(True, True, False),
}


def expected_flags(d: FamilyDescriptor) -> FeatureFlags:
    d = d.normalized()
    if _is_z2sq(d):
        return FeatureFlags(True, True, True)
    return _FLAGS[d.family]


# Printed Aut(G) structure names.  Z2^3 is printed as GL2(3) but the
# automorphism group has order 168; the corrected label is kept here.
AUT_STRUCTURE = {
    Family.CYCLIC: "Z_{2^(l-2)} x Z2",
    Family.CYCLIC_TIMES_Z2: "(Z_{2^(l-2)} o D8) x Z2",
    Family.DIHEDRAL: "Hol(Z_{2^l})",
    Family.SEMIDIHEDRAL: "Z_{2^(l-1)}:Aut(Z_{2^l})",
    Family.MODULAR: "(Z_{2^(l-2)} o D8) x Z2",
    Family.QUATERNION: "Hol(Z_{2^l})",
    Family.QUATERNION_CENTRAL_Z4: "Aut(Q_{2^(l+1)}) x Z2",
    Family.DIHEDRAL_TIMES_Z2: "H.(D8 x Z2), H = Z_{2^(l-1)}:Aut(Z_{2^l})",
    Family.DIHEDRAL_SEMI_Z2: "(Aut(SD_{2^(l+1)}) x Z2):Z2",
}
DEGENERATE_AUT_STRUCTURE = {"Z2^2": "S3", "Q8": "S4", "Z2^3": "GL3(2)", "Q8oZ4": "S4 x Z2"}


def aut_structure(d: FamilyDescriptor) -> str:
    d = d.normalized()
    if d.is_degenerate:
        return DEGENERATE_AUT_STRUCTURE[d.label]
    if d.family is Family.CYCLIC_TIMES_Z2 and d.ell == 2:
        return "D8"
    return AUT_STRUCTURE[d.family]


# -- surviving map rows ---------------------------------------------------


@dataclass(frozen=True)
class MapRow:
    """One surviving table row: a representative, a map type tag and chi."""

    map_type: str
    words: Words
    chi: int


def _cyclic_order(k: int, ell: int) -> int:
    n = 2**ell
    return n // gcd(k % n, n) if k % n else 1


def _dihedral_rotated_chi(x: int, ell: int) -> int:
    # first and third terms are 2^(l+1) / |<a^(2x)b, b>| and 2^(l+1) / |<a^(2x)b, a^2 b>|
    n = 2**ell
    return 2 * n // (2 * _cyclic_order(2 * x, ell)) - n + 2 * n // (2 * _cyclic_order(2 * x - 2, ell))


def _passes(chi: int) -> bool:
    return chi % 4 != 0


def vertex_reversing_rows(d: FamilyDescriptor) -> list[MapRow]:
    d = d.normalized()
    f, ell = d.family, d.ell
    rows: list[MapRow] = []
    if _is_z2sq(d):
        rows.append(MapRow("Type2Star", ("a", "a*b", "b"), 1))
        rows += [MapRow("Type2Star", t, 2) for t in _rotations(("a", "b", "b"))]
        rows.append(MapRow("Type2P", ("a", "a", "b"), 2))
    elif f is Family.ELEMENTARY_ABELIAN_8:
        rows.append(MapRow("Type2Star", ("a", "b", "c"), 2))
    elif f is Family.DIHEDRAL:
        n = 2**ell
        a0 = _a(n // 2)
        rows += [MapRow("Type2Star", t, 1) for t in _rotations(("b", "a*b", a0))]
        for x in range(n // 2):
            w = _a(2 * x, "b")
            # 2^s = gcd(2x, 2^l); odd x gives s = 1 and a chi divisible by 4
            chi = 2 - n + gcd(2 * x, n)
            rows += [MapRow("Type2Star", t, chi) for t in _rotations(("b", "a*b", w))]
            rows.append(MapRow("Type2P", ("b", "a*b", w), 2 - n))
            rows.append(MapRow("Type2P", ("a*b", w, "b"), 2 - n))
            rows.append(MapRow("Type2P", (w, "b", "a*b"), _dihedral_rotated_chi(x, ell)))
        rows.append(MapRow("Type2P", ("b", "a*b", a0), 2 - n))
    elif f is Family.QUATERNION_CENTRAL_Z4:
        if ell == 2:
            rows.append(MapRow("Type2Star", ("a*d", "a*c*d", "c*d"), -2))
        else:
            q = _a(2 ** (ell - 2), "d")
            rows += [MapRow("Type2Star", t, 2 - 2**ell) for t in _rotations((q, "c*d", "a*c*d"))]
    elif f is Family.DIHEDRAL_TIMES_Z2:
        rows += [MapRow("Type2Star", t, 2) for t in _rotations(("b", "a*b", "c"))]
    elif f is Family.DIHEDRAL_SEMI_Z2:
        for base in (("b", "a*b", "c"), ("a*b", "b", "c")):
            rows += [MapRow("Type2Star", t, 2 - 2 ** (ell - 1)) for t in _rotations(base)]
    return [r for r in rows if _passes(r.chi)]


def regular_rows(d: FamilyDescriptor) -> list[MapRow]:
    d = d.normalized()
    f, ell = d.family, d.ell
    rows: list[MapRow] = []
    if _is_z2sq(d):
        rows = [
            MapRow("Type1", ("a", "a*b", "b"), 1),
            MapRow("Type1", ("a", "b", "b"), 2),
            MapRow("Type1", ("b", "b", "a"), 2),
        ]
    elif f is Family.DIHEDRAL:
        a0 = _a(2 ** (ell - 1))
        rows = [
            MapRow("Type1", ("b", "a*b", a0), 1),
            MapRow("Type1", (a0, "b", "a*b"), 1),
            MapRow("Type1", ("b", "a*b", f"{a0}*b"), 2 - 2 ** (ell - 1)),
        ]
    elif f is Family.ELEMENTARY_ABELIAN_8:
        rows = [MapRow("Type1", ("a", "b", "c"), 2)]
    elif f is Family.DIHEDRAL_TIMES_Z2:
        rows = [MapRow("Type1", ("b", "a*b", "c"), 2), MapRow("Type1", ("c", "b", "a*b"), 2)]
    elif f is Family.DIHEDRAL_SEMI_Z2:
        chi = 2 - 2 ** (ell - 1)
        rows = [MapRow("Type1", ("b", "a*b", "c"), chi), MapRow("Type1", ("c", "a*b", "b"), chi)]
    return [r for r in rows if _passes(r.chi)]


def vertex_rotary_rows(d: FamilyDescriptor) -> list[MapRow]:
    d = d.normalized()
    f, ell = d.family, d.ell
    half = 2 - 2 ** ((ell or 1) - 1)
    rows: list[MapRow] = []
    if f is Family.CYCLIC:
        pair = ("a", _a(2 ** (ell - 1)))
        rows = [MapRow("Type2StarEx", pair, 1), MapRow("Type2PEx", pair, half)]
    elif f is Family.CYCLIC_TIMES_Z2:
        rows = [MapRow("Type2StarEx", ("a", "b"), 2)]
        if ell == 1:
            rows.append(MapRow("Type2PEx", ("a", "b"), 2))
    elif f is Family.MODULAR:
        rows = [MapRow("Type2StarEx", ("a", "b"), half)]
    elif f is Family.DIHEDRAL:
        rows = [
            MapRow("Type2PEx", ("a", "b"), 2),
            MapRow("Type2StarEx", ("a*b", "b"), 2),
            MapRow("Type2PEx", ("a*b", "b"), 2),
        ]
    elif f is Family.SEMIDIHEDRAL:
        rows = [
            MapRow("Type2PEx", ("a", "b"), half),
            MapRow("Type2StarEx", ("a*b", "b"), half),
            MapRow("Type2PEx", ("a*b", "b"), half),
        ]
    return [r for r in rows if _passes(r.chi)]


def expected_rows(d: FamilyDescriptor) -> list[MapRow]:
    return vertex_reversing_rows(d) + regular_rows(d) + vertex_rotary_rows(d)


# -- square divisors of 2^d - 1 -------------------------------------------

# (d, x): x^2 divides 2^(n*d) - 1 for every n >= 1
SQUARE_WITNESS_TABLE = ((6, 3), (20, 5), (21, 7), (110, 11), (136, 17))
