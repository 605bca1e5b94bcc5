"""Verification suite behind ``twogroup-maps verify``.

Each check yields a ``CheckResult``; a failing result carries an
expected-versus-computed diff.  Checks marked as oracle checks recompute the
same quantity by an independent brute-force route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import reference
from .automorphisms import (
    BRUTE_FORCE_MAX_ORDER,
    CLOSURE_CAP,
    aut_order,
    brute_force_aut,
    explicit_aut,
)
from .catalog import Family, FamilyDescriptor, GroupInstance, build, feature_flags
from .charfree import is_squarefree, square_divisor_scan
from .errors import GroupError
from .engine import (
    EXHAUSTIVE_MAX_ELL,
    closure_indices,
    dense,
    maximal_subgroup_witness,
    parse_element,
)
from .maps import MapType, chi_form, orbit_sample, realize
from .triples import GenTuple, Kind, OrbitPartition, enumerate_tuples, match_representatives, orbit_partition


@dataclass(frozen=True)
class CheckResult:
    check: str
    group: str
    passed: bool
    detail: str = ""
    diff: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "group": self.group,
            "passed": self.passed,
            "detail": self.detail,
            "diff": list(self.diff),
        }


def _result(check: str, g: str, expected, computed, detail: str = "") -> CheckResult:
    ok = expected == computed
    diff = () if ok else (f"expected: {expected}", f"computed: {computed}")
    return CheckResult(check, g, ok, detail or f"{computed}", diff)


def groups_for(families: Iterable[Family], ells: Iterable[int]) -> list[GroupInstance]:
    """Valid, normalized catalog groups for the requested families and ranges."""
    seen: dict[FamilyDescriptor, GroupInstance] = {}
    ells = list(ells)
    for f in families:
        if f is Family.ELEMENTARY_ABELIAN_8:
            cands = [FamilyDescriptor(f)]
        else:
            cands = [FamilyDescriptor(f, ell).normalized() for ell in ells]
        for d in cands:
            try:
                d.validate()
            except ValueError:
                continue
            if d not in seen and d.family in families:
                seen[d] = build(d)
    return sorted(seen.values(), key=lambda g: (g.order, list(Family).index(g.family)))


# -- per-group checks -----------------------------------------------------


def check_group(g: GroupInstance) -> list[CheckResult]:
    out = [_result("relations", g.label, True, g.relations_hold(g.generators), "defining relations hold")]
    w = maximal_subgroup_witness(g)
    out.append(CheckResult("maximal-subgroup", g.label, 2 * w.order == g.order, f"index-2 witness of order {w.order}"))
    return out


def check_aut(g: GroupInstance, oracle: bool) -> list[CheckResult]:
    A = explicit_aut(g)
    out = [_result("aut-order", g.label, aut_order(g), A.order)]
    if A.order <= CLOSURE_CAP and g.ell <= EXHAUSTIVE_MAX_ELL:
        closed = A.materialize()
        out.append(_result("aut-closure", g.label, A.order, len(closed.elements)))
        if oracle and g.order <= BRUTE_FORCE_MAX_ORDER:
            bf = brute_force_aut(g)
            out.append(
                CheckResult(
                    "aut-oracle",
                    g.label,
                    bf.elements == closed.elements,
                    f"brute force finds {bf.order} automorphisms",
                    () if bf.elements == closed.elements else (f"expected: {bf.order}", f"computed: {len(closed.elements)}"),
                )
            )
    return out


def _orbits_by_full_group(g: GroupInstance, partition: OrbitPartition) -> set[frozenset[int]]:
    """Orbit oracle: apply every automorphism to every class representative."""
    perms = np.array([np.asarray(f.perm) for f in explicit_aut(g, materialize=True).elements])
    space = partition.space
    out = set()
    for orbit in partition.classes:
        idx = [g.index(u) for u in orbit.representative.parts]
        img = perms[:, idx[0]]
        for x in idx[1:]:
            img = img * g.order + perms[:, x]
        out.add(frozenset(np.searchsorted(space.codes, np.unique(img)).tolist()))
    return out


def check_triples(g: GroupInstance, oracle: bool) -> tuple[list[CheckResult], dict[Kind, OrbitPartition]]:
    out: list[CheckResult] = []
    parts: dict[Kind, OrbitPartition] = {}
    order = aut_order(g)
    for kind in Kind:
        p = orbit_partition(g, enumerate_tuples(g, kind))
        parts[kind] = p
        sizes = sorted({c.size for c in p.classes})
        out.append(
            CheckResult(
                f"semiregular-{kind.value}",
                g.label,
                p.is_semiregular(order),
                f"{len(p.classes)} orbits of sizes {sizes}",
                () if p.is_semiregular(order) else (f"expected: all sizes {order}", f"computed: {sizes}"),
            )
        )
        rep = match_representatives(g, kind, p)
        out.append(
            CheckResult(
                f"representatives-{kind.value}",
                g.label,
                rep.ok,
                rep.summary(),
                () if rep.ok else (f"expected: {rep.representative_count} orbits", f"computed: {rep.summary()}"),
            )
        )
        if oracle and order <= CLOSURE_CAP and p.total:
            labels = p.labels
            computed = {frozenset(np.flatnonzero(labels == i).tolist()) for i in range(len(p.classes))}
            oracle_sets = _orbits_by_full_group(g, p)
            out.append(
                CheckResult(
                    f"orbit-oracle-{kind.value}",
                    g.label,
                    computed == oracle_sets,
                    "union-find classes equal orbits of the full automorphism group",
                )
            )
    want = reference.expected_flags(g.descriptor)
    out.append(_result("feature-flags", g.label, want, feature_flags(g)))
    return out, parts


def check_maps(g: GroupInstance, parts: dict[Kind, OrbitPartition], rng: np.random.Generator) -> list[CheckResult]:
    out: list[CheckResult] = []
    got: dict[tuple[MapType, int], int] = {}
    euler_bad: list[str] = []
    form_bad: list[str] = []
    invariance_bad: list[str] = []
    count = 0
    for kind, p in parts.items():
        for i, orbit in enumerate(p.classes):
            for mt in MapType.for_kind(kind):
                count += 1
                try:
                    r = realize(g, orbit.representative, mt)
                except GroupError as exc:
                    euler_bad.append(f"{orbit.representative.show(g)} {mt.value}: {exc}")
                    continue
                if r.passes_filter:
                    got[(mt, i)] = r.chi
                    if chi_form(r.chi).form == "other":
                        form_bad.append(f"{orbit.representative.show(g)} {mt.value} chi={r.chi}")
                for t in orbit_sample(p, i, 10, rng):
                    s = realize(g, t, mt)
                    if (s.chi, s.vef) != (r.chi, r.vef):
                        invariance_bad.append(f"{t.show(g)} {mt.value}")
    expected: dict[tuple[MapType, int], int] = {}
    for row in reference.expected_rows(g.descriptor):
        mt = MapType(row.map_type)
        t = GenTuple(mt.kind, tuple(parse_element(g, w) for w in row.words))
        expected[(mt, parts[mt.kind].orbit_of(t))] = row.chi

    def show(key):
        mt, i = key
        return f"{parts[mt.kind].classes[i].representative.show(g)} {mt.symbol}"

    diff = []
    for key in sorted(set(got) | set(expected), key=lambda k: (k[0].value, k[1])):
        if got.get(key) != expected.get(key):
            diff.append(f"{show(key)}: expected {expected.get(key, 'excluded')}, computed {got.get(key, 'excluded')}")
    out.append(
        CheckResult("map-table", g.label, not diff, f"{len(got)} surviving of {count} records", tuple(diff))
    )
    out.append(CheckResult("euler", g.label, not euler_bad, f"V-E+F = chi on {count} records", tuple(euler_bad)))
    out.append(CheckResult("chi-form", g.label, not form_bad, "surviving chi values have a known form", tuple(form_bad)))
    out.append(
        CheckResult("orbit-invariance", g.label, not invariance_bad, "sampled orbit members give equal records", tuple(invariance_bad))
    )
    return out


def check_class_separation(g: GroupInstance) -> list[CheckResult]:
    """In D:Z2 no automorphism sends a^i b with i even to a^j b with j odd."""
    if g.family is not Family.DIHEDRAL_SEMI_Z2 or g.ell > 4:
        return []
    bad = []
    A = explicit_aut(g, materialize=True)
    for f in A.elements:
        for i in range(0, g.n, 2):
            u = f((i, 1, 0))
            if u[1:] == (1, 0) and u[0] % 2 == 1:
                bad.append(f"{f.images} sends a^{i}*b to a^{u[0]}*b")
    return [CheckResult("class-separation", g.label, not bad, "even and odd reflections stay apart", tuple(bad[:5]))]


# -- group-independent checks ---------------------------------------------


def check_charfree() -> list[CheckResult]:
    out = []
    for d, x in reference.SQUARE_WITNESS_TABLE:
        w = square_divisor_scan(d, 1000)
        out.append(_result("square-witness", f"d={d}", x, w.x))
    out.append(_result("squarefree", "63", False, is_squarefree(63)))
    return out


def check_orbit_counts(groups: list[GroupInstance], parts: dict[str, dict[Kind, OrbitPartition]]) -> list[CheckResult]:
    """One summary line per family, listing reversing-orbit counts by ell."""
    out = []
    by_family: dict[Family, list[GroupInstance]] = {}
    for g in groups:
        by_family.setdefault(g.family, []).append(g)
    for f, gs in by_family.items():
        bits, ok, diff = [], True, []
        for g in gs:
            n = len(parts[g.label][Kind.REVERSING].classes)
            want = len(reference.reversing_representatives(g.descriptor))
            bits.append(f"{n} (ℓ={g.ell})" if g.descriptor.ell is not None else f"{n} ({g.label})")
            if n != want:
                ok = False
                diff.append(f"{g.label}: expected {want}, computed {n}")
        out.append(CheckResult("orbits", f.value, ok, "orbits: " + ", ".join(bits), tuple(diff)))
    return out


def run_suite(groups: list[GroupInstance], oracle: bool, seed: int, include_global: bool) -> Iterator[CheckResult]:
    rng = np.random.default_rng(seed)
    parts_by_group: dict[str, dict[Kind, OrbitPartition]] = {}
    for g in groups:
        yield from check_group(g)
        yield from check_aut(g, oracle)
        results, parts = check_triples(g, oracle)
        parts_by_group[g.label] = parts
        yield from results
        yield from check_maps(g, parts, rng)
        yield from check_class_separation(g)
        if oracle:
            yield from check_generation_oracle(g)
    yield from check_orbit_counts(groups, parts_by_group)
    if include_global:
        yield from check_charfree()


def check_generation_oracle(g: GroupInstance) -> list[CheckResult]:
    """Compare the Frattini generation test with closure on every rotary candidate."""
    if g.order > 32:
        return []
    t = dense(g)
    space = enumerate_tuples(g, Kind.ROTARY_PAIR)
    inv = np.flatnonzero(t.orders == 2)
    brute = sorted(
        a * g.order + z
        for a in range(g.order)
        for z in inv.tolist()
        if len(closure_indices(t, [a, z])) == g.order
    )
    return [_result("generation-oracle", g.label, brute, space.codes.tolist(), f"{len(brute)} rotary pairs")]
