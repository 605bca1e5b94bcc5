"""Reversing triples, regular triples and rotary pairs, and their Aut(G)-orbits.

A tuple of element indices ``(x, y, z)`` is packed into the integer code
``(x*N + y)*N + z`` (``x*N + z`` for pairs), so sorted code arrays are in
lexicographic tuple order.  Orbits are computed by a vectorized union-find
over these codes, using only the generators of Aut(G).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .automorphisms import Automorphism, explicit_aut
from .catalog import Element, GroupInstance
from .engine import dense, format_element, frattini_labels, parse_element, require_exhaustive, span_size
from .errors import GroupError, KindMismatchError


class Kind(str, Enum):
    REVERSING = "Reversing"
    REGULAR = "Regular"
    ROTARY_PAIR = "RotaryPair"

    @property
    def arity(self) -> int:
        return 2 if self is Kind.ROTARY_PAIR else 3

    @classmethod
    def parse(cls, text: str) -> "Kind":
        for k in cls:
            if text.lower() in (k.value.lower(), k.name.lower()):
                return k
        raise ValueError(f"unknown kind {text!r}; choose from {[k.value for k in cls]}")


@dataclass(frozen=True)
class GenTuple:
    kind: Kind
    parts: tuple[Element, ...]

    def words(self, g: GroupInstance) -> tuple[str, ...]:
        return tuple(format_element(g, u) for u in self.parts)

    def show(self, g: GroupInstance) -> str:
        return "(" + ",".join(self.words(g)) + ")"


def make_tuple(g: GroupInstance, kind: Kind, parts: Sequence[Union[str, Element]]) -> GenTuple:
    """Build a tuple from words or elements and check the defining conditions."""
    elems = tuple(parse_element(g, p) if isinstance(p, str) else g.check(p) for p in parts)
    t = GenTuple(kind, elems)
    problem = tuple_problem(g, t)
    if problem:
        raise GroupError(f"{t.show(g)} is not a {kind.value} tuple of {g.label}: {problem}")
    return t


def tuple_problem(g: GroupInstance, t: GenTuple) -> str | None:
    """Why ``t`` fails its kind's conditions, or None when it is valid."""
    from .engine import commutator, element_order, generates

    if len(t.parts) != t.kind.arity:
        return f"expected {t.kind.arity} parts"
    invols = t.parts if t.kind is not Kind.ROTARY_PAIR else t.parts[1:]
    if any(element_order(g, u) != 2 for u in invols):
        return "a part that must be an involution is not"
    if not generates(g, t.parts):
        return "parts do not generate the group"
    if t.kind is Kind.REGULAR:
        x, _, z = t.parts
        if x == z or commutator(g, x, z) != g.identity:
            return "<x, z> is not a four-group"
    return None


# -- enumeration ----------------------------------------------------------


@lru_cache(maxsize=None)
def _spanning_table(rank: int, arity: int) -> np.ndarray:
    """Boolean table over Frattini labels: do these vectors span F_2^rank?"""
    size = 1 << rank
    grids = np.meshgrid(*[np.arange(size)] * arity, indexing="ij")
    return span_size([x.ravel() for x in grids]).reshape((size,) * arity) == size


class TupleSpace(Sequence[GenTuple]):
    """All tuples of one kind, stored as sorted integer codes."""

    def __init__(self, group: GroupInstance, kind: Kind, codes: np.ndarray):
        self.group = group
        self.kind = kind
        self.codes = np.asarray(codes, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.codes)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return self._decode(int(self.codes[i]))

    def __iter__(self) -> Iterator[GenTuple]:
        for c in self.codes.tolist():
            yield self._decode(c)

    def _decode(self, code: int) -> GenTuple:
        g = self.group
        return GenTuple(self.kind, tuple(g.element(x) for x in decode(code, g.order, self.kind.arity)))

    def index_columns(self) -> list[np.ndarray]:
        N = self.group.order
        cols = []
        rest = self.codes
        for _ in range(self.kind.arity):
            cols.append(rest % N)
            rest = rest // N
        return cols[::-1]

    def position(self, t: GenTuple) -> int | None:
        code = encode_tuple(self.group, t)
        pos = int(np.searchsorted(self.codes, code))
        if pos < len(self.codes) and self.codes[pos] == code:
            return pos
        return None

    def __contains__(self, t) -> bool:
        return isinstance(t, GenTuple) and t.kind is self.kind and self.position(t) is not None


def decode(code: int, N: int, arity: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity):
        code, r = divmod(code, N)
        out.append(r)
    return tuple(out[::-1])


def encode_indices(idx: Sequence, N: int):
    code = idx[0]
    for x in idx[1:]:
        code = code * N + x
    return code


def encode_tuple(g: GroupInstance, t: GenTuple) -> int:
    return encode_indices([g.index(u) for u in t.parts], g.order)


def enumerate_tuples(g: GroupInstance, kind: Kind) -> TupleSpace:
    """Every tuple of ``kind`` for ``g``, in lexicographic order."""
    require_exhaustive(g, "tuple enumeration")
    t = dense(g)
    N = g.order
    rank, label = frattini_labels(g)
    inv = np.flatnonzero(t.orders == 2)
    chunks: list[np.ndarray] = []
    if kind is Kind.ROTARY_PAIR:
        ok = _spanning_table(rank, 2)
        A, Z = np.meshgrid(np.arange(N), inv, indexing="ij")
        mask = ok[label[A], label[Z]]
        chunks.append(A[mask] * N + Z[mask])
    else:
        ok = _spanning_table(rank, 3)
        Y, Z = np.meshgrid(inv, inv, indexing="ij")
        for x in inv.tolist():
            mask = ok[label[x], label[Y], label[Z]]
            if kind is Kind.REGULAR:
                mask &= (Z != x) & (t.mul[x, Z] == t.mul[Z, x])
            chunks.append((x * N + Y[mask]) * N + Z[mask])
    codes = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    return TupleSpace(g, kind, codes.astype(np.int64))


# -- orbits ---------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    representative: GenTuple
    size: int


@dataclass(frozen=True)
class OrbitPartition:
    group: GroupInstance
    kind: Kind
    classes: tuple[Orbit, ...]
    total: int
    space: TupleSpace = field(repr=False, compare=False)
    labels: np.ndarray = field(repr=False, compare=False)

    def orbit_of(self, t: GenTuple) -> int:
        pos = self.space.position(t)
        if pos is None:
            raise GroupError(f"{t.show(self.group)} is not among the partitioned tuples")
        return int(self.labels[pos])

    def members(self, i: int) -> list[GenTuple]:
        return [self.space[int(p)] for p in np.flatnonzero(self.labels == i)]

    def is_semiregular(self, aut_order: int) -> bool:
        return all(c.size == aut_order for c in self.classes)


def _generator_perms(g: GroupInstance, generators: Sequence[Automorphism] | None) -> list[np.ndarray]:
    gens = explicit_aut(g).generators if generators is None else generators
    return [np.asarray(f.perm) for f in gens]


def _image_positions(space: TupleSpace, perm: np.ndarray) -> np.ndarray:
    cols = space.index_columns()
    img = encode_indices([perm[c] for c in cols], space.group.order)
    pos = np.searchsorted(space.codes, img)
    pos = np.minimum(pos, len(space.codes) - 1)
    if not (space.codes[pos] == img).all():
        raise GroupError("the tuple set is not closed under the automorphisms")
    return pos


def _components(n: int, edges: list[np.ndarray]) -> np.ndarray:
    """Union-find over positions; each root is the least position of its class."""
    parent = np.arange(n)
    src = np.arange(n)
    while True:
        merged = False
        for dst in edges:
            a, b = parent[src], parent[dst]
            diff = a != b
            if diff.any():
                merged = True
                lo, hi = np.minimum(a[diff], b[diff]), np.maximum(a[diff], b[diff])
                np.minimum.at(parent, hi, lo)
                while True:
                    nxt = parent[parent]
                    if (nxt == parent).all():
                        break
                    parent = nxt
        if not merged:
            return parent


def orbit_partition(
    g: GroupInstance,
    tuples: Union[TupleSpace, Iterable[GenTuple]],
    generators: Sequence[Automorphism] | None = None,
) -> OrbitPartition:
    """Split ``tuples`` into orbits under the group generated by ``generators``."""
    space = tuples if isinstance(tuples, TupleSpace) else _space_from(g, list(tuples))
    if len(space) == 0:
        return OrbitPartition(g, space.kind, (), 0, space, np.zeros(0, dtype=np.int64))
    edges = [_image_positions(space, p) for p in _generator_perms(g, generators)]
    roots = _components(len(space), edges)
    uniq, labels, sizes = np.unique(roots, return_inverse=True, return_counts=True)
    classes = tuple(Orbit(space[int(r)], int(s)) for r, s in zip(uniq, sizes))
    return OrbitPartition(g, space.kind, classes, len(space), space, labels)


def _space_from(g: GroupInstance, tuples: list[GenTuple]) -> TupleSpace:
    kinds = {t.kind for t in tuples}
    if len(kinds) > 1:
        raise KindMismatchError(f"mixed tuple kinds {sorted(k.value for k in kinds)}")
    kind = kinds.pop() if kinds else Kind.REVERSING
    codes = np.unique(np.array([encode_tuple(g, t) for t in tuples], dtype=np.int64))
    return TupleSpace(g, kind, codes)


def equivalent(
    g: GroupInstance,
    t1: GenTuple,
    t2: GenTuple,
    generators: Sequence[Automorphism] | None = None,
) -> bool:
    """Breadth-first search from ``t1`` under the Aut generators, stopping at ``t2``."""
    if t1.kind is not t2.kind:
        raise KindMismatchError(f"cannot compare a {t1.kind.value} tuple with a {t2.kind.value} tuple")
    if len(t1.parts) != len(t2.parts):
        raise KindMismatchError("tuples of different lengths")
    start = tuple(g.index(u) for u in t1.parts)
    goal = tuple(g.index(u) for u in t2.parts)
    if start == goal:
        return True
    perms = [p.tolist() for p in _generator_perms(g, generators)]
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for p in perms:
            nxt = tuple(p[x] for x in cur)
            if nxt == goal:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


# -- representative matching ----------------------------------------------


@dataclass(frozen=True)
class RepresentativeReport:
    group: str
    kind: Kind
    orbit_count: int
    representative_count: int
    invalid: tuple[str, ...]
    duplicates: tuple[tuple[str, str], ...]
    uncovered: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (
            not self.invalid
            and not self.duplicates
            and not self.uncovered
            and self.orbit_count == self.representative_count
        )

    def summary(self) -> str:
        head = f"{self.group} {self.kind.value}: {self.representative_count} representatives, {self.orbit_count} orbits"
        if self.ok:
            return head + ", exact transversal"
        bits = []
        if self.invalid:
            bits.append("invalid " + " ".join(self.invalid))
        if self.duplicates:
            bits.append("equivalent " + " ".join(f"{p}~{q}" for p, q in self.duplicates))
        if self.uncovered:
            bits.append("uncovered orbits of " + " ".join(self.uncovered))
        return head + "; " + "; ".join(bits)


def expected_representatives(g: GroupInstance, kind: Kind) -> list[tuple[str, ...]]:
    from . import reference

    return {
        Kind.REVERSING: reference.reversing_representatives,
        Kind.REGULAR: reference.regular_representatives,
        Kind.ROTARY_PAIR: reference.rotary_representatives,
    }[kind](g.descriptor)


def match_representatives(
    g: GroupInstance, kind: Kind, partition: OrbitPartition | None = None
) -> RepresentativeReport:
    """Check that the reference representative set is a transversal of the orbits."""
    if partition is None:
        partition = orbit_partition(g, enumerate_tuples(g, kind))
    words = expected_representatives(g, kind)
    invalid: list[str] = []
    hit: dict[int, str] = {}
    duplicates: list[tuple[str, str]] = []
    for w in words:
        shown = "(" + ",".join(w) + ")"
        t = GenTuple(kind, tuple(parse_element(g, x) for x in w))
        if partition.space.position(t) is None:
            invalid.append(shown)
            continue
        i = partition.orbit_of(t)
        if i in hit:
            duplicates.append((hit[i], shown))
        else:
            hit[i] = shown
    uncovered = tuple(
        c.representative.show(g) for i, c in enumerate(partition.classes) if i not in hit
    )
    return RepresentativeReport(
        g.label, kind, len(partition.classes), len(words), tuple(invalid), tuple(duplicates), uncovered
    )
