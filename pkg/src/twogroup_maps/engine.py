"""Element arithmetic and subgroup queries for catalog groups.

Two layers live here.  The formula layer works on exponent tuples and runs
at any supported ``ell`` (up to 30).  The dense layer materializes
multiplication tables over element indices and is gated to ``ell <= 6``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .catalog import Element, GroupInstance
from .errors import MalformedElementError, ScaleError

EXHAUSTIVE_MAX_ELL = 6


def require_exhaustive(g: GroupInstance, what: str = "operation") -> None:
    if g.ell > EXHAUSTIVE_MAX_ELL:
        raise ScaleError(
            f"{what} is exhaustive and limited to ell <= {EXHAUSTIVE_MAX_ELL}; "
            f"{g.label} has ell = {g.ell}"
        )


# -- formula layer --------------------------------------------------------


def multiply(g: GroupInstance, u: Element, v: Element) -> Element:
    return g.mul(g.check(u), g.check(v))


def inverse(g: GroupInstance, u: Element) -> Element:
    return g.inv(g.check(u))


def element_order(g: GroupInstance, u: Element) -> int:
    """Order of ``u``; squares repeatedly since every order is a power of 2."""
    u = g.check(u)
    one = g.identity
    order = 1
    while u != one:
        u = g.mul(u, u)
        order <<= 1
    return order


def conjugate(g: GroupInstance, u: Element, by: Element) -> Element:
    """``u^by = by^-1 u by``."""
    return g.mul(g.inv(by), g.mul(u, by))


def commutator(g: GroupInstance, u: Element, v: Element) -> Element:
    """``[u, v] = u^-1 v^-1 u v``."""
    return g.mul(g.mul(g.inv(u), g.inv(v)), g.mul(u, v))


def subgroup_order(g: GroupInstance, gens: Sequence[Element]) -> int:
    """|<gens>| from the tail projection and Schreier generators.

    ``<a>`` is normal with elementary abelian quotient given by the tail
    bits, so ``|H| = |proj(H)| * |H cap <a>|``.  The projection is an
    F_2-span; ``H cap <a>`` is cyclic and generated by the Schreier
    generators of a transversal of that span.  Runs in O(8 * |gens|)
    multiplications regardless of ``ell``.
    """
    gens = [g.check(x) for x in gens]
    reps: dict[int, Element] = {0: g.identity}
    queue = deque([0])
    schreier = []
    while queue:
        v = queue.popleft()
        for s in gens:
            w = v ^ g._bits(s)
            cand = g.mul(reps[v], s)
            if w not in reps:
                reps[w] = cand
                queue.append(w)
            else:
                schreier.append(g.mul(cand, g.inv(reps[w])))
    # tree edges give trivial Schreier generators and are skipped above
    step = g.n
    for x in schreier:
        step = math.gcd(step, x[0])
    return len(reps) * (g.n // step)


def generates(g: GroupInstance, gens: Sequence[Element]) -> bool:
    return subgroup_order(g, gens) == g.order


# -- words ----------------------------------------------------------------

_TOKEN = re.compile(r"^([a-z])(?:\^(-?\d+))?$")


def format_element(g: GroupInstance, u: Element) -> str:
    """Render a normal form as a word such as ``a^3*b*c``; identity is ``1``."""
    parts = []
    if u[0]:
        parts.append("a" if u[0] == 1 else f"a^{u[0]}")
    parts.extend(name for name, e in zip(g.names[1:], u[1:]) if e)
    return "*".join(parts) or "1"


def parse_element(g: GroupInstance, word: str) -> Element:
    """Evaluate a word over the generator names, e.g. ``a^-1*c*d^3``."""
    word = word.replace(" ", "")
    result = g.identity
    if word in ("", "1", "e"):
        return result
    for token in word.split("*"):
        m = _TOKEN.match(token)
        if not m or m.group(1) not in g.names:
            raise MalformedElementError(f"cannot parse {token!r} in {g.label}")
        result = g.mul(result, g.pow(g.generator(m.group(1)), int(m.group(2) or 1)))
    return result


# -- dense layer ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DenseTables:
    """Cayley data over element indices (lexicographic normal-form order)."""

    group: GroupInstance
    mul: np.ndarray  # (N, N) product indices
    inv: np.ndarray  # (N,)
    orders: np.ndarray  # (N,)

    @property
    def size(self) -> int:
        return self.group.order

    def power_table(self, m: int) -> np.ndarray:
        idx = np.arange(self.size)
        acc = np.zeros(self.size, dtype=np.int64)  # identity has index 0
        for _ in range(m):
            acc = self.mul[acc, idx]
        return acc


@lru_cache(maxsize=64)
def dense(g: GroupInstance) -> DenseTables:
    require_exhaustive(g, "dense table construction")
    N, k, n = g.order, g.k, g.n
    idx = np.arange(N, dtype=np.int64)
    i_part = idx >> k
    b_part = idx & ((1 << k) - 1)
    lam = np.array(g._lam_by_bits, dtype=np.int64)
    sq = np.array(g._sq_by_bits, dtype=np.int64)
    iu, iv = i_part[:, None], i_part[None, :]
    bu, bv = b_part[:, None], b_part[None, :]
    prod_i = (iu + iv * lam[bu] + sq[bu & bv]) % n
    mul = prod_i << k | (bu ^ bv)
    inv = np.array([g.index(g.inv(g.element(x))) for x in range(N)], dtype=np.int64)
    orders = np.ones(N, dtype=np.int64)
    cur = idx.copy()
    while True:
        todo = cur != 0
        if not todo.any():
            break
        orders[todo] <<= 1
        cur = mul[cur, cur]
    return DenseTables(g, mul, inv, orders)


def closure_indices(t: DenseTables, gens: Iterable[int]) -> np.ndarray:
    """Sorted indices of the subgroup generated by element indices ``gens``."""
    gens = sorted(set(int(x) for x in gens))
    seen = np.zeros(t.size, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    gen_arr = np.array(gens, dtype=np.int64)
    while frontier.size and gen_arr.size:
        nxt = t.mul[frontier[:, None], gen_arr[None, :]].ravel()
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


@dataclass(frozen=True)
class SubgroupClosure:
    elements: frozenset[Element]
    generator_list: tuple[Element, ...]
    order: int

    def __contains__(self, u: Element) -> bool:
        return tuple(u) in self.elements

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements)


def _closure_from_indices(g, gens, idx) -> SubgroupClosure:
    elems = frozenset(g.element(int(x)) for x in idx)
    return SubgroupClosure(elems, tuple(gens), len(elems))


def closure(g: GroupInstance, gens: Sequence[Element]) -> SubgroupClosure:
    """Breadth-first product closure of ``gens``."""
    gens = tuple(g.check(x) for x in gens)
    t = dense(g)
    idx = closure_indices(t, [g.index(x) for x in gens])
    return _closure_from_indices(g, gens, idx)


def involutions(g: GroupInstance) -> frozenset[Element]:
    t = dense(g)
    return frozenset(g.element(int(x)) for x in np.flatnonzero(t.orders == 2))


def center(g: GroupInstance) -> SubgroupClosure:
    t = dense(g)
    gens = [g.index(x) for x in g.generators]
    idx = np.arange(t.size)
    central = np.ones(t.size, dtype=bool)
    for s in gens:
        central &= t.mul[idx, s] == t.mul[s, idx]
    members = np.flatnonzero(central)
    return _closure_from_indices(g, [g.element(int(x)) for x in members], members)


def commutator_subgroup(g: GroupInstance) -> SubgroupClosure:
    t = dense(g)
    idx = np.arange(t.size)
    # [u, v] = u^-1 v^-1 u v
    left = t.mul[t.inv[:, None], t.inv[None, :]]
    right = t.mul[idx[:, None], idx[None, :]]
    comms = np.unique(t.mul[left, right])
    members = closure_indices(t, comms)
    return _closure_from_indices(g, [g.element(int(x)) for x in comms], members)


def normal_core(g: GroupInstance, members: np.ndarray) -> np.ndarray:
    """Largest normal subgroup of G inside the subgroup with index set ``members``."""
    t = dense(g)
    inside = np.zeros(t.size, dtype=bool)
    inside[members] = True
    keep = inside.copy()
    for x in range(t.size):
        conj = t.mul[t.mul[t.inv[x], members], x]
        keep[members[~inside[conj]]] = False
    return np.flatnonzero(keep)


# -- Frattini quotient ----------------------------------------------------


@lru_cache(maxsize=64)
def frattini_labels(g: GroupInstance) -> tuple[int, np.ndarray]:
    """Rank of G/Phi(G) and each element's coordinate vector as a bitmask.

    For a 2-group Phi(G) is generated by the squares, and a subset generates
    G iff its image spans G/Phi(G) (Burnside basis theorem).
    """
    t = dense(g)
    idx = np.arange(t.size)
    phi = closure_indices(t, np.unique(t.mul[idx, idx]))
    label = np.full(t.size, -1, dtype=np.int64)
    label[phi] = 0
    rank = 0
    for x in range(t.size):
        if label[x] >= 0:
            continue
        known = np.flatnonzero(label >= 0)
        label[t.mul[x, known]] = label[known] | (1 << rank)
        rank += 1
    return rank, label


def span_size(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Size of the F_2-span of each row of bitmask vectors (vectorized)."""
    span = np.zeros_like(vectors[0])
    for subset in range(1 << len(vectors)):
        acc = np.zeros_like(vectors[0])
        for j, vec in enumerate(vectors):
            if subset >> j & 1:
                acc = acc ^ vec
        span = span | (np.int64(1) << acc)
    return _popcount(span)


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while x.any():
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


# -- subgroup types -------------------------------------------------------


def subgroup_type(g: GroupInstance, members: Iterable[Element]) -> str:
    """Classify a subgroup among the types the catalog needs.

    Returns one of ``trivial``, ``cyclic``, ``Z2^2``, ``abelian`` (a
    non-cyclic ``Z_2^m x Z_2`` with m >= 2), ``dihedral``,
    ``semidihedral``, ``modular``, ``quaternion`` or ``other``.  Only
    groups with a cyclic subgroup of index 2 get a specific label.
    """
    elems = sorted(set(tuple(x) for x in members))
    size = len(elems)
    if size == 1:
        return "trivial"
    orders = {u: element_order(g, u) for u in elems}
    top = max(orders.values())
    if top == size:
        return "cyclic"
    if top != size // 2:
        return "Z2^2" if size == 4 else "other"
    if size == 4:
        return "Z2^2"
    h = next(u for u in elems if orders[u] == top)
    cyc = [g.identity]
    while len(cyc) < top:
        cyc.append(g.mul(cyc[-1], h))
    pos = {u: j for j, u in enumerate(cyc)}
    y = next(u for u in elems if u not in pos)
    lam = pos[conjugate(g, h, y)]
    m = top
    if lam == 1:
        return "abelian"
    if lam == m - 1:
        outside_inv = any(orders[u] == 2 and u not in pos for u in elems)
        return "dihedral" if outside_inv else "quaternion"
    if m >= 8 and lam == m // 2 - 1:
        return "semidihedral"
    if m >= 8 and lam == m // 2 + 1:
        return "modular"
    return "other"


def is_cyclic_or_dihedral(g: GroupInstance, members: Iterable[Element]) -> bool:
    return subgroup_type(g, members) in ("cyclic", "dihedral", "Z2^2")


def maximal_subgroups(g: GroupInstance) -> list[np.ndarray]:
    """Index sets of all index-2 subgroups (kernels of functionals on G/Phi)."""
    rank, label = frattini_labels(g)
    out = []
    for functional in range(1, 1 << rank):
        parity = _popcount(label & functional) & 1
        out.append(np.flatnonzero(parity == 0))
    return out


def maximal_subgroup_witness(g: GroupInstance) -> SubgroupClosure:
    """An index-2 subgroup that is cyclic or dihedral.

    Candidates are scanned in lexicographic order of their sorted element
    lists; the first cyclic or dihedral one wins.  Failure means the group
    is not in the catalog and is reported as an ``AssertionError``.
    """
    for members in sorted(maximal_subgroups(g), key=lambda m: m.tolist()):
        elems = [g.element(int(x)) for x in members]
        if is_cyclic_or_dihedral(g, elems):
            gens = _small_generating_set(g, members)
            return SubgroupClosure(frozenset(elems), gens, len(elems))
    raise AssertionError(f"{g.label} has no cyclic or dihedral maximal subgroup")


def _small_generating_set(g: GroupInstance, members: np.ndarray) -> tuple[Element, ...]:
    t = dense(g)
    target = len(members)
    gens: list[int] = []
    have = {0}
    for x in members.tolist():
        if len(have) == target:
            break
        if x not in have:
            gens.append(x)
            have = set(closure_indices(t, gens).tolist())
    return tuple(g.element(x) for x in sorted(gens))
