"""Automorphism groups, built from explicit generators and by brute force.

An automorphism is stored as the images of the distinguished generators
``(a, t_1, ..., t_k)``.  Composition follows the right-action convention
used throughout: ``u^(f*h) = (u^f)^h``, so ``compose(f, h)`` applies ``f``
first.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .catalog import Element, Family, GroupInstance
from .engine import closure_indices, dense, generates
from .errors import GroupError, ScaleError

BRUTE_FORCE_MAX_ORDER = 64
CLOSURE_CAP = 1 << 16


@dataclass(frozen=True)
class Automorphism:
    group: GroupInstance
    images: tuple[Element, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        g = self.group
        images = tuple(g.check(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(g.names):
            raise GroupError(f"need {len(g.names)} images, got {len(images)}")
        if not g.relations_hold(images):
            raise GroupError(f"images {images} do not preserve the relations of {g.label}")
        if not generates(g, images):
            raise GroupError(f"images {images} do not generate {g.label}")

    def __call__(self, u: Element) -> Element:
        return apply(self, u)

    @cached_property
    def perm(self) -> np.ndarray:
        """The automorphism as an index permutation (dense scale only)."""
        t = dense(self.group)
        return _perm_from_images(self.group, t, [self.group.index(x) for x in self.images])

    def __repr__(self) -> str:
        return f"Automorphism({self.name or self.images})"


def _perm_from_images(g: GroupInstance, t, img_idx: Sequence[int]) -> np.ndarray:
    # element index x = i << k | bits encodes a^i t_1^e_1 ... t_k^e_k
    N, k = g.order, g.k
    a_pows = np.zeros(g.n, dtype=np.int64)
    for i in range(1, g.n):
        a_pows[i] = t.mul[a_pows[i - 1], img_idx[0]]
    idx = np.arange(N)
    out = a_pows[idx >> k]
    for j in range(k):
        bit = (idx >> (k - 1 - j)) & 1
        out = np.where(bit == 1, t.mul[out, img_idx[j + 1]], out)
    return out


def apply(aut: Automorphism, u: Element) -> Element:
    """Evaluate ``u``'s normal-form word on the generator images."""
    g = aut.group
    u = g.check(u)
    out = g.pow(aut.images[0], u[0])
    for e, img in zip(u[1:], aut.images[1:]):
        if e:
            out = g.mul(out, img)
    return out


def compose(f: Automorphism, h: Automorphism) -> Automorphism:
    """``f`` then ``h``: the automorphism ``u -> (u^f)^h``."""
    if f.group != h.group:
        raise GroupError("cannot compose automorphisms of different groups")
    return Automorphism(f.group, tuple(apply(h, x) for x in f.images))


def identity_automorphism(g: GroupInstance) -> Automorphism:
    return Automorphism(g, g.generators, "1")


def power(f: Automorphism, m: int) -> Automorphism:
    out = identity_automorphism(f.group)
    for _ in range(m):
        out = compose(out, f)
    return out


@dataclass(frozen=True)
class AutGroup:
    group: GroupInstance
    generators: tuple[Automorphism, ...]
    order: int
    elements: frozenset[Automorphism] | None = None

    def materialize(self) -> "AutGroup":
        if self.elements is not None:
            return self
        return AutGroup(self.group, self.generators, self.order, aut_closure(self.generators))

    def generator(self, name: str) -> Automorphism:
        for f in self.generators:
            if f.name == name:
                return f
        raise KeyError(name)


def aut_closure(gens: Sequence[Automorphism], cap: int = CLOSURE_CAP) -> frozenset[Automorphism]:
    """All products of ``gens``; refuses to exceed ``cap`` members."""
    g = gens[0].group
    g_idx = [np.asarray(f.perm) for f in gens]
    start = tuple(g.index(x) for x in g.generators)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for p in g_idx:
            nxt = tuple(int(p[x]) for x in cur)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise ScaleError(f"automorphism closure exceeds {cap} elements")
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(
        _trusted(g, tuple(g.element(x) for x in imgs)) for imgs in seen
    )


def _trusted(g: GroupInstance, images: tuple[Element, ...], name: str = "") -> Automorphism:
    # skip the relation/generation re-check for images produced by closure
    aut = object.__new__(Automorphism)
    object.__setattr__(aut, "group", g)
    object.__setattr__(aut, "images", images)
    object.__setattr__(aut, "name", name)
    return aut


# -- explicit generators --------------------------------------------------


def aut_order_formula(g: GroupInstance) -> int:
    """Closed form for |Aut(G)| in the general (non-degenerate) case."""
    ell, f = g.ell, g.family
    return {
        Family.CYCLIC: 2 ** (ell - 1),
        Family.CYCLIC_TIMES_Z2: 2 ** (ell + 1),
        Family.MODULAR: 2 ** (ell + 1),
        Family.DIHEDRAL: 2 ** (2 * ell - 1),
        Family.QUATERNION: 2 ** (2 * ell - 1),
        Family.SEMIDIHEDRAL: 2 ** (2 * ell - 2),
        Family.QUATERNION_CENTRAL_Z4: 2 ** (2 * ell),
        Family.DIHEDRAL_TIMES_Z2: 2 ** (2 * ell + 2),
        Family.DIHEDRAL_SEMI_Z2: 2 ** (2 * ell),
    }[f]


DEGENERATE_AUT_ORDER = {"Z2^2": 6, "Q8": 24, "Z2^3": 168, "Q8oZ4": 48}


def aut_order(g: GroupInstance) -> int:
    if g.descriptor.is_degenerate:
        return DEGENERATE_AUT_ORDER[g.label]
    return aut_order_formula(g)


def _explicit_images(g: GroupInstance) -> list[tuple[str, tuple[str, ...]]]:
    """Generator images as words, per family."""
    f = g.family
    n = g.n
    a0 = f"a^{n // 2}"
    rho = [("rho5", ("a^5",)), ("rho-1", (f"a^{n - 1}",))]
    if f is Family.CYCLIC:
        return rho
    if f in (Family.CYCLIC_TIMES_Z2, Family.MODULAR):
        return [
            ("rho5", ("a^5", "b")),
            ("rho-1", (f"a^{n - 1}", "b")),
            ("tau", ("a*b", "b")),
            ("sigma", ("a", f"{a0}*b")),
        ]
    if f is Family.DIHEDRAL:
        return [("rho5", ("a^5", "b")), ("rho-1", (f"a^{n - 1}", "b")), ("eta", ("a", "a*b"))]
    if f is Family.SEMIDIHEDRAL:
        return [("rho5", ("a^5", "b")), ("rho-1", (f"a^{n - 1}", "b")), ("eta0", ("a", "a^2*b"))]
    if f is Family.QUATERNION:
        return [("rho5", ("a^5", "c")), ("rho-1", (f"a^{n - 1}", "c")), ("eta", ("a", "a*c"))]
    if f is Family.QUATERNION_CENTRAL_Z4:
        return [
            ("rho5", ("a^5", "c", "d")),
            ("rho-1", (f"a^{n - 1}", "c", "d")),
            ("eta", ("a", "a*c", "d")),
            ("tau", ("a", "c", "d^-1")),
        ]
    if f is Family.DIHEDRAL_TIMES_Z2:
        return [
            ("rho5", ("a^5", "b", "c")),
            ("rho-1", (f"a^{n - 1}", "b", "c")),
            ("eta", ("a", "a*b", "c")),
            ("tau", ("a*c", "b", "c")),
            ("sigma", ("a", "b", f"{a0}*c")),
        ]
    if f is Family.DIHEDRAL_SEMI_Z2:
        return [
            ("rho5", ("a^5", "b", "c")),
            ("rho-1", (f"a^{n - 1}", "b", "c")),
            ("eta0", ("a", "a^2*b", "c")),
            ("tau", ("a*c", "b*c", "c")),
            ("sigma", ("a", "b", f"{a0}*c")),
        ]
    raise GroupError(f"no explicit generators for {g.label}")


def rho(g: GroupInstance, x: int) -> Automorphism:
    """``a -> a^x`` fixing every tail generator."""
    images = (g.pow(g.generator("a"), x),) + g.generators[1:]
    return Automorphism(g, images, f"rho{x}")


def explicit_aut(g: GroupInstance, materialize: bool = False) -> AutGroup:
    """Aut(G) from the printed generator sets.

    For the four degenerate groups (Z2^2, Q8, Z2^3, Q8oZ4) the brute-force
    result is the production path.
    """
    from .engine import parse_element

    if g.descriptor.is_degenerate:
        return brute_force_aut(g)
    gens = tuple(
        Automorphism(g, tuple(parse_element(g, w) for w in words), name)
        for name, words in _explicit_images(g)
    )
    out = AutGroup(g, gens, aut_order_formula(g))
    return out.materialize() if materialize else out


# -- brute force ----------------------------------------------------------


def brute_force_aut(g: GroupInstance) -> AutGroup:
    """Every generator-image assignment that preserves relations and generates G."""
    if g.order > BRUTE_FORCE_MAX_ORDER:
        raise ScaleError(f"brute force is limited to |G| <= {BRUTE_FORCE_MAX_ORDER}")
    t = dense(g)
    N = g.order
    idx = np.arange(N)
    one = 0
    found: list[tuple[int, ...]] = []
    for A in range(N):
        a_pow = np.zeros(g.n + 1, dtype=np.int64)
        for i in range(1, g.n + 1):
            a_pow[i] = t.mul[a_pow[i - 1], A]
        if a_pow[g.n] != one:
            continue
        cands = []
        for lam, sq in zip(g.lambdas, g.squares):
            sq_ok = t.mul[idx, idx] == a_pow[sq]
            conj = t.mul[t.mul[t.inv, A], idx]
            cands.append(np.flatnonzero(sq_ok & (conj == a_pow[lam])).tolist())
        for tails in itertools.product(*cands):
            if any(
                t.mul[tails[x], tails[y]] != t.mul[tails[y], tails[x]]
                for x in range(len(tails))
                for y in range(x + 1, len(tails))
            ):
                continue
            if len(closure_indices(t, (A,) + tails)) == N:
                found.append((A,) + tails)
    elements = frozenset(_trusted(g, tuple(g.element(x) for x in imgs)) for imgs in found)
    return AutGroup(g, _generating_subset(g, sorted(found)), len(elements), elements)


def _generating_subset(g: GroupInstance, all_imgs: list[tuple[int, ...]]) -> tuple[Automorphism, ...]:
    gens: list[Automorphism] = []
    have: set = set()
    target = len(all_imgs)
    for imgs in all_imgs:
        if len(have) == target:
            break
        if imgs not in have:
            gens.append(_trusted(g, tuple(g.element(x) for x in imgs), f"g{len(gens)}"))
            have = {tuple(g.index(x) for x in f.images) for f in aut_closure(gens)}
    return tuple(gens)


def is_homomorphism(aut: Automorphism) -> bool:
    """Independent check on the full multiplication table."""
    t = dense(aut.group)
    p = aut.perm
    return bool((p[t.mul] == t.mul[p[:, None], p[None, :]]).all()) and len(set(p.tolist())) == len(p)


def orbit_images(auts: Iterable[Automorphism], u: Element) -> set[Element]:
    return {apply(f, u) for f in auts}
