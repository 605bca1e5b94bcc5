"""The finite 2-groups having a cyclic or dihedral maximal subgroup.

Every group is stored as ``<a> . T`` where ``a`` has order ``2**ell`` and
``T`` is a set of commuting "tail" generators.  A tail generator ``t`` acts
on ``<a>`` by ``a^t = a^lam`` and squares into ``<a>`` as ``t^2 = a^s`` with
``a^s`` central.  An element is the exponent tuple ``(i, e_1, ..., e_k)``
standing for ``a^i t_1^e_1 ... t_k^e_k`` with ``0 <= i < 2**ell`` and each
``e_j`` a bit.  Two such words multiply by collecting the tails to the right:

    (a^i T)(a^j S) = a^(i + j*lam_T + s_{T and S}) (T xor S)

The parameter ``ell`` is always ``log2 |<a>|``, so for example
``Dihedral(3)`` is the dihedral group of order 16.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

from .errors import MalformedElementError, ParameterError

Element = tuple[int, ...]

MAX_ELL = 30


class Family(str, enum.Enum):
    CYCLIC = "Cyclic"
    CYCLIC_TIMES_Z2 = "CyclicTimesZ2"
    DIHEDRAL = "Dihedral"
    SEMIDIHEDRAL = "SemiDihedral"
    MODULAR = "Modular"
    QUATERNION = "Quaternion"
    QUATERNION_CENTRAL_Z4 = "QuaternionCentralZ4"
    DIHEDRAL_TIMES_Z2 = "DihedralTimesZ2"
    DIHEDRAL_SEMI_Z2 = "DihedralSemiZ2"
    ELEMENTARY_ABELIAN_8 = "ElementaryAbelian8"


MIN_ELL = {
    Family.CYCLIC: 2,
    Family.CYCLIC_TIMES_Z2: 1,
    Family.DIHEDRAL: 2,
    Family.SEMIDIHEDRAL: 3,
    Family.MODULAR: 3,
    Family.QUATERNION: 2,
    Family.QUATERNION_CENTRAL_Z4: 2,
    Family.DIHEDRAL_TIMES_Z2: 2,
    Family.DIHEDRAL_SEMI_Z2: 3,
}

# log2 of the index of <a> in G
_TAIL_COUNT = {
    Family.CYCLIC: 0,
    Family.CYCLIC_TIMES_Z2: 1,
    Family.DIHEDRAL: 1,
    Family.SEMIDIHEDRAL: 1,
    Family.MODULAR: 1,
    Family.QUATERNION: 1,
    Family.QUATERNION_CENTRAL_Z4: 2,
    Family.DIHEDRAL_TIMES_Z2: 2,
    Family.DIHEDRAL_SEMI_Z2: 2,
    Family.ELEMENTARY_ABELIAN_8: 2,
}

# Groups whose automorphism group is not a 2-group.
DEGENERATE = frozenset(
    {
        (Family.CYCLIC_TIMES_Z2, 1),
        (Family.QUATERNION, 2),
        (Family.ELEMENTARY_ABELIAN_8, None),
        (Family.QUATERNION_CENTRAL_Z4, 2),
    }
)


@dataclass(frozen=True, order=True)
class FamilyDescriptor:
    family: Family
    ell: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))

    def normalized(self) -> "FamilyDescriptor":
        """Apply the degenerate identifications D_4 = Z_2^2 and M_8 = D_8."""
        if self.family is Family.DIHEDRAL and self.ell == 1:
            return FamilyDescriptor(Family.CYCLIC_TIMES_Z2, 1)
        if self.family is Family.MODULAR and self.ell == 2:
            return FamilyDescriptor(Family.DIHEDRAL, 2)
        return self

    def validate(self) -> None:
        if self.family is Family.ELEMENTARY_ABELIAN_8:
            if self.ell is not None:
                raise ParameterError("ElementaryAbelian8 takes no ell")
            return
        lo = MIN_ELL[self.family]
        if not isinstance(self.ell, int) or not lo <= self.ell <= MAX_ELL:
            raise ParameterError(
                f"{self.family.value} needs {lo} <= ell <= {MAX_ELL}, got {self.ell!r}"
            )

    @property
    def is_degenerate(self) -> bool:
        return (self.family, self.ell) in DEGENERATE

    @property
    def order(self) -> int:
        a_exp = 1 if self.ell is None else self.ell
        return 2 ** (a_exp + _TAIL_COUNT[self.family])

    @property
    def label(self) -> str:
        f, ell = self.family, self.ell
        if f is Family.ELEMENTARY_ABELIAN_8:
            return "Z2^3"
        n = 2**ell
        m = 2 * n
        return {
            Family.CYCLIC: f"Z{n}",
            Family.CYCLIC_TIMES_Z2: "Z2^2" if ell == 1 else f"Z{n}xZ2",
            Family.DIHEDRAL: f"D{m}",
            Family.SEMIDIHEDRAL: f"SD{m}",
            Family.MODULAR: f"Z{n}:Z2",
            Family.QUATERNION: f"Q{m}",
            Family.QUATERNION_CENTRAL_Z4: f"Q{m}oZ4",
            Family.DIHEDRAL_TIMES_Z2: f"D{m}xZ2",
            Family.DIHEDRAL_SEMI_Z2: f"D{m}:Z2",
        }[f]

    def to_json(self) -> dict:
        out: dict = {"family": self.family.value}
        if self.ell is not None:
            out["ell"] = self.ell
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilyDescriptor":
        try:
            family = Family(data["family"])
        except (KeyError, ValueError) as exc:
            raise ParameterError(f"unknown family in {data!r}") from exc
        return cls(family, data.get("ell"))

    def __str__(self) -> str:
        return self.label


def _tails(family: Family, ell: int) -> list[tuple[str, int, int]]:
    """(name, conjugation multiplier, exponent of a in the square)."""
    n = 2**ell
    a0 = n // 2
    return {
        Family.CYCLIC: [],
        Family.CYCLIC_TIMES_Z2: [("b", 1, 0)],
        Family.DIHEDRAL: [("b", n - 1, 0)],
        Family.SEMIDIHEDRAL: [("b", a0 - 1, 0)],
        Family.MODULAR: [("b", a0 + 1, 0)],
        Family.QUATERNION: [("c", n - 1, a0)],
        Family.QUATERNION_CENTRAL_Z4: [("c", n - 1, a0), ("d", 1, a0)],
        Family.DIHEDRAL_TIMES_Z2: [("b", n - 1, 0), ("c", 1, 0)],
        Family.DIHEDRAL_SEMI_Z2: [("b", n - 1, 0), ("c", a0 + 1, 0)],
        Family.ELEMENTARY_ABELIAN_8: [("b", 1, 0), ("c", 1, 0)],
    }[family]


@dataclass(frozen=True)
class GroupInstance:
    """A concrete catalog group with normal-form collection.

    Instances compare equal iff their descriptors do; all other fields are
    derived from the descriptor.
    """

    descriptor: FamilyDescriptor
    ell: int = field(compare=False)
    names: tuple[str, ...] = field(compare=False)
    lambdas: tuple[int, ...] = field(compare=False)
    squares: tuple[int, ...] = field(compare=False)

    @property
    def family(self) -> Family:
        return self.descriptor.family

    @property
    def n(self) -> int:
        """Order of the distinguished generator ``a``."""
        return 1 << self.ell

    @property
    def a0_exponent(self) -> int:
        return self.n >> 1

    @property
    def k(self) -> int:
        return len(self.lambdas)

    @property
    def order(self) -> int:
        return self.n << self.k

    @property
    def identity(self) -> Element:
        return (0,) * (self.k + 1)

    @property
    def label(self) -> str:
        return self.descriptor.label

    @property
    def lambda_map(self) -> dict[str, int]:
        return dict(zip(self.names[1:], self.lambdas))

    @property
    def square_map(self) -> dict[str, int]:
        return dict(zip(self.names[1:], self.squares))

    def __repr__(self) -> str:
        return f"GroupInstance({self.label})"

    # -- collection -----------------------------------------------------

    @cached_property
    def _lam_by_bits(self) -> tuple[int, ...]:
        out = []
        for bits in range(1 << self.k):
            lam = 1
            for j, t_lam in enumerate(self.lambdas):
                if bits >> (self.k - 1 - j) & 1:
                    lam = lam * t_lam % self.n
            out.append(lam)
        return tuple(out)

    @cached_property
    def _sq_by_bits(self) -> tuple[int, ...]:
        out = []
        for bits in range(1 << self.k):
            s = 0
            for j, t_sq in enumerate(self.squares):
                if bits >> (self.k - 1 - j) & 1:
                    s += t_sq
            out.append(s % self.n)
        return tuple(out)

    def _bits(self, u: Element) -> int:
        bits = 0
        for e in u[1:]:
            bits = bits << 1 | e
        return bits

    def _unbits(self, bits: int) -> tuple[int, ...]:
        return tuple(bits >> (self.k - 1 - j) & 1 for j in range(self.k))

    def check(self, u: Element) -> Element:
        """Return ``u`` as a tuple, raising if it is not a normal form."""
        u = tuple(u)
        if (
            len(u) != self.k + 1
            or not all(isinstance(e, int) for e in u)
            or not 0 <= u[0] < self.n
            or any(e not in (0, 1) for e in u[1:])
        ):
            raise MalformedElementError(f"{u!r} is not a normal form in {self.label}")
        return u

    def mul(self, u: Element, v: Element) -> Element:
        eu, ev = self._bits(u), self._bits(v)
        i = (u[0] + v[0] * self._lam_by_bits[eu] + self._sq_by_bits[eu & ev]) % self.n
        return (i,) + self._unbits(eu ^ ev)

    def inv(self, u: Element) -> Element:
        # lam_T is an involution mod n, so a^i T has inverse a^j T with
        # j = -(i + s_T) * lam_T.
        e = self._bits(u)
        j = -(u[0] + self._sq_by_bits[e]) * self._lam_by_bits[e] % self.n
        return (j,) + u[1:]

    def pow(self, u: Element, m: int) -> Element:
        if m < 0:
            u, m = self.inv(u), -m
        result = self.identity
        while m:
            if m & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            m >>= 1
        return result

    def generator(self, name: str) -> Element:
        j = self.names.index(name)
        if j == 0:
            return (1,) + (0,) * self.k
        return (0,) + tuple(int(i == j - 1) for i in range(self.k))

    @property
    def generators(self) -> tuple[Element, ...]:
        return tuple(self.generator(x) for x in self.names)

    def index(self, u: Element) -> int:
        """Position of ``u`` in the lexicographic order of normal forms."""
        return u[0] << self.k | self._bits(u)

    def element(self, idx: int) -> Element:
        return (idx >> self.k,) + self._unbits(idx & ((1 << self.k) - 1))

    def elements(self) -> Iterator[Element]:
        for idx in range(self.order):
            yield self.element(idx)

    # -- presentation ---------------------------------------------------

    def relations_hold(self, images: tuple[Element, ...]) -> bool:
        """True iff ``images`` satisfy the defining relations of the family.

        The relations are ``a^n = 1``, ``t^2 = a^s_t``, ``a^t = a^lam_t`` and
        pairwise commuting tails; they form a presentation of the group, so a
        tuple satisfying them defines a homomorphism from it.
        """
        one = self.identity
        a_img = images[0]
        if self.pow(a_img, self.n) != one:
            return False
        tails = images[1:]
        for t, lam, sq in zip(tails, self.lambdas, self.squares):
            if self.mul(t, t) != self.pow(a_img, sq):
                return False
            if self.mul(self.inv(t), self.mul(a_img, t)) != self.pow(a_img, lam):
                return False
        for x in range(len(tails)):
            for y in range(x + 1, len(tails)):
                if self.mul(tails[x], tails[y]) != self.mul(tails[y], tails[x]):
                    return False
        return True

    def _self_test(self) -> None:
        n = self.n
        for lam, sq in zip(self.lambdas, self.squares):
            assert lam % 2 == 1 and lam * lam % n == 1, "tail action is not an involution"
            for other in self.lambdas:
                assert sq * other % n == sq, "tail square is not central"
        assert self.relations_hold(self.generators), f"{self.label} violates its relations"
        assert self.pow(self.generator("a"), n // 2) != self.identity


@lru_cache(maxsize=None)
def _build(desc: FamilyDescriptor) -> GroupInstance:
    ell = 1 if desc.ell is None else desc.ell
    tails = _tails(desc.family, ell)
    g = GroupInstance(
        descriptor=desc,
        ell=ell,
        names=("a",) + tuple(t[0] for t in tails),
        lambdas=tuple(t[1] for t in tails),
        squares=tuple(t[2] for t in tails),
    )
    g._self_test()
    return g


def build(desc: FamilyDescriptor | Family | str, ell: int | None = None) -> GroupInstance:
    """Construct the catalog group for ``desc`` after normalization.

    >>> build("Dihedral", 3).order
    16
    """
    if not isinstance(desc, FamilyDescriptor):
        try:
            desc = FamilyDescriptor(Family(desc), ell)
        except ValueError as exc:
            raise ParameterError(f"unknown family {desc!r}") from exc
    desc = desc.normalized()
    desc.validate()
    return _build(desc)


def all_descriptors(max_order: int) -> list[FamilyDescriptor]:
    out = []
    for family in Family:
        if family is Family.ELEMENTARY_ABELIAN_8:
            cand = [FamilyDescriptor(family)]
        else:
            cand = [
                FamilyDescriptor(family, ell)
                for ell in range(MIN_ELL[family], MAX_ELL + 1)
            ]
        out.extend(d for d in cand if d.order <= max_order)
    return sorted(set(out), key=lambda d: (d.order, list(Family).index(d.family)))


def catalog_all(max_order: int) -> list[GroupInstance]:
    """Every catalog group of order at most ``max_order``, each once."""
    return [build(d) for d in all_descriptors(max_order)]


def feature_flags(g: GroupInstance):
    """Which tuple kinds exist for ``g``.

    Decided by enumeration when ``ell <= 6`` and by the reference table above
    that.
    """
    from .reference import FeatureFlags, expected_flags

    if g.ell > 6:
        return expected_flags(g.descriptor)
    from .triples import Kind, enumerate_tuples

    return FeatureFlags(*(len(enumerate_tuples(g, k)) > 0 for k in Kind))
