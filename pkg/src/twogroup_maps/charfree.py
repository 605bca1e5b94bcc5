"""Square-free tests and square divisors of Mersenne numbers 2^d - 1."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, ScaleError

SQUAREFREE_MAX = 1 << 60
SCAN_MAX = 10**6


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides ``|n|``.

    Trial division runs up to the cube root.  Whatever cofactor is left has
    at most two prime factors, so it carries a square exactly when it is a
    perfect square.
    """
    if n == 0:
        raise ParameterError("0 is divisible by every square")
    m = abs(n)
    if m > SQUAREFREE_MAX:
        raise ScaleError(f"|n| must be at most 2^60, got {m}")
    p = 2
    while p * p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return False
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    return m == 1 or r * r != m


@dataclass(frozen=True)
class SquareWitness:
    d: int
    x: int | None

    def __post_init__(self) -> None:
        if self.x is not None and pow(2, self.d, self.x * self.x) != 1:
            raise ValueError(f"{self.x}^2 does not divide 2^{self.d} - 1")


def square_divisor_scan(d: int, x_max: int = 1000) -> SquareWitness:
    """Smallest ``x`` in ``2..x_max`` with ``x^2 | 2^d - 1``, by modular powers."""
    if d < 1 or x_max < 1:
        raise ParameterError("d and x_max must be positive")
    if d > SCAN_MAX or x_max > SCAN_MAX:
        raise ScaleError(f"d and x_max are limited to {SCAN_MAX}")
    for x in range(3, x_max + 1, 2):
        if pow(2, d, x * x) == 1:
            return SquareWitness(d, x)
    return SquareWitness(d, None)
