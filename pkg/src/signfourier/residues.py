"""Exact integer arithmetic on the residue circle Z/n.

Everything downstream reduces to three primitives: primality (trial
division is plenty for the supported range), modular inverses (extended
Euclid), and the toroidal norm

    ||x|| = min(x mod n, n - x mod n),

the distance from x to 0 on the n-cycle.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

# Arithmetic is exact for any Python int; the tested operating range is
# n <= 2**32 and inputs are validated against a 64-bit ceiling.
MAX_MODULUS = 2**64 - 1


class OutOfRange(ValueError):
    """Modulus or argument outside the supported range."""


class NotInvertible(ValueError):
    """Raised when gcd(a, n) > 1, so a has no inverse mod n."""


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    top = isqrt(n)
    while f <= top:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class Modulus:
    """A validated modulus with its primality cached.

    Construct through Modulus.of(); passing a wrong prime flag raises.
    """

    n: int
    prime: bool

    def __post_init__(self) -> None:
        if not (2 <= self.n <= MAX_MODULUS):
            raise OutOfRange(f"modulus must be in [2, 2**64): got {self.n}")
        if self.prime != is_prime(self.n):
            raise ValueError(f"prime flag inconsistent for n={self.n}")

    @classmethod
    def of(cls, n: int) -> "Modulus":
        if not (2 <= n <= MAX_MODULUS):
            raise OutOfRange(f"modulus must be in [2, 2**64): got {n}")
        return cls(n=n, prime=is_prime(n))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # (g, x, y) with a*x + b*y = g = gcd(a, b)
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a modulo n (extended Euclid); works for composite n too."""
    if n < 2:
        raise OutOfRange(f"modulus must be >= 2: got {n}")
    a %= n
    g, x, _ = _xgcd(a, n)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible mod {n} (gcd={g})")
    return x % n


def toroidal_norm(x: int, n: int) -> int:
    """Distance from x to 0 on the cycle Z/n; always in [0, n/2]."""
    if n < 2:
        raise OutOfRange(f"modulus must be >= 2: got {n}")
    r = x % n
    return min(r, n - r)
