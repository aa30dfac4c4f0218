"""Float-based reference routes shared by the test modules.

These deliberately avoid the package's integer sign test: signs come from
np.cos, so agreement with the exact path is meaningful.  The only integer
step is pinning the cos == 0 positions (4r = n or 3n), where the float
value is a rounding artifact and the convention sign(0) := +1 applies;
everywhere else cos(2 pi r / n) is at least sin(pi / (2n)) away from zero,
far beyond double rounding for any modulus tested here.
"""

from __future__ import annotations

import numpy as np


def float_sign_row(a: int, n: int) -> np.ndarray:
    k = np.arange(1, n + 1, dtype=np.int64)
    r = a % n * k % n
    s = np.where(np.cos(2.0 * np.pi * r / n) >= 0.0, 1, -1).astype(np.int64)
    s[(4 * r == n) | (4 * r == 3 * n)] = 1
    return s


def float_T(a: int, b: int, n: int) -> int:
    return int(np.dot(float_sign_row(a, n), float_sign_row(b, n)))


def primes_upto(top: int) -> list[int]:
    sieve = np.ones(top + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(top**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]
