"""Sign vectors of sampled cosine rows and their exact correlations.

Row a of the n-point signed cosine matrix is

    s_k = sign(cos(2 pi a k / n)),   k = 1..n,   sign(0) := +1.

The sign depends only on r = a*k mod n and is decided by integers alone:

    s_k = +1  iff  4r <= n  or  4r >= 3n,

so the whole pipeline is exact; floating point never enters the core path.
A vector is bit packed into one Python int (bit k-1 set iff s_k = -1),
which turns the correlation

    T(a, b) = sum_k s_{ak} s_{bk} = n - 2 * popcount(u XOR v)

into a single XOR plus popcount.  sigma = |T| is the tabulated statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .residues import Modulus, mod_inverse, toroidal_norm

# numpy int64 products r*k stay exact while r < 2**63 / n; beyond that a
# plain-int stepping loop takes over (slow but exact for any size).
_INT64_MAX = 2**63 - 1


class LengthMismatch(ValueError):
    """Correlation of two vectors over different moduli."""


def cos_sign_exact(m: int, n: int) -> int:
    """sign(cos(2 pi m / n)) with sign(0) := +1, by integer comparison."""
    r = m % n
    return 1 if (4 * r <= n or 4 * r >= 3 * n) else -1


def negative_set(n: int) -> tuple[int, int, int]:
    """The contiguous run {k in [1, n-1] : sign(cos(2 pi k/n)) = -1}.

    Returns (first, last, count) with first = floor(n/4) + 1 and
    last = ceil(3n/4) - 1; when 4 | n the two cos = 0 endpoints fall out
    of the run automatically.
    """
    first = n // 4 + 1
    last = -(-3 * n // 4) - 1
    return first, last, last - first + 1


def _negative_mask(a: int, n: int) -> np.ndarray:
    """Boolean mask over k = 1..n marking s_k = -1."""
    r = a % n
    if r == 0:
        return np.zeros(n, dtype=bool)
    if r <= _INT64_MAX // n:
        res = np.arange(1, n + 1, dtype=np.int64) * r % n
        res *= 4
        return (res > n) & (res < 3 * n)
    # huge-modulus fallback: incremental residue stepping, no products
    mask = np.zeros(n, dtype=bool)
    lo, hi = n, 3 * n
    acc = 0
    for k in range(n):
        acc += r
        if acc >= n:
            acc -= n
        mask[k] = lo < 4 * acc < hi
    return mask


def _pack_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class SignVector:
    """Bit-packed sign row: bit k-1 of `bits` is set iff s_k = -1."""

    n: int
    a: int
    bits: int

    def sign(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise IndexError(f"k must be in [1, {self.n}]: got {k}")
        return -1 if (self.bits >> (k - 1)) & 1 else 1

    def negatives(self) -> int:
        return self.bits.bit_count()

    def to_signs(self) -> np.ndarray:
        """Unpacked +-1 vector (int8), for oracles and dense math."""
        raw = np.frombuffer(
            self.bits.to_bytes((self.n + 7) // 8, "little"), dtype=np.uint8
        )
        mask = np.unpackbits(raw, bitorder="little")[: self.n]
        return np.where(mask == 1, -1, 1).astype(np.int8)


def build_sign_vector(a: int, n: int | Modulus) -> SignVector:
    """Pack row a of the signed cosine matrix for modulus n."""
    nn = n.n if isinstance(n, Modulus) else int(n)
    if nn < 2:
        raise ValueError(f"modulus must be >= 2: got {nn}")
    return SignVector(n=nn, a=a % nn, bits=_pack_mask(_negative_mask(a, nn)))


def correlation(u: SignVector, v: SignVector) -> int:
    """Signed correlation T = sum_k s^u_k s^v_k = n - 2*popcount(u XOR v)."""
    if u.n != v.n:
        raise LengthMismatch(f"moduli differ: {u.n} vs {v.n}")
    return u.n - 2 * (u.bits ^ v.bits).bit_count()


@dataclass(frozen=True)
class SigmaRecord:
    """One correlation query: raw signed T, sigma = |T|, and (for prime n
    with invertible a) the class distance ||a^{-1} b||."""

    n: int
    a: int
    b: int
    raw: int
    sigma: int
    class_distance: int | None


def sigma_exact(a: int, b: int, n: int | Modulus) -> SigmaRecord:
    """Exact sigma(a, b) for modulus n, with class distance when defined."""
    mod = n if isinstance(n, Modulus) else Modulus.of(n)
    t = correlation(build_sign_vector(a, mod), build_sign_vector(b, mod))
    dist = None
    if mod.prime and a % mod.n != 0 and b % mod.n != 0:
        dist = toroidal_norm(mod_inverse(a, mod.n) * b, mod.n)
    return SigmaRecord(
        n=mod.n, a=a % mod.n, b=b % mod.n, raw=t, sigma=abs(t), class_distance=dist
    )
