"""Sign-pattern Gram matrices of Legendre and Chebyshev polynomials.

The objects are integrals of products of polynomial SIGNS, not of the
polynomials themselves:

    Q[m, n] = | integral_{-1}^{1} sign(P_m(x)) sign(P_n(x)) dx |
    R[m, n] = | integral_{0}^{pi} sign(cos m t) sign(cos n t) dt |

(the R integrand is the Chebyshev sign product after x = cos t, which
absorbs the weight 1/sqrt(1-x^2)).  Both integrands are piecewise
constant, so each entry is a finite breakpoint sum: exact floats from
Legendre roots for Q, exact rational multiples of pi for R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

LEGENDRE_CEILING = 2.0  # diagonal value of Q
NEWTON_MAX_ITER = 100
ROOT_MERGE_TOL = 1e-14


class ConvergenceFailure(RuntimeError):
    """Root refinement failed to converge."""


def legendre_eval(k: int, x):
    """(P_k(x), P_k'(x)) by the three-term recurrence; x scalar or array.

    (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1};  the derivative comes from
    (x^2 - 1) P_k' = k (x P_k - P_{k-1}), with the limit k(k+1)/2 * (+-1)^(k-1)
    at the endpoints.
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0: got {k}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
    denom = x * x - 1.0
    interior = np.abs(denom) > 1e-300
    dp = np.empty_like(x)
    dp[interior] = k * (x[interior] * p[interior] - p_prev[interior]) / denom[interior]
    if (~interior).any():
        edge = np.sign(x[~interior]) ** (k - 1) if k > 1 else np.ones_like(x[~interior])
        dp[~interior] = edge * k * (k + 1) / 2.0
    return p, dp


def _legendre_values(k: int, x: np.ndarray) -> np.ndarray:
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev
    p = x.copy()
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
    return p


def _bisect_root(k: int, lo: float, hi: float) -> float:
    flo = float(_legendre_values(k, np.array([lo]))[0])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = float(_legendre_values(k, np.array([mid]))[0])
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def legendre_roots(k: int) -> np.ndarray:
    """All k roots of P_k, ascending, symmetric about 0 by construction.

    Newton from the Tricomi guesses cos(pi (4j - 1) / (4k + 2)); any root
    that fails to settle within NEWTON_MAX_ITER falls back to bisection
    between the neighboring guess midpoints.
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0: got {k}")
    if k == 0:
        return np.array([])
    half = k // 2
    j = np.arange(1, half + 1, dtype=float)
    theta = np.pi * (4 * j - 1) / (4 * k + 2)
    x = np.cos(theta)  # positive-half guesses, descending
    converged = np.zeros(half, dtype=bool)
    for _ in range(NEWTON_MAX_ITER):
        if converged.all():
            break
        p, dp = legendre_eval(k, x)
        step = p / dp
        x = x - np.where(converged, 0.0, step)
        converged |= np.abs(step) < 1e-15
    if not converged.all():
        lo_b = np.cos(np.pi * (4 * j + 1) / (4 * k + 2))
        hi_b = np.cos(np.pi * (4 * j - 3) / (4 * k + 2))
        for idx in np.nonzero(~converged)[0]:
            x[idx] = _bisect_root(k, float(lo_b[idx]), float(hi_b[idx]))
            resid = float(_legendre_values(k, np.array([x[idx]]))[0])
            if abs(resid) > 1e-9:
                raise ConvergenceFailure(f"root {idx} of P_{k} did not converge")
    pos = np.sort(x)
    parts = [-pos[::-1]]
    if k % 2 == 1:
        parts.append(np.zeros(1))
    parts.append(pos)
    roots = np.concatenate(parts)
    if not (np.diff(roots) > 0).all() or not ((-1 < roots) & (roots < 1)).all():
        raise ConvergenceFailure(f"roots of P_{k} are not sorted interior points")
    return roots


@dataclass(frozen=True)
class BreakpointPartition:
    """Sorted interior sign-change points of an integrand on [lo, hi]."""

    lo: float
    hi: float
    points: np.ndarray

    @classmethod
    def merge(cls, lo: float, hi: float, *point_sets: np.ndarray) -> "BreakpointPartition":
        merged = np.sort(np.concatenate([np.asarray(p, dtype=float) for p in point_sets]))
        if len(merged):
            keep = np.ones(len(merged), dtype=bool)
            keep[1:] = np.diff(merged) > ROOT_MERGE_TOL
            merged = merged[keep]
        return cls(lo=lo, hi=hi, points=merged)

    def edges(self) -> np.ndarray:
        return np.concatenate([[self.lo], self.points, [self.hi]])


def _legendre_sign_at(roots: np.ndarray, x: np.ndarray) -> np.ndarray:
    # sign(P_k) flips at each root and is +1 right of all of them
    above = len(roots) - np.searchsorted(roots, x)
    return np.where(above % 2 == 0, 1, -1)


def _legendre_pair_integral(roots_m: np.ndarray, roots_n: np.ndarray) -> float:
    part = BreakpointPartition.merge(-1.0, 1.0, roots_m, roots_n)
    edges = part.edges()
    mids = 0.5 * (edges[:-1] + edges[1:])
    signs = _legendre_sign_at(roots_m, mids) * _legendre_sign_at(roots_n, mids)
    return abs(float(np.sum(signs * np.diff(edges))))


@dataclass
class SignGram:
    """Gram matrix of sign patterns; values in [0, ceiling].

    kind "legendre": values only.  kind "chebyshev": values are
    float(coeff) * pi with the exact rational coeffs kept alongside.
    """

    kind: str
    size: int
    values: np.ndarray
    coeffs: list[list[Fraction]] | None = None

    @property
    def ceiling(self) -> float:
        return LEGENDRE_CEILING if self.kind == "legendre" else math.pi

    def to_csv(self, path: str | Path) -> None:
        lines = ["kind,N", f"{self.kind},{self.size}"]
        for m in range(self.size):
            for n in range(self.size):
                v = f"{self.values[m, n]:.12g}"
                if self.coeffs is not None:
                    q = self.coeffs[m][n]
                    lines.append(f"{m},{n},{v},{q.numerator}/{q.denominator}")
                else:
                    lines.append(f"{m},{n},{v}")
        Path(path).write_text("\n".join(lines) + "\n", newline="\n")

    @classmethod
    def from_csv(cls, path: str | Path) -> "SignGram":
        lines = [ln for ln in Path(path).read_text().split("\n") if ln]
        if len(lines) < 2 or lines[0] != "kind,N":
            raise ValueError(f"not a sign-gram CSV: {path}")
        kind, n_str = lines[1].split(",")
        size = int(n_str)
        values = np.zeros((size, size))
        coeffs: list[list[Fraction]] | None = None
        if kind == "chebyshev":
            coeffs = [[Fraction(0)] * size for _ in range(size)]
        for ln in lines[2:]:
            parts = ln.split(",")
            m, n = int(parts[0]), int(parts[1])
            values[m, n] = float(parts[2])
            if coeffs is not None:
                num, den = parts[3].split("/")
                coeffs[m][n] = Fraction(int(num), int(den))
        return cls(kind=kind, size=size, values=values, coeffs=coeffs)


def sign_gram_legendre(size: int) -> SignGram:
    """Q over degrees 0..size-1 by exact breakpoint integration."""
    if size < 1:
        raise ValueError(f"size must be >= 1: got {size}")
    roots = [legendre_roots(k) for k in range(size)]
    values = np.zeros((size, size))
    for m in range(size):
        for n in range(m, size):
            values[m, n] = values[n, m] = _legendre_pair_integral(roots[m], roots[n])
    return SignGram(kind="legendre", size=size, values=values)


def _cheb_breakpoints(k: int) -> list[Fraction]:
    # zeros of cos(k pi x) on (0, 1): odd multiples of 1/(2k)
    return [Fraction(2 * j + 1, 2 * k) for j in range(k)]


def _cheb_sign(k: int, x: Fraction) -> int:
    """sign(cos(k pi x)) for rational x, by integer comparison."""
    if k == 0:
        return 1
    u = k * x.numerator % (2 * x.denominator)
    q = x.denominator
    return 1 if (2 * u <= q or 2 * u >= 3 * q) else -1


def chebyshev_pair_coeff(m: int, n: int) -> Fraction:
    """R[m, n] / pi as an exact rational."""
    cuts = sorted(set(_cheb_breakpoints(m)) | set(_cheb_breakpoints(n)))
    total = Fraction(0)
    prev = Fraction(0)
    for x in cuts + [Fraction(1)]:
        if x <= prev:
            continue
        mid = (prev + x) / 2
        total += _cheb_sign(m, mid) * _cheb_sign(n, mid) * (x - prev)
        prev = x
    return abs(total)


def sign_gram_chebyshev(size: int) -> SignGram:
    """R over indices 0..size-1; exact rational multiples of pi."""
    if size < 1:
        raise ValueError(f"size must be >= 1: got {size}")
    coeffs = [[Fraction(0)] * size for _ in range(size)]
    values = np.zeros((size, size))
    for m in range(size):
        for n in range(m, size):
            q = chebyshev_pair_coeff(m, n)
            coeffs[m][n] = coeffs[n][m] = q
            values[m, n] = values[n, m] = float(q) * math.pi
    return SignGram(kind="chebyshev", size=size, values=values, coeffs=coeffs)


def quadrature_oracle(kind: str, m: int, n: int, samples: int = 10**6) -> float:
    """Midpoint-rule integral of the sign product; the independent check.

    legendre: over x in [-1, 1] with polynomial values from the
    recurrence.  chebyshev: over t in [0, pi] (the weight is absorbed by
    the substitution).
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1: got {samples}")
    if kind == "legendre":
        x = -1.0 + (2.0 * np.arange(samples) + 1.0) / samples
        sm = np.where(_legendre_values(m, x) < 0, -1, 1)
        sn = np.where(_legendre_values(n, x) < 0, -1, 1)
        return abs(float((sm * sn).mean())) * 2.0
    if kind == "chebyshev":
        t = (np.arange(samples) + 0.5) * (math.pi / samples)
        sm = np.where(np.cos(m * t) < 0, -1, 1)
        sn = np.where(np.cos(n * t) < 0, -1, 1)
        return abs(float((sm * sn).mean())) * math.pi
    raise ValueError(f"kind must be 'legendre' or 'chebyshev': {kind}")
