"""Correlation of a row with its fractionally shifted partner at composite n.

For a prime p | n, a unit a, and 0 < |c| <= p-1, the partner frequency
b = a + c n/p shifts the cosine argument of slot j by the class phase
2 pi i / p, where i = c j mod p.  On the class S_i = {j in [1, n] :
c j = i (mod p)} the correlation term is

    sign(cos theta_j) * sign(cos(theta_j + 2 pi i/p)),  theta_j = 2 pi a j / n,

and the angle multiset of each class is exactly equispaced with gap p/n.
The same-sign region of the circle is a union of two arcs of total measure
|1 - 2i/p|, so the class sum Sigma_i tracks (n/p) times the signed density

    2 * measure - 1 = (1 - 4i/p)  for 2i <= p,  (4i/p - 3)  otherwise,

and S = sum_i Sigma_i = n/p^2 + O(p).  All circle geometry is exact
rational; the class sums are exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .residues import is_prime, mod_inverse
from .signs import _negative_mask

# Envelope constants measured once over the fixed verification grid and
# frozen: ||S| - n/p^2| <= SHIFT_ENVELOPE_C * p (measured max ratio 0.98)
# and |Sigma_i - predicted_i| <= CLASS_RESIDUAL_R (measured max 1.85).
SHIFT_ENVELOPE_C = 1
CLASS_RESIDUAL_R = 2
VERIFICATION_GRID = {105: (3, 5, 7), 300: (3, 5), 500: (5,), 1001: (7, 11, 13)}
UNITS_PER_MODULUS = 8


class InvalidQuery(ValueError):
    """Shift query outside the supported parameter set."""


class EvenPrimeUnsupported(ValueError):
    """p = 2 has no quarter-arc class geometry; only raw sums exist."""


@dataclass(frozen=True)
class ShiftQuery:
    """A shifted-pair correlation query: frequencies a and a + c n/p."""

    n: int
    p: int
    a: int
    c: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidQuery(f"modulus must be >= 2: got {self.n}")
        if not is_prime(self.p):
            raise InvalidQuery(f"p must be prime: got {self.p}")
        if self.n % self.p != 0 or self.p == self.n:
            raise InvalidQuery(f"p must properly divide n: p={self.p} n={self.n}")
        if math.gcd(self.a, self.n) != 1:
            raise InvalidQuery(f"a must be a unit mod n: a={self.a} n={self.n}")
        if not 0 < abs(self.c) <= self.p - 1:
            raise InvalidQuery(f"need 0 < |c| <= p-1: c={self.c} p={self.p}")

    @property
    def b(self) -> int:
        return (self.a + self.c * (self.n // self.p)) % self.n

    @property
    def main_term(self) -> Fraction:
        return Fraction(self.n, self.p * self.p)


def _sign_row(a: int, n: int) -> np.ndarray:
    return np.where(_negative_mask(a, n), -1, 1).astype(np.int8)


@dataclass(frozen=True)
class ShiftRecord:
    """Raw result of one shift query with its main-term residual."""

    query: ShiftQuery
    s: int

    @property
    def residual(self) -> Fraction:
        return abs(self.s) - self.query.main_term


def sigma_shift(query: ShiftQuery) -> ShiftRecord:
    """Signed S = sum_{j=1}^n s_{aj} s_{bj} for the shifted pair."""
    sa = _sign_row(query.a, query.n)
    sb = _sign_row(query.b, query.n)
    return ShiftRecord(query=query, s=int((sa * sb).sum(dtype=np.int64)))


def class_partition(n: int, p: int, c: int) -> list[np.ndarray]:
    """S_i = {j in [1, n] : c j = i (mod p)} for i = 0..p-1.

    Each class is the arithmetic progression e_i, e_i + p, ... with
    e_i = c^{-1} i mod p mapped into [1, p]; all have exactly n/p members.
    """
    if not is_prime(p) or n % p != 0 or p == n:
        raise InvalidQuery(f"p must be a prime proper divisor of n: p={p} n={n}")
    if c % p == 0:
        raise InvalidQuery(f"c must be nonzero mod p: c={c}")
    inv_c = mod_inverse(c, p)
    out = []
    for i in range(p):
        e = i * inv_c % p
        if e == 0:
            e = p
        out.append(np.arange(e, n + 1, p, dtype=np.int64))
    return out


def predicted_class_sum(i: int, p: int, n: int) -> Fraction:
    """(n/p) times the signed same-sign density of the class-i phase."""
    if not 0 <= i < p:
        raise InvalidQuery(f"class index must be in [0, p): got {i}")
    if 2 * i <= p:
        return Fraction(n, p) * (1 - Fraction(4 * i, p))
    return Fraction(n, p) * (Fraction(4 * i, p) - 3)


@dataclass(frozen=True)
class ResidueClassReport:
    """Exact class sum against its predicted value."""

    i: int
    class_size: int
    sigma_i: int
    predicted: Fraction

    @property
    def residual(self) -> Fraction:
        return self.sigma_i - self.predicted

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "class_size": self.class_size,
            "sigma_i": self.sigma_i,
            "predicted": float(self.predicted),
            "residual": float(self.residual),
        }


def class_sum(query: ShiftQuery, i: int) -> ResidueClassReport:
    """Sigma_i over S_i, with the quarter-arc prediction (odd p only)."""
    if query.p == 2:
        raise EvenPrimeUnsupported("class geometry needs odd p; p=2 has raw sums only")
    classes = class_partition(query.n, query.p, query.c)
    if not 0 <= i < query.p:
        raise InvalidQuery(f"class index must be in [0, {query.p}): got {i}")
    js = classes[i]
    sa = _sign_row(query.a, query.n)
    sb = _sign_row(query.b, query.n)
    sig = int((sa[js - 1] * sb[js - 1]).sum(dtype=np.int64))
    return ResidueClassReport(
        i=i,
        class_size=len(js),
        sigma_i=sig,
        predicted=predicted_class_sum(i, query.p, query.n),
    )


@dataclass(frozen=True)
class EquispacedReport:
    """Geometry of one class: anchor, offset, and the exact gap p/n."""

    i: int
    anchor: int
    offset: Fraction
    gap: Fraction
    equispaced: bool


def equispaced_check(query: ShiftQuery, i: int) -> EquispacedReport:
    """Verify the angle multiset of S_i is equispaced with gap exactly p/n."""
    classes = class_partition(query.n, query.p, query.c)
    if not 0 <= i < query.p:
        raise InvalidQuery(f"class index must be in [0, {query.p}): got {i}")
    js = classes[i]
    res = np.sort(query.a * js % query.n)
    ok = True
    if len(res) > 1:
        ok = bool((np.diff(res) == query.p).all())
        ok = ok and int(res[0]) + query.n - int(res[-1]) == query.p
    anchor = int(js[0])
    return EquispacedReport(
        i=i,
        anchor=anchor,
        offset=Fraction(query.a * anchor % query.n, query.n),
        gap=Fraction(query.p, query.n),
        equispaced=ok,
    )


def _cos_sign_rational(x: Fraction) -> int:
    f = x % 1
    return 1 if (f <= Fraction(1, 4) or f >= Fraction(3, 4)) else -1


@dataclass(frozen=True)
class CircleSignPartition:
    """Exact arc decomposition of {x : sign agreement under a phase shift}.

    pieces[j] spans [breakpoints[j], breakpoints[j+1]) with breakpoints[0]
    = 0 and an implicit wrap at 1; same_sign[j] says whether
    sign(cos 2 pi x) = sign(cos 2 pi (x + shift)) there.
    """

    shift: Fraction
    breakpoints: list[Fraction]
    same_sign: list[bool]

    @property
    def same_sign_measure(self) -> Fraction:
        spans = self.breakpoints[1:] + [Fraction(1)]
        return sum(
            (hi - lo for lo, hi, s in zip(self.breakpoints, spans, self.same_sign) if s),
            Fraction(0),
        )

    @property
    def signed_density(self) -> Fraction:
        return 2 * self.same_sign_measure - 1


def same_sign_arcs(i: int, p: int) -> CircleSignPartition:
    """Exact same-sign arcs for the class phase shift i/p.

    The total same-sign measure is |1 - 2i/p| and the signed density
    matches predicted_class_sum / (n/p).
    """
    if p < 2:
        raise InvalidQuery(f"p must be >= 2: got {p}")
    if not 0 <= i < p:
        raise InvalidQuery(f"class index must be in [0, p): got {i}")
    f = Fraction(i, p)
    cuts = {
        Fraction(1, 4) % 1,
        Fraction(3, 4) % 1,
        (Fraction(1, 4) - f) % 1,
        (Fraction(3, 4) - f) % 1,
    }
    cuts.discard(Fraction(0))
    bps = [Fraction(0)] + sorted(cuts)
    spans = bps[1:] + [Fraction(1)]
    flags = []
    for lo, hi in zip(bps, spans):
        mid = (lo + hi) / 2
        flags.append(_cos_sign_rational(mid) == _cos_sign_rational(mid + f))
    return CircleSignPartition(shift=f, breakpoints=bps, same_sign=flags)


@dataclass
class ShiftReport:
    """One query with its class decomposition (empty classes for p = 2)."""

    record: ShiftRecord
    classes: list[ResidueClassReport]

    def to_dict(self) -> dict:
        q = self.record.query
        return {
            "n": q.n,
            "p": q.p,
            "a": q.a,
            "c": q.c,
            "S": self.record.s,
            "main_term": float(q.main_term),
            "residual": float(self.record.residual),
            "classes": [c.to_dict() for c in self.classes],
        }


def analyze_shift(query: ShiftQuery) -> ShiftReport:
    """Raw sum plus per-class sums; the partition identity is re-checked."""
    record = sigma_shift(query)
    classes: list[ResidueClassReport] = []
    if query.p != 2:
        sa = _sign_row(query.a, query.n)
        sb = _sign_row(query.b, query.n)
        for i, js in enumerate(class_partition(query.n, query.p, query.c)):
            classes.append(
                ResidueClassReport(
                    i=i,
                    class_size=len(js),
                    sigma_i=int((sa[js - 1] * sb[js - 1]).sum(dtype=np.int64)),
                    predicted=predicted_class_sum(i, query.p, query.n),
                )
            )
        if sum(c.sigma_i for c in classes) != record.s:
            raise AssertionError("class sums must partition S exactly")
    return ShiftReport(record=record, classes=classes)


def sample_units(n: int, count: int = UNITS_PER_MODULUS) -> list[int]:
    """Deterministic spread of `count` units mod n (first unit >= 1 + k n/count)."""
    out: list[int] = []
    k = 0
    while len(out) < count:
        cand = 1 + (k * n) // count
        while math.gcd(cand, n) != 1:
            cand += 1
        if cand % n not in [u % n for u in out]:
            out.append(cand)
        k += 1
        if k > 8 * count:
            raise InvalidQuery(f"cannot find {count} distinct units mod {n}")
    return out


def grid_queries(n: int, p: int) -> list[ShiftQuery]:
    """The fixed verification sample for one (n, p): 8 units, all valid c."""
    cs = [c for c in range(-(p - 1), p) if c != 0]
    return [ShiftQuery(n=n, p=p, a=a, c=c) for a in sample_units(n) for c in cs]


def verify_grid(
    n: int, p: int
) -> tuple[list[ShiftReport], list[str], Fraction, Fraction]:
    """Run the sample for (n, p) and check both pinned envelopes.

    Returns (reports, violations, worst main-term ratio |residual|/p,
    worst class residual).
    """
    reports = [analyze_shift(q) for q in grid_queries(n, p)]
    violations: list[str] = []
    worst_c = Fraction(0)
    worst_r = Fraction(0)
    for rep in reports:
        q = rep.record.query
        ratio = abs(rep.record.residual) / q.p
        worst_c = max(worst_c, ratio)
        if abs(rep.record.residual) > SHIFT_ENVELOPE_C * q.p:
            violations.append(
                f"main envelope: n={q.n} p={q.p} a={q.a} c={q.c} S={rep.record.s}"
            )
        for crep in rep.classes:
            worst_r = max(worst_r, abs(crep.residual))
            if abs(crep.residual) > CLASS_RESIDUAL_R:
                violations.append(
                    f"class residual: n={q.n} p={q.p} a={q.a} c={q.c} i={crep.i}"
                )
    return reports, violations, worst_c, worst_r
