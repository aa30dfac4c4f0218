"""Tables of sigma(a, b) over all frequency pairs of one modulus.

Two storage modes:

* class mode (prime n): the signed correlation satisfies
  T(a, b) = T(1, a^{-1} b mod n) exactly, so one row indexed by the class
  representative c = a^{-1} b covers every pair.  n-1 entries.
* dense mode (any n): the full (n-1) x (n-1) sigma matrix.

Builders accept a thread count ("auto", an int, or None for single) and
produce byte-identical results for every thread count: work is chunked,
each chunk writes into its own slice, and assembly is by index.  The env
var SIGNFOURIER_THREADS overrides the requested count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .residues import Modulus, mod_inverse
from .signs import build_sign_vector, correlation

THREADS_ENV_VAR = "SIGNFOURIER_THREADS"


class CompositeModulus(ValueError):
    """Class-mode table requested for a composite modulus."""


class ZeroFrequency(ValueError):
    """Frequency a = 0 (mod n) where a unit is required."""


class EmptyTable(ValueError):
    """Table with no usable entries."""


def resolve_threads(threads: int | str | None) -> int:
    """Effective worker count; SIGNFOURIER_THREADS overrides the argument."""
    env = os.environ.get(THREADS_ENV_VAR)
    if env is not None and env.strip():
        threads = env.strip()
    if threads is None:
        return 1
    if isinstance(threads, str):
        if threads.lower() == "auto":
            return os.cpu_count() or 1
        threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be >= 1: got {threads}")
    return threads


@dataclass
class SigmaTable:
    """Sigma values for one modulus, in class or dense mode.

    class mode: values has shape (n,), index c in [1, n-1] (slot 0 unused).
    dense mode: values has shape (n-1, n-1), index (a-1, b-1).
    """

    modulus: Modulus
    mode: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.mode not in ("class", "dense"):
            raise ValueError(f"mode must be 'class' or 'dense': {self.mode}")
        if self.mode == "class" and not self.modulus.prime:
            raise CompositeModulus(f"class table needs prime n: {self.modulus.n}")
        if self.values.size == 0:
            raise EmptyTable("no entries")

    @property
    def n(self) -> int:
        return self.modulus.n

    def sigma(self, a: int, b: int) -> int:
        """Sigma(a, b) by lookup (class mode reduces through a^{-1} b)."""
        n = self.n
        a %= n
        b %= n
        if self.mode == "dense":
            if a == 0 or b == 0:
                raise ZeroFrequency("dense table indexes a, b in [1, n-1]")
            return int(self.values[a - 1, b - 1])
        if a == 0 or b == 0:
            raise ZeroFrequency("class reduction needs a, b nonzero mod n")
        return int(self.values[mod_inverse(a, n) * b % n])

    def matrix(self) -> np.ndarray:
        """Full (n-1) x (n-1) sigma matrix (materialized for class mode)."""
        if self.mode == "dense":
            return self.values
        n = self.n
        cols = np.arange(1, n, dtype=np.int64)
        out = np.empty((n - 1, n - 1), dtype=self.values.dtype)
        for a in range(1, n):
            out[a - 1] = self.values[mod_inverse(a, n) * cols % n]
        return out

    def to_csv(self, path: str | Path) -> None:
        lines = ["n,mode", f"{self.n},{self.mode}"]
        if self.mode == "class":
            lines.extend(f"{c},{int(self.values[c])}" for c in range(1, self.n))
        else:
            for a in range(1, self.n):
                row = self.values[a - 1]
                lines.extend(f"{a},{b},{int(row[b - 1])}" for b in range(1, self.n))
        Path(path).write_text("\n".join(lines) + "\n", newline="\n")

    @classmethod
    def from_csv(cls, path: str | Path) -> "SigmaTable":
        text = Path(path).read_text()
        lines = [ln for ln in text.split("\n") if ln]
        if len(lines) < 3 or lines[0] != "n,mode":
            raise EmptyTable(f"not a sigma table CSV: {path}")
        n_str, mode = lines[1].split(",")
        n = int(n_str)
        mod = Modulus.of(n)
        if mode == "class":
            values = np.zeros(n, dtype=np.int64)
            for ln in lines[2:]:
                c, s = ln.split(",")
                values[int(c)] = int(s)
        elif mode == "dense":
            values = np.zeros((n - 1, n - 1), dtype=np.int64)
            for ln in lines[2:]:
                a, b, s = ln.split(",")
                values[int(a) - 1, int(b) - 1] = int(s)
        else:
            raise EmptyTable(f"unknown table mode {mode!r}")
        return cls(modulus=mod, mode=mode, values=values)


def _chunk_ranges(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    span = hi - lo
    parts = max(1, min(parts, span))
    step = -(-span // parts)
    return [(s, min(s + step, hi)) for s in range(lo, hi, step)]


def build_class_table(n: int, threads: int | str | None = None) -> SigmaTable:
    """Class-mode table for prime n: values[c] = sigma(1, c), c = 1..n-1."""
    mod = Modulus.of(n)
    if not mod.prime:
        raise CompositeModulus(f"class table needs prime n: {n}")
    base = build_sign_vector(1, mod)
    values = np.zeros(n, dtype=np.int64)

    def fill(rng: tuple[int, int]) -> None:
        for c in range(*rng):
            values[c] = abs(correlation(base, build_sign_vector(c, mod)))

    workers = resolve_threads(threads)
    chunks = _chunk_ranges(1, n, workers * 4)
    if workers == 1:
        for ch in chunks:
            fill(ch)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, chunks))
    return SigmaTable(modulus=mod, mode="class", values=values)


def build_dense_table(n: int, threads: int | str | None = None) -> SigmaTable:
    """Dense (n-1) x (n-1) sigma matrix for any modulus."""
    mod = Modulus.of(n)
    vectors = [build_sign_vector(a, mod) for a in range(1, n)]
    values = np.zeros((n - 1, n - 1), dtype=np.int64)

    def fill(rng: tuple[int, int]) -> None:
        for a in range(*rng):
            u = vectors[a - 1]
            row = values[a - 1]
            for b in range(1, n):
                row[b - 1] = abs(correlation(u, vectors[b - 1]))

    workers = resolve_threads(threads)
    chunks = _chunk_ranges(1, n, workers * 4)
    if workers == 1:
        for ch in chunks:
            fill(ch)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, chunks))
    return SigmaTable(modulus=mod, mode="dense", values=values)


def build_table(n: int, mode: str | None = None, threads: int | str | None = None) -> SigmaTable:
    """Class table when n is prime (unless dense is forced), else dense."""
    mod = Modulus.of(n)
    if mode is None:
        mode = "class" if mod.prime else "dense"
    if mode == "class":
        return build_class_table(n, threads)
    if mode == "dense":
        return build_dense_table(n, threads)
    raise ValueError(f"unknown mode {mode!r}")


def sigma_via_class(table: SigmaTable, a: int, b: int) -> int:
    """Sigma(a, b) through the class reduction of a prime-modulus table."""
    if table.mode != "class":
        raise CompositeModulus("sigma_via_class needs a class-mode table")
    return table.sigma(a, b)


def threshold_pattern(table: SigmaTable, tau: float) -> list[tuple[int, int, int]]:
    """All (a, b, sigma) with sigma >= tau * n, sorted lexicographically."""
    if not 0 < tau <= 1:
        raise ValueError(f"tau must be in (0, 1]: got {tau}")
    n = table.n
    cut = tau * n
    out: list[tuple[int, int, int]] = []
    cols = np.arange(1, n, dtype=np.int64)
    for a in range(1, n):
        if table.mode == "class":
            row = table.values[mod_inverse(a, n) * cols % n]
        else:
            row = table.values[a - 1]
        for b in np.nonzero(row >= cut)[0]:
            out.append((a, int(b) + 1, int(row[b])))
    return out
