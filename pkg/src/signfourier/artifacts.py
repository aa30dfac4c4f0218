"""Deterministic artifact output: binary PGM images and JSON/CSV reports.

The PGM path is byte-exact by construction: integer pixel math, explicit
half-away-from-zero rounding, and a fixed header layout, so golden-file
hashes are stable across platforms and thread counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, is_dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .orthopoly import SignGram
from .tables import EmptyTable, SigmaTable


class IoFailure(RuntimeError):
    """Failed to write an artifact."""


@dataclass(frozen=True)
class RenderSpec:
    """Pixel mapping for a value matrix with ceiling M.

    binary: dark iff v >= tau * M.  grayscale: intensity min(1, (v/M)^gamma).
    invert=True renders large values dark (the default).
    """

    tau: float = 0.05
    gamma: float = 1.0
    mode: str = "binary"
    invert: bool = True

    def __post_init__(self) -> None:
        if not 0 < self.tau <= 1:
            raise ValueError(f"tau must be in (0, 1]: got {self.tau}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0: got {self.gamma}")
        if self.mode not in ("binary", "grayscale"):
            raise ValueError(f"mode must be binary or grayscale: {self.mode}")


def pixel_source(obj) -> tuple[np.ndarray, float]:
    """(value matrix, ceiling M) for a renderable object."""
    if isinstance(obj, SigmaTable):
        return obj.matrix().astype(float), float(obj.n)
    if isinstance(obj, SignGram):
        return obj.values.astype(float), obj.ceiling
    raise TypeError(f"cannot render {type(obj).__name__}")


def render_pgm(obj, spec: RenderSpec | None = None) -> bytes:
    """Binary PGM (P5, maxval 255) bytes for a table or gram."""
    spec = spec or RenderSpec()
    mat, ceiling = pixel_source(obj)
    if mat.size == 0:
        raise EmptyTable("nothing to render")
    if spec.mode == "binary":
        dark = mat >= spec.tau * ceiling
        pix = np.where(dark, 0, 255) if spec.invert else np.where(dark, 255, 0)
        pix = pix.astype(np.uint8)
    else:
        frac = np.minimum(1.0, (mat / ceiling) ** spec.gamma)
        level = np.floor(255.0 * frac + 0.5)  # half away from zero (frac >= 0)
        pix = (255.0 - level if spec.invert else level).astype(np.uint8)
    h, w = pix.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + pix.tobytes()


def write_pgm(obj, path: str | Path, spec: RenderSpec | None = None) -> bytes:
    data = render_pgm(obj, spec)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return data


def round12(x: float) -> float:
    """Snap to 12 significant digits (the report serialization precision)."""
    if not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def _normalize(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return _normalize(obj.to_dict())
        return _normalize(vars(obj))
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, Fraction):
        return round12(float(obj))
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return round12(float(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_report(obj, fmt: str, path: str | Path) -> None:
    """Serialize a report to JSON or CSV with fixed numeric precision.

    JSON accepts any nesting of dicts/lists/dataclasses; CSV needs a list
    of flat records.  Integers are exact; reals get 12 significant digits.
    """
    data = _normalize(obj)
    if fmt == "json":
        text = json.dumps(data, indent=2) + "\n"
    elif fmt == "csv":
        if not isinstance(data, list) or not data or not all(
            isinstance(row, dict) for row in data
        ):
            raise ValueError("CSV reports need a non-empty list of flat records")
        keys = list(data[0].keys())
        lines = [",".join(keys)]
        for row in data:
            lines.append(",".join(_format_cell(row.get(k, "")) for k in keys))
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"format must be json or csv: {fmt}")
    try:
        Path(path).write_text(text, newline="\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
