"""Matplotlib figures emitted by the CLI report paths (PNG alongside CSV/JSON)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .composite_shifts import ShiftReport
from .orthopoly import SignGram
from .prime_estimates import PrimeEstimateReport
from .tables import SigmaTable


def sigma_heatmap(table: SigmaTable, path: str | Path) -> None:
    """Correlation magnitudes over all frequency pairs, dark = large."""
    n = table.n
    fig, ax = plt.subplots(figsize=(6.4, 6.0))
    im = ax.imshow(
        table.matrix(),
        cmap="gray_r",
        origin="upper",
        extent=(1, n - 1, n - 1, 1),
        vmin=0,
        vmax=n,
        interpolation="nearest",
    )
    ax.set_xlabel("b")
    ax.set_ylabel("a")
    ax.set_title(f"sign-correlation magnitudes, n = {n}")
    fig.colorbar(im, ax=ax, label="sigma")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def gram_heatmap(gram: SignGram, path: str | Path) -> None:
    """Sign-Gram heatmap, dark = large."""
    fig, ax = plt.subplots(figsize=(6.4, 6.0))
    im = ax.imshow(
        gram.values,
        cmap="gray_r",
        origin="upper",
        vmin=0,
        vmax=gram.ceiling,
        interpolation="nearest",
    )
    ax.set_xlabel("n")
    ax.set_ylabel("m")
    ax.set_title(f"{gram.kind} sign Gram, N = {gram.size}")
    fig.colorbar(im, ax=ax)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def estimate_profile(reports: list[PrimeEstimateReport], path: str | Path) -> None:
    """Sigma against class distance with the main-term curve overlaid."""
    if not reports:
        raise ValueError("no reports to plot")
    n = reports[0].n
    ds = np.array([r.d for r in reports])
    sigmas = np.array([r.sigma for r in reports])
    mains = np.array([float(r.est1_main) for r in reports])
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(ds, sigmas, "o", label="sigma(1, d)")
    ax.plot(ds, mains, "-", color="tab:orange", label="(n/d) [d odd]")
    ax.set_xlabel("class distance d")
    ax.set_ylabel("value")
    ax.set_title(f"main-term tracking, n = {n}")
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def class_residuals(reports: list[ShiftReport], path: str | Path) -> None:
    """Class sums against the quarter-arc predictions for shift queries."""
    if not reports:
        raise ValueError("no reports to plot")
    rep = reports[0]
    q = rep.record.query
    idx = np.array([c.i for c in rep.classes])
    actual = np.array([c.sigma_i for c in rep.classes])
    predicted = np.array([float(c.predicted) for c in rep.classes])
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    width = 0.4
    ax.bar(idx - width / 2, actual, width, label="class sum")
    ax.bar(idx + width / 2, predicted, width, label="predicted")
    ax.set_xlabel("class i")
    ax.set_ylabel("value")
    ax.set_title(f"shift class sums, n = {q.n}, p = {q.p}, a = {q.a}, c = {q.c}")
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
