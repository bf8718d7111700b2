"""Figures for oracle witnesses, rendered off-screen to image files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .oracle import INF, TupleWitness  # noqa: E402


def _finite(points):
    pts = [complex(p) for p in points if p is not INF]
    return [p.real for p in pts], [p.imag for p in pts], sum(p is INF for p in points)


def plot_witness(w: TupleWitness, path: str | Path, title: str = "") -> Path:
    """Two panels: the forward fiber of ``x1`` and the overlaid back-fibers.

    Points at infinity cannot be drawn in the plane, so they are counted in
    the panel titles instead.
    """
    path = Path(path)
    fig, (ax_f, ax_b) = plt.subplots(1, 2, figsize=(9, 4.2))
    fx, fy, f_inf = _finite(w.forward.points)
    ax_f.scatter(fx, fy, marker="o", color="tab:blue", label="forward fiber")
    ax_f.set_title(f"forward fiber ({f_inf} at infinity)")
    for k, fb in enumerate(w.back):
        bx, by, _ = _finite(fb.points)
        ax_b.scatter(bx, by, s=90 - 60 * k / max(len(w.back), 1), facecolors="none",
                     edgecolors=plt.cm.viridis(k / max(len(w.back) - 1, 1)), label=f"back {k}")
    if w.x1 is not INF:
        ax_b.scatter([w.x1.real], [w.x1.imag], marker="x", color="tab:red", label="x1")
    b_inf = sum(p is INF for p in w.back[0].points) if w.back else 0
    ax_b.set_title(f"back-fibers ({b_inf} at infinity)")
    for ax in (ax_f, ax_b):
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.axhline(0, color="0.85", lw=0.8, zorder=0)
        ax.axvline(0, color="0.85", lw=0.8, zorder=0)
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend(fontsize=7, loc="best")
    verdict = "pass" if w.verdict else "FAIL"
    head = f"{title}  " if title else ""
    fig.suptitle(f"{head}{w.side}-side witness: {verdict}, worst mismatch {w.max_mismatch:.2e}")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_mismatches(names: Sequence[str], values: Sequence[float], tol: float, path: str | Path) -> Path:
    """Bar chart of worst chordal mismatch per case, on a log scale, with the tolerance line."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(names) + 2), 3.6))
    floor = 1e-17
    ax.bar(list(names), [max(v, floor) for v in values], color="tab:blue")
    ax.axhline(tol, color="tab:red", ls="--", label=f"tol = {tol:g}")
    ax.set_yscale("log")
    ax.set_ylabel("worst chordal mismatch")
    ax.legend(fontsize=8)
    plt.setp(ax.get_xticklabels(), rotation=30, ha="right")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
