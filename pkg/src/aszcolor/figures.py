"""Figure rendering for bound tables and sweep reports.

File output only, on the Agg backend; nothing here opens a window.  The
CLI writes these next to its delimited output when an output directory
is requested.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import BoundTable, closed_form_exponent, exponent_ratio, mv_exponent
from .generators import SweepReport

_FIGSIZE = (7.0, 4.4)
_DPI = 140


def _save(fig, out_dir: str, name: str) -> str:
    path = os.path.join(out_dir, name)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def render_bounds_figures(rec4: BoundTable, rec2: BoundTable, out_dir: str) -> list[str]:
    """Growth curves, exponent envelopes, and the MV ratio, as PNG files.

    Returns the written paths.  The ratio figure needs k >= 2 and is
    skipped for tiny tables.
    """
    os.makedirs(out_dir, exist_ok=True)
    k_max = min(rec4.k_max, rec2.k_max)
    ks = list(range(1, k_max + 1))
    written: list[str] = []
    if not ks:
        return written

    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.plot(ks, [math.log2(rec4[k]) for k in ks], label="log2 rec4[k]")
    ax.plot(ks, [math.log2(rec2[k]) for k in ks], label="log2 rec2[k]")
    ax.plot(ks, ks, linestyle="--", label="k  (trivial 2^k)")
    ax.set_xscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("log2 of bound")
    ax.set_title("Recurrence bound growth")
    ax.legend()
    ax.grid(True, alpha=0.3)
    written.append(_save(fig, out_dir, "bounds_growth.png"))

    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.plot(ks, [math.log2(rec4[k]) for k in ks], label="log2 rec4[k]")
    ax.plot(ks, [closed_form_exponent(k) for k in ks], label="closed form (log2 4k)^2/4")
    ax.plot(ks, [mv_exponent(k) for k in ks], label="Mubayi-Vishwanathan")
    ax.set_xscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("exponent")
    ax.set_title("Exponent envelopes")
    ax.legend()
    ax.grid(True, alpha=0.3)
    written.append(_save(fig, out_dir, "bounds_exponents.png"))

    if k_max >= 2:
        rks = list(range(2, k_max + 1))
        fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
        ax.plot(rks, [exponent_ratio(k) for k in rks], label="closed form / MV")
        ax.axhline(0.5, linestyle="--", color="gray", label="limit 1/2")
        ax.set_xscale("log")
        ax.set_xlabel("k")
        ax.set_ylabel("ratio")
        ax.set_title("Exponent ratio against Mubayi-Vishwanathan")
        ax.legend()
        ax.grid(True, alpha=0.3)
        written.append(_save(fig, out_dir, "bounds_mv_ratio.png"))
    return written


def render_sweep_figure(report: SweepReport, out_dir: str) -> str:
    """Histogram of chi - bp over the sweep, marking the conjectured wall at 1."""
    os.makedirs(out_dir, exist_ok=True)
    gaps = sorted(report.gap_counts)
    counts = [report.gap_counts[g] for g in gaps]
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.bar(gaps, counts, color="#4878b0")
    ax.axvline(1.5, linestyle="--", color="crimson", label="conjectured wall (gap <= 1)")
    ax.set_yscale("log")
    ax.set_xlabel("chi - bp")
    ax.set_ylabel("labeled graphs (log scale)")
    ax.set_title(f"Gap histogram, all graphs with n <= {report.n_max}")
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)
    return _save(fig, out_dir, "sweep_gap_histogram.png")
