"""Figure rendering for the CLI report paths.  Figures go to files only."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analytic import arcsine_pdf  # noqa: E402


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_density(centers, empirical, bins: int, path, title: str = "") -> None:
    """Histogram of occupation fractions over the arcsine density."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(centers, empirical, width=1.0 / bins, color="0.75", edgecolor="0.4", label="simulated")
    x = np.linspace(0.002, 0.998, 500)
    ax.plot(x, [arcsine_pdf(v) for v in x], color="C3", lw=1.5, label=r"$1/(\pi\sqrt{x(1-x)})$")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, max(4.0, 1.1 * float(np.max(empirical))))
    ax.set_xlabel("fraction of time above zero")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(frameon=False)
    _save(fig, path)


def plot_moments(orders, values, path, reference=None, mu: float = 0.0) -> None:
    """Moment sequence against m, with the driftless arcsine moments for reference."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(orders, values, "o-", color="C0", label=f"ballot sum, mu={mu:g}")
    if reference is not None:
        ax.plot(orders, reference, "s--", color="C3", mfc="none", label=r"$2^{-2m}\binom{2m}{m}$")
    ax.set_xlabel("m")
    ax.set_ylabel("m-th moment")
    ax.legend(frameon=False)
    _save(fig, path)
