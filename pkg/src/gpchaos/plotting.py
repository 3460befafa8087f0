"""Matplotlib renderings written next to the CSV outputs."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import BoundaryNorm, ListedColormap  # noqa: E402

from .regimes import Regime  # noqa: E402

REGIME_COLORS = ("#4c72b0", "#55a868", "#dd8452", "#c44e52")

_RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "lines.linewidth": 0.8,
    "savefig.dpi": 150,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_xy(x, y, path, xlabel, ylabel, title=None, points=False):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.4))
        if points:
            ax.plot(x, y, ",", color="k")
        else:
            ax.plot(x, y, color="k")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def draw_indicators(axes, row):
    """Fill four axes with portrait, section, potential and wavefunction of one parameter point.

    ``row`` maps 'portrait' -> (N, 2), 'section' -> (M, 2), 'potential' -> (K, 2),
    'wavefunction' -> (L, 2) arrays and 'label' -> str.
    """
    ax0, ax1, ax2, ax3 = axes
    p = row["portrait"]
    ax0.plot(p[:, 0], p[:, 1], color="k", lw=0.3)
    ax0.set_xlabel(r"$\phi$")
    ax0.set_ylabel(r"$\phi'$")
    s = row["section"]
    ax1.plot(s[:, 0], s[:, 1], ".", ms=1.5, color="k")
    ax1.set_xlabel(r"$\phi$")
    ax1.set_ylabel(r"$\phi'$")
    v = row["potential"]
    ax2.plot(v[:, 0], v[:, 1], color="k")
    ax2.set_xlabel("$x$")
    ax2.set_ylabel("$V(x)$")
    w = row["wavefunction"]
    ax3.plot(w[:, 0], w[:, 1], color="k", lw=0.3)
    ax3.set_xlabel("$x$")
    ax3.set_ylabel(r"$\phi(x)$")
    ax0.set_title(row.get("label", ""), loc="left")


def plot_indicator_panels(rows, path):
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(len(rows), 4, figsize=(11, 2.4 * len(rows)), squeeze=False)
        for ax_row, row in zip(axes, rows):
            draw_indicators(ax_row, row)
        return _save(fig, path)


def plot_regime_map(rmap, path):
    cmap = ListedColormap(REGIME_COLORS)
    norm = BoundaryNorm(np.arange(-0.5, 4.5), cmap.N)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.8, 3.8))
        # regime array is (V, F); the figures put V on the abscissa
        mesh = ax.pcolormesh(rmap.v_axis, rmap.f_axis, rmap.regime.T, cmap=cmap, norm=norm,
                             shading="nearest")
        cb = fig.colorbar(mesh, ax=ax, ticks=range(4))
        cb.ax.set_yticklabels([r.label for r in Regime])
        ax.set_xlabel("$V$")
        ax.set_ylabel("$F$")
        ax.set_title(f"case {rmap.case_label}")
        return _save(fig, path)


def plot_lyapunov_history(result, path, title=None):
    return plot_xy(result.x_renorm, result.history, path, "$x$", r"running $\lambda_{max}$", title)


def plot_lyapunov_curves(curves, path):
    """``curves`` maps case label -> (F values, exponents)."""
    styles = {"A": ("g", "-"), "B": ("r", "--"), "C": ("b", ":"), "D": ("k", "-.")}
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.8, 3.4))
        for label, (f, lam) in curves.items():
            color, ls = styles.get(label, ("k", "-"))
            ax.plot(f, lam, color=color, ls=ls, label=f"case {label}")
        ax.set_xlabel("$F$")
        ax.set_ylabel(r"$\lambda_{max}$")
        ax.legend()
        return _save(fig, path)
