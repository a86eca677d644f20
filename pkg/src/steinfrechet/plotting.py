"""Matplotlib figures for sweeps and the tabulated reproductions.

Figures are written with the Agg backend and fixed SVG metadata so that
repeated runs produce identical files.
"""

from contextlib import contextmanager

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "figure.figsize": (4.8, 3.4),
    "svg.hashsalt": "steinfrechet",
    "svg.fonttype": "path",
}
_METADATA = {"svg": {"Date": None, "Creator": None}, "pdf": {"CreationDate": None, "Creator": None},
             "png": {"Software": None}}


@contextmanager
def style():
    with matplotlib.rc_context(STYLE):
        yield


def _save(fig, path):
    ext = str(path).rsplit(".", 1)[-1].lower()
    fig.savefig(path, metadata=_METADATA.get(ext), bbox_inches="tight")
    plt.close(fig)
    return path


def _numeric(rows, key):
    xs, ys = [], []
    for r in rows:
        v = r.get(key)
        if isinstance(v, float) and np.isfinite(v) and v > 0:
            xs.append(r["n"])
            ys.append(v)
    return np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)


def plot_sweep(rows, path, title=None):
    """Log-log plot of the delta column, with bounds and oracle columns when present."""
    with style():
        fig, ax = plt.subplots()
        for key, mark, label in (("delta", "o-", r"$\Delta$"), ("delta_w", "s-", r"$\Delta_w$"),
                                 ("kol_oracle", "^--", "Kol (exact)"),
                                 ("tv_oracle", "v--", "TV (exact)"),
                                 ("wass_oracle", "d--", "Wass (exact)")):
            x, y = _numeric(rows, key)
            if len(x):
                ax.loglog(x, y, mark, label=label)
        ax.set_xlabel("$n$")
        ax.set_ylabel("value")
        if title:
            ax.set_title(title)
        ax.legend()
        return _save(fig, path)


def plot_figure1(rows, path):
    """Two panels: ``n^{1/τ}Δ`` and ``n^{1/τ}Δ_w`` against α, one curve per τ."""
    with style():
        fig, axes = plt.subplots(1, 2, figsize=(8.0, 3.2))
        taus = sorted({r["tau"] for r in rows})
        for tau in taus:
            sel = [r for r in rows if r["tau"] == tau]
            for ax, key in zip(axes, ("scaled_delta", "scaled_delta_w")):
                pts = [(r["alpha"], r[key]) for r in sel if isinstance(r.get(key), float)]
                if pts:
                    a, v = zip(*pts)
                    ax.plot(a, v, "-", label=rf"$\tau={tau:g}$")
        n = rows[0]["n"] if rows else None
        axes[0].set_ylabel(r"$n^{1/\tau}\,\Delta$")
        axes[1].set_ylabel(r"$n^{1/\tau}\,\Delta_w$")
        for ax in axes:
            ax.set_xlabel(r"$\alpha$")
            ax.legend()
            if n:
                ax.set_title(f"Burr XII, n = {n:g}")
        fig.tight_layout()
        return _save(fig, path)


def plot_table1(rows, path):
    """``c_n``-scaled Kolmogorov distance against n for each catalog row."""
    with style():
        fig, ax = plt.subplots(figsize=(5.6, 3.8))
        for name in dict.fromkeys(r["dist"] for r in rows):
            pts = [(r["n"], r["scaled_kol"]) for r in rows
                   if r["dist"] == name and isinstance(r.get("scaled_kol"), float)]
            if pts:
                n, v = zip(*pts)
                ax.loglog(n, v, "o-", label=name)
        ax.axhline(2 * np.exp(-2), color="k", lw=0.8, ls=":", label=r"$2e^{-2}$")
        ax.set_xlabel("$n$")
        ax.set_ylabel(r"$c_n\,\mathrm{Kol}$")
        ax.legend(ncol=2)
        return _save(fig, path)
