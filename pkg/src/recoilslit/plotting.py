"""Matplotlib figures for the CLI report path.

Figures are written as self-contained SVG (glyphs converted to paths)
with a fixed hash salt and no date stamp, so reruns are byte-identical.
"""

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .output import atomic_write  # noqa: E402

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 6.0

params = {
    "axes.labelsize": 10,
    "font.family": "sans-serif",
    "font.sans-serif": ["DejaVu Sans"],
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "svg.fonttype": "path",
    "svg.hashsalt": "recoilslit",
    "path.simplify": False,
}


def _figure():
    with plt.rc_context(params):
        fig, ax = plt.subplots()
    return fig, ax


def visible_range(xs, *curves, floor=1e-3):
    """x-interval where any curve exceeds ``floor`` times the overall peak."""
    stack = np.vstack(curves)
    mask = np.any(stack > floor * stack.max(), axis=0)
    idx = np.nonzero(mask)[0]
    return xs[idx[0]], xs[idx[-1]]


def save_svg(fig, path):
    buf = io.StringIO()
    with plt.rc_context(params):
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    atomic_write(path, buf.getvalue())


def plot_pattern(path, xs, intensity, title=""):
    with plt.rc_context(params):
        fig, ax = _figure()
        ax.plot(xs, intensity, color="k", label="intensity")
        ax.set_xlim(*visible_range(xs, intensity))
        ax.set_xlabel("screen position x")
        ax.set_ylabel("intensity")
        ax.set_title(title)
        ax.legend(loc="upper right")
        fig.tight_layout()
    save_svg(fig, path)


def plot_eraser(path, xs, q1, q2, marginal, title=""):
    """Conditional q1 (solid), conditional q2 (dashed), marginal (dotted)."""
    with plt.rc_context(params):
        fig, ax = _figure()
        ax.plot(xs, q1, color="k", linestyle="-", label="detector in q1")
        ax.plot(xs, q2, color="k", linestyle="--", label="detector in q2")
        ax.plot(xs, marginal, color="k", linestyle=":", label="detector not read")
        ax.set_xlim(*visible_range(xs, q1, q2, marginal))
        ax.set_xlabel("screen position x")
        ax.set_ylabel("intensity")
        ax.set_title(title)
        ax.legend(loc="upper right")
        fig.tight_layout()
    save_svg(fig, path)


def plot_sweep(path, D, V, title=""):
    with plt.rc_context(params):
        fig, ax = _figure()
        t = np.linspace(0.0, np.pi / 2.0, 200)
        ax.plot(np.cos(t), np.sin(t), color="0.6", linestyle="--", label="V^2 + D^2 = 1")
        ax.plot(D, V, "o-", color="k", markersize=2.5, label="measured")
        ax.set_xlabel("distinguishability D")
        ax.set_ylabel("visibility V")
        ax.set_xlim(0, 1.05)
        ax.set_ylim(0, 1.05)
        ax.set_aspect("equal")
        ax.set_title(title)
        ax.legend(loc="lower left")
        fig.tight_layout()
    save_svg(fig, path)
