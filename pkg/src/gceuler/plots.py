"""Figure rendering for the report commands.

Each report CSV gets a PNG next to it; matplotlib is imported lazily with
the Agg backend so headless runs work and the exact pipelines never touch
a plotting dependency.
"""

from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".png")


def plot_ratio(rows, csv_path, kind: str) -> Path:
    """|chi/asym - 1| against g, log-scaled."""
    plt = _pyplot()
    xs = [r.g for r in rows if r.ratio is not None]
    ys = [abs(float(r.ratio - 1)) for r in rows if r.ratio is not None]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(xs, ys, "o-", ms=3, lw=0.8)
    ax.set_xlabel("g")
    ax.set_ylabel("|chi/asym - 1|")
    ax.set_title(f"convergence to the closed form ({kind})")
    ax.grid(True, alpha=0.3)
    out = figure_path(csv_path)
    fig.savefig(out, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_cos_scan(gs, cos_vals, bounds, csv_path) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(gs, cos_vals, ".", ms=1.5, label="|cos|")
    ax.semilogy(gs, bounds, "-", lw=1.0, label="g^(1/2-mu*)")
    ax.set_xlabel("odd g")
    ax.set_ylabel("value")
    ax.legend()
    ax.set_title("cosine lower bound scan")
    out = figure_path(csv_path)
    fig.savefig(out, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_jres(rows, csv_path, parity: str) -> Path:
    plt = _pyplot()
    xs = [float(r["z"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(xs, [float(r["delta"]) for r in rows], "o-", label="delta")
    ax.loglog(
        xs, [float(r["delta_normalized"]) for r in rows], "s--", label="delta * z^((n+1)/12)"
    )
    ax.set_xlabel("z")
    ax.legend()
    ax.set_title(f"window-product residual trend ({parity})")
    ax.grid(True, alpha=0.3)
    out = figure_path(csv_path)
    fig.savefig(out, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_q_residuals(rows, csv_path) -> Path:
    plt = _pyplot()
    xs = [float(z) for z, _, _ in rows]
    ys = [float(res) for _, _, res in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(xs, ys, "o-")
    ax.set_xlabel("z")
    ax.set_ylabel("|Q minus exp-form|")
    ax.set_title("Q residual per doubling")
    ax.grid(True, alpha=0.3)
    out = figure_path(csv_path)
    fig.savefig(out, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return out
