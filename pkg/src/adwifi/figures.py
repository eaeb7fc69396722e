"""Render experiment outputs to image files.

Everything here draws from the data objects the experiments emit, writes
a PNG next to the delimited output, and returns the path. The Agg backend
is forced so rendering works without a display.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import SweepGrid

_SWEEP_FIELDS = ("delta_star", "p_f_star", "phi_a", "social_welfare")


def sweep_contours(grid: SweepGrid, outdir, seed: int,
                   fields=_SWEEP_FIELDS) -> list:
    """One filled-contour panel per equilibrium field over (lambda, gamma)."""
    paths = []
    for field in fields:
        z = np.array([[getattr(eq, field) for eq in row] for row in grid.cells])
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        contour = ax.contourf(grid.lambda_axis, grid.gamma_axis, z, levels=20)
        fig.colorbar(contour, ax=ax, label=field)
        ax.set_xlabel("lambda (visits per period)")
        ax.set_ylabel("gamma (concentration)")
        ax.set_title(f"Equilibrium {field}")
        path = Path(outdir) / f"sweep_{field}_{seed}.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        paths.append(path)
    return paths


def tau_figure(tau_curve, path) -> Path:
    """Payoff loss from integer purchases, log scale over the AD type."""
    sigmas = [s for s, _ in tau_curve]
    taus = [t for _, t in tau_curve]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(sigmas, np.maximum(taus, 1e-18))
    ax.set_xlabel("sigma (AD type)")
    ax.set_ylabel("tau(sigma)")
    ax.set_title("Relative payoff loss from randomized integer purchases")
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return Path(path)


def zeta_figure(frame, path) -> Path:
    """Average zeta as a heatmap over (M, sigma_max)."""
    pivot = frame.pivot(index="M", columns="sigma_max", values="avg_zeta")
    fig, ax = plt.subplots(figsize=(6.0, 4.8))
    image = ax.imshow(pivot.values, origin="lower", aspect="auto",
                      extent=(pivot.columns.min() - 0.5, pivot.columns.max() + 0.5,
                              pivot.index.min() - 0.5, pivot.index.max() + 0.5))
    fig.colorbar(image, ax=ax, label="average zeta")
    ax.set_xlabel("sigma_max")
    ax.set_ylabel("M")
    ax.set_title("Revenue ratio of the large-market price")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return Path(path)


def uniform_figure(deltas, objective, path) -> Path:
    """Expected platform revenue against the shared sharing ratio."""
    best = int(np.argmax(objective))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(deltas, objective)
    ax.axvline(deltas[best], linestyle="--", alpha=0.6,
               label=f"delta_U* = {deltas[best]:.4f}")
    ax.set_xlabel("shared sharing ratio delta_U")
    ax.set_ylabel("expected platform revenue")
    ax.set_title("Uniform sharing objective")
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return Path(path)


def welfare_figure(points, path) -> Path:
    """Social welfare along lambda."""
    lams = [l for l, _ in points]
    welfare = [w for _, w in points]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(lams, welfare)
    ax.set_xlabel("lambda (visits per period)")
    ax.set_ylabel("social welfare")
    ax.set_title("Equilibrium social welfare vs lambda")
    ax.grid(True, alpha=0.3)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return Path(path)
