"""Figure rendering for spectral-supremum scans (headless matplotlib)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .burau import SpectralSupremum


def render_supremum_figure(result: SpectralSupremum, path: str) -> str:
    """Write a PNG of the scan next to its data file; returns the path.

    Circle scans get radius-vs-angle with the supremum marked; torus
    scans get a heatmap over the (q, t) angle grid.
    """
    torus = bool(result.samples) and len(result.samples[0]) == 3
    fig, ax = plt.subplots(figsize=(7.0, 4.4), dpi=130)
    if not torus:
        angles = [s[0] for s in result.samples]
        radii = [s[1] for s in result.samples]
        order = np.argsort(angles)
        ax.plot(np.asarray(angles)[order], np.asarray(radii)[order], lw=1.2)
        ax.axhline(result.sup, color="crimson", ls="--", lw=0.8)
        ax.plot(result.argmax[0], result.sup, "o", color="crimson", ms=5)
        ax.set_xlabel("t angle (radians)")
        ax.set_ylabel("spectral radius")
        ax.set_title(
            f"circle scan, mesh {result.mesh}, dim {result.matrix_dim}: "
            f"sup = {result.sup:.6f}"
        )
        ax.set_xlim(0.0, 2.0 * math.pi)
    else:
        qa = sorted({s[0] for s in result.samples})
        ta = sorted({s[1] for s in result.samples})
        lookup = {(s[0], s[1]): s[2] for s in result.samples}
        grid = np.array([[lookup[(aq, at)] for at in ta] for aq in qa])
        im = ax.pcolormesh(ta, qa, grid, shading="nearest", cmap="viridis")
        fig.colorbar(im, ax=ax, label="sqrt spectral radius")
        ax.plot(result.argmax[1], result.argmax[0], "o", color="crimson", ms=5)
        ax.set_xlabel("t angle (radians)")
        ax.set_ylabel("q angle (radians)")
        ax.set_title(
            f"torus scan, mesh {result.mesh}^2, dim {result.matrix_dim}: "
            f"sup = {result.sup:.6f}"
        )
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
