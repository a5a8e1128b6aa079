"""Two-class synthetic 2-D datasets: interleaved spirals and concentric circles.

Both generators build points in a native frame whose outer radius is 3*pi,
add ``noise * N(0, 1)`` there, and scale by 1/(3*pi). Noiseless points
therefore lie in the closed unit disk, and a given noise level means the same
thing for both shapes.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

SPIRAL = "spiral"
CIRCLES = "circles"
EXTENT = 3.0 * np.pi


@dataclass(frozen=True, eq=False)
class Dataset2D:
    points: np.ndarray
    labels: np.ndarray
    kind: str
    noise: float
    seed: int

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.points)))

    def to_csv(self, fh=None) -> str | None:
        """Write ``x,y,label`` rows (with header). Returns the text if no handle given."""
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "label"])
        for (x, y), lab in zip(self.points, self.labels):
            w.writerow([f"{x:.17g}", f"{y:.17g}", int(lab)])
        return fh.getvalue() if own else None


def _labels(n: int) -> np.ndarray:
    return np.arange(n) % 2


def _check(n: int, noise: float) -> None:
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if noise < 0:
        raise ValueError(f"noise must be >= 0, got {noise}")


def make_spiral(n: int, noise: float = 0.0, seed: int = 42) -> Dataset2D:
    """Two Archimedean arms (rho = theta, theta in [0, 3 pi]), the second rotated by pi.

    Parameters are drawn before noise, so datasets sharing a seed share their
    underlying points regardless of noise level.
    """
    _check(n, noise)
    rng = np.random.default_rng(seed)
    labels = _labels(n)
    theta = rng.uniform(0.0, EXTENT, n)
    eps = rng.standard_normal((n, 2))
    phase = theta + labels * np.pi
    pts = theta[:, None] * np.column_stack([np.cos(phase), np.sin(phase)]) + noise * eps
    return Dataset2D(pts / EXTENT, labels, SPIRAL, float(noise), int(seed))


def make_circles(n: int, noise: float = 0.0, seed: int = 42) -> Dataset2D:
    """Class 0 on radius 0.5, class 1 on radius 1.0, uniform angles."""
    _check(n, noise)
    rng = np.random.default_rng(seed)
    labels = _labels(n)
    angle = rng.uniform(0.0, 2.0 * np.pi, n)
    eps = rng.standard_normal((n, 2))
    radius = np.where(labels == 0, 0.5, 1.0)
    pts = radius[:, None] * np.column_stack([np.cos(angle), np.sin(angle)])
    if noise:
        pts = pts + (noise / EXTENT) * eps
    return Dataset2D(pts, labels, CIRCLES, float(noise), int(seed))


def make(kind: str, n: int, noise: float = 0.0, seed: int = 42) -> Dataset2D:
    if kind == SPIRAL:
        return make_spiral(n, noise, seed)
    if kind == CIRCLES:
        return make_circles(n, noise, seed)
    raise ValueError(f"unknown dataset kind {kind!r}")
