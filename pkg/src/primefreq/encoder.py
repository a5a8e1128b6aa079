"""Forward/reverse prime-frequency maps and static sequence codebooks.

Embeddings use the layout ``[cos block (k) | sin block (k)]``. Every function
accepts a single vector or a batch (rows).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .basis import PrimeBasis, StaticBasis
from .errors import DegenerateRowError, DimensionMismatchError

STATIC_PRIME = "static_prime"
DYNAMIC_PRIME = "dynamic_prime"
GAUSSIAN_BASELINE = "gaussian_baseline"
SOURCES = (STATIC_PRIME, DYNAMIC_PRIME, GAUSSIAN_BASELINE)


@dataclass
class Codebook:
    rows: np.ndarray
    source: str
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown codebook source {self.source!r}")
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2:
            raise DimensionMismatchError(f"codebook rows must be 2-D, got shape {self.rows.shape}")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


def _as_batch(x, width: int, what: str) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    x2 = x[None, :] if single else x
    if x2.ndim != 2 or x2.shape[1] != width:
        raise DimensionMismatchError(f"{what} must have trailing dimension {width}, got shape {x.shape}")
    return x2, single


def rowwise_product(a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``a @ m.T`` accumulated over the shared axis in a fixed order.

    Unlike a BLAS call, each output row is bit-identical whether it is
    computed alone or inside a batch, and independent of thread count.
    """
    out = a[:, :1] * m[:, 0]
    for j in range(1, a.shape[1]):
        out += a[:, j : j + 1] * m[:, j]
    return out


def phases(basis: PrimeBasis, x) -> np.ndarray:
    """Phase vector(s) ``2*pi*sigma*(W x)``."""
    xb, single = _as_batch(x, basis.d_in, "input")
    if not np.all(np.isfinite(xb)):
        raise ValueError("input contains non-finite values")
    v = (2.0 * np.pi * basis.sigma) * rowwise_product(xb, basis.w)
    return v[0] if single else v


def embed_phases(v: np.ndarray) -> np.ndarray:
    return np.concatenate([np.cos(v), np.sin(v)], axis=-1)


def forward(basis: PrimeBasis, x) -> np.ndarray:
    """Embed `x` (length d_in, or N x d_in) on the torus: ``[cos(v), sin(v)]``."""
    return embed_phases(phases(basis, x))


def recover_phases(z, k: int) -> np.ndarray:
    """Phases in (-pi, pi] from an embedding via ``atan2(sin, cos)``."""
    z = np.asarray(z, dtype=np.float64)
    return np.arctan2(z[..., k:], z[..., :k])


def reverse(basis: PrimeBasis, z) -> np.ndarray:
    """Least-squares preimage ``pinv(2*pi*sigma*W) @ atan2(z_sin, z_cos)``.

    Exact when ``d_out >= 2*d_in`` and the original input was inside the
    injectivity radius. Otherwise this is still the least-squares solution
    for the wrapped phases, which is what callers measure as reconstruction
    error.
    """
    zb, single = _as_batch(z, basis.d_out, "embedding")
    v_hat = recover_phases(zb, basis.k)
    x_hat = rowwise_product(v_hat, basis.decoder())
    return x_hat[0] if single else x_hat


def generate_static(basis: StaticBasis, n: int) -> Codebook:
    """Rows ``[cos(2 pi t omega), sin(2 pi t omega)]`` for t = 0..n-1."""
    if n < 1:
        raise ValueError(f"sequence length must be >= 1, got {n}")
    t = np.arange(n, dtype=np.float64)
    theta = 2.0 * np.pi * np.outer(t, basis.omega)  # same rounding as phases() with d_in=1, sigma=1
    return Codebook(embed_phases(theta), STATIC_PRIME, {"n": int(n), "dim": basis.d_out})


def encode_codebook(basis: PrimeBasis, x) -> Codebook:
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    return Codebook(
        forward(basis, x),
        DYNAMIC_PRIME,
        {"n": x.shape[0], "dim": basis.d_out, "d_in": basis.d_in, "sigma": basis.sigma},
    )


def normalize_rows(cb: Codebook) -> Codebook:
    norms = np.linalg.norm(cb.rows, axis=1)
    if np.any(norms == 0):
        bad = int(np.flatnonzero(norms == 0)[0])
        raise DegenerateRowError(f"row {bad} has zero norm")
    return Codebook(cb.rows / norms[:, None], cb.source, dict(cb.meta, normalized=True))
