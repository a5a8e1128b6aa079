"""Gram-matrix coherence statistics and Welch-bound comparisons."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from .encoder import Codebook
from .errors import EmptyInputError, NotNormalizedError

N_BINS = 201
MAX_ROWS = 20_000
NORM_TOL = 1e-6
LOG_FLOOR = 1e-12


def _rows(cb) -> np.ndarray:
    return cb.rows if isinstance(cb, Codebook) else np.asarray(cb, dtype=np.float64)


def gram_offdiag(cb) -> np.ndarray:
    """Upper-triangle (i < j) inner products of a unit-row codebook, row-major order."""
    v = _rows(cb)
    if v.shape[0] > MAX_ROWS:
        raise ValueError(f"{v.shape[0]} rows exceeds the per-report cap of {MAX_ROWS}")
    norms = np.linalg.norm(v, axis=1)
    dev = np.abs(norms - 1.0)
    if np.any(dev > NORM_TOL):
        i = int(np.argmax(dev))
        raise NotNormalizedError(f"row {i} has norm {norms[i]!r}; call normalize_rows first")
    g = v @ v.T
    return g[np.triu_indices(v.shape[0], k=1)]


def rms_error(sims) -> float:
    sims = np.asarray(sims, dtype=np.float64)
    if sims.size == 0:
        raise EmptyInputError("rms_error of an empty similarity vector")
    return float(np.sqrt(np.mean(sims * sims)))


def welch_bound(n: int, dim: int) -> float | None:
    """Lower bound on max coherence of n unit vectors in R^dim.

    None below n = dim, where no nontrivial bound exists; exactly 0 at n = dim.
    """
    if n < 1 or dim < 1:
        raise ValueError(f"welch_bound needs n, dim >= 1 (got {n}, {dim})")
    if n < dim:
        return None
    if n == dim:
        return 0.0
    return math.sqrt((n - dim) / (dim * (n - 1)))


def histogram(sims, bins: int = N_BINS) -> np.ndarray:
    counts, _ = np.histogram(sims, bins=bins, range=(-1.0, 1.0))
    return counts


def log_density(counts, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    counts = np.asarray(counts, dtype=np.float64)
    width = (hi - lo) / counts.size
    total = counts.sum()
    return np.log10(counts / (total * width) + LOG_FLOOR)


@dataclass
class GramReport:
    n: int
    dim: int
    e_rms: float
    mu_max: float
    welch: float | None
    optimality_ratio: float | None
    excess_coherence: float | None
    histogram: list[int]
    mean_offdiag: float
    source: str = ""
    sigma: float | None = None
    seed: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    CSV_FIELDS = (
        "source", "n", "dim", "sigma", "seed", "e_rms", "mu_max", "welch",
        "optimality_ratio", "excess_coherence", "mean_offdiag", "histogram",
    )

    def csv_values(self) -> list[str]:
        d = self.to_dict()
        out = []
        for name in self.CSV_FIELDS:
            val = d[name]
            if name == "histogram":
                out.append(" ".join(str(c) for c in val))
            else:
                out.append(fmt(val))
        return out


def fmt(val) -> str:
    """CSV cell: floats at 17 significant digits, absent as empty."""
    if val is None:
        return ""
    if isinstance(val, (float, np.floating)):
        return f"{float(val):.17g}"
    return str(val)


def report(cb: Codebook) -> GramReport:
    sims = gram_offdiag(cb)
    n, dim = cb.rows.shape
    if sims.size:
        e_rms = rms_error(sims)
        mu_max = float(min(np.max(np.abs(sims)), 1.0))
        mean = float(np.mean(sims))
    else:
        e_rms = mu_max = mean = 0.0
    w = welch_bound(n, dim)
    ratio = excess = None
    if n > dim:
        excess = mu_max - w
        if w > 0:
            ratio = mu_max / w
    meta = cb.meta
    return GramReport(
        n=n,
        dim=dim,
        e_rms=e_rms,
        mu_max=mu_max,
        welch=w,
        optimality_ratio=ratio,
        excess_coherence=excess,
        histogram=histogram(sims).tolist(),
        mean_offdiag=mean,
        source=cb.source,
        sigma=meta.get("sigma"),
        seed=meta.get("seed"),
    )
