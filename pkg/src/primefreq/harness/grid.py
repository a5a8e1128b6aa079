"""Orthogonality grids and Welch-optimality populations over (N, D) sweeps."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..baseline import BaselineConfig, generate_gaussian
from ..basis import build_static
from ..encoder import GAUSSIAN_BASELINE, STATIC_PRIME, generate_static, normalize_rows
from ..errors import EmptyPopulationError, InvalidDimensionError
from ..metrics import GramReport, report
from ..primes import PrimeTable, default_table

DEFAULT_N = (500, 1000, 2000)
DEFAULT_D = (16, 64, 256)
DEFAULT_SEEDS = (42, 43, 44, 45, 46)
GRID_SOURCES = (STATIC_PRIME, GAUSSIAN_BASELINE)


@dataclass(frozen=True)
class GridSpec:
    n_values: tuple[int, ...] = DEFAULT_N
    d_values: tuple[int, ...] = DEFAULT_D
    sources: tuple[str, ...] = GRID_SOURCES
    seeds: tuple[int, ...] = DEFAULT_SEEDS

    def __post_init__(self):
        for name in ("n_values", "d_values", "sources", "seeds"):
            val = tuple(getattr(self, name))
            if not val:
                raise ValueError(f"GridSpec.{name} must be nonempty")
            object.__setattr__(self, name, val)
        bad = set(self.sources) - set(GRID_SOURCES)
        if bad:
            raise ValueError(f"unsupported grid sources: {sorted(bad)}")
        if STATIC_PRIME in self.sources and any(d % 2 or d < 2 for d in self.d_values):
            raise InvalidDimensionError(f"prime sources need even dimensions, got {self.d_values}")

    def cells(self) -> list[tuple[str, int, int, int | None]]:
        """Canonical cell keys ``(source, n, d, seed)``; prime cells carry no seed."""
        keys = []
        for source in sorted(self.sources):
            for n in sorted(self.n_values):
                for d in sorted(self.d_values):
                    if source == STATIC_PRIME:
                        keys.append((source, n, d, None))
                    else:
                        keys.extend((source, n, d, s) for s in sorted(self.seeds))
        return keys

    def to_dict(self) -> dict:
        return {k: list(getattr(self, k)) for k in ("n_values", "d_values", "sources", "seeds")}


def run_cell(source: str, n: int, d: int, seed: int | None, primes: PrimeTable | None = None) -> GramReport:
    if source == STATIC_PRIME:
        cb = normalize_rows(generate_static(build_static(d, primes), n))
    else:
        cb = generate_gaussian(BaselineConfig(seed=seed, n=n, dim=d))
    return report(cb)


@dataclass
class OrthogonalityResult:
    spec: GridSpec
    reports: list[GramReport]
    summary: dict = field(default_factory=dict)


def _stats(vals) -> dict:
    vals = [v for v in vals if v is not None]
    if not vals:
        return {"mean": None, "median": None}
    return {"mean": float(np.mean(vals)), "median": float(np.median(vals))}


def summarize(reports: list[GramReport]) -> dict:
    by_source: dict[str, list[GramReport]] = {}
    for r in reports:
        by_source.setdefault(r.source, []).append(r)
    out = {
        "per_source": {
            s: {"e_rms": _stats(r.e_rms for r in rs), "optimality_ratio": _stats(r.optimality_ratio for r in rs)}
            for s, rs in sorted(by_source.items())
        }
    }
    if STATIC_PRIME in by_source and GAUSSIAN_BASELINE in by_source:
        gauss: dict[tuple[int, int], list[float]] = {}
        for r in by_source[GAUSSIAN_BASELINE]:
            gauss.setdefault((r.n, r.dim), []).append(r.e_rms)
        cells = []
        for r in sorted(by_source[STATIC_PRIME], key=lambda r: (r.n, r.dim)):
            if (r.n, r.dim) not in gauss:
                continue
            g = float(np.mean(gauss[(r.n, r.dim)]))
            cells.append({"n": r.n, "dim": r.dim, "prime_e_rms": r.e_rms, "gaussian_e_rms": g,
                          "relative_reduction": (g - r.e_rms) / g, "prime_wins": r.e_rms < g})
        out["paired"] = {
            "cells": cells,
            "prime_wins": sum(c["prime_wins"] for c in cells),
            "total": len(cells),
            "grid_mean_prime": float(np.mean([c["prime_e_rms"] for c in cells])) if cells else None,
            "grid_mean_gaussian": float(np.mean([c["gaussian_e_rms"] for c in cells])) if cells else None,
        }
    return out


def run_orthogonality_grid(spec: GridSpec, primes: PrimeTable | None = None,
                           workers: int | None = None) -> OrthogonalityResult:
    """One GramReport per cell, ordered canonically regardless of completion order."""
    primes = primes or default_table()
    keys = spec.cells()
    if any(k[0] == STATIC_PRIME for k in keys):
        primes.ensure_count(max(spec.d_values) // 2)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda key: run_cell(*key, primes=primes), keys))
    return OrthogonalityResult(spec, reports, summarize(reports))


@dataclass
class WelchPopulation:
    ratios: dict[str, np.ndarray]
    excess: dict[str, np.ndarray]
    quantiles: dict[str, dict[str, dict[str, float]]]

    def histograms(self, bins: int = 40) -> dict[str, dict]:
        out = {}
        for metric, pops in (("optimality_ratio", self.ratios), ("excess_coherence", self.excess)):
            allv = np.concatenate([v for v in pops.values()])
            lo, hi = float(min(allv.min(), 1.0 if metric == "optimality_ratio" else 0.0)), float(allv.max())
            hi = hi if hi > lo else lo + 1.0
            out[metric] = {
                "range": (lo, hi),
                "counts": {s: np.histogram(v, bins=bins, range=(lo, hi))[0] for s, v in pops.items()},
            }
        return out


def _quantiles(v: np.ndarray) -> dict[str, float]:
    p25, p50, p75 = np.percentile(v, [25, 50, 75])
    return {"p25": float(p25), "p50": float(p50), "p75": float(p75)}


def welch_population(reports: list[GramReport]) -> WelchPopulation:
    ratios: dict[str, list[float]] = {}
    excess: dict[str, list[float]] = {}
    for r in reports:
        if r.n > r.dim and r.optimality_ratio is not None:
            ratios.setdefault(r.source, []).append(r.optimality_ratio)
            excess.setdefault(r.source, []).append(r.excess_coherence)
    if not ratios:
        raise EmptyPopulationError("no grid cell has N > D; Welch population is empty")
    ratios_a = {s: np.asarray(v) for s, v in sorted(ratios.items())}
    excess_a = {s: np.asarray(v) for s, v in sorted(excess.items())}
    quant = {
        s: {"optimality_ratio": _quantiles(ratios_a[s]), "excess_coherence": _quantiles(excess_a[s])}
        for s in ratios_a
    }
    return WelchPopulation(ratios_a, excess_a, quant)


def run_welch_population(spec: GridSpec, primes: PrimeTable | None = None,
                         workers: int | None = None) -> tuple[OrthogonalityResult, WelchPopulation]:
    """Grid over `spec`, then the (ratio, excess) populations of its N > D cells."""
    if not any(n > d for n in spec.n_values for d in spec.d_values):
        raise EmptyPopulationError("no grid cell has N > D; Welch population is empty")
    grid = run_orthogonality_grid(spec, primes, workers)
    return grid, welch_population(grid.reports)
