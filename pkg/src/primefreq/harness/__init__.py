"""Experiment orchestration: grids, populations, regime and classification studies, benchmarks."""
from .bench import BenchRow, bench
from .bundle import Bundle, config_hash
from .checks import Check
from .grid import GridSpec, OrthogonalityResult, WelchPopulation, run_orthogonality_grid, run_welch_population, welch_population
from .regimes import (
    ClassificationResult,
    RegimeResult,
    run_classification_study,
    run_regime_study,
)

__all__ = [
    "BenchRow", "Bundle", "Check", "ClassificationResult", "GridSpec", "OrthogonalityResult",
    "RegimeResult", "WelchPopulation", "bench", "config_hash", "run_classification_study",
    "run_orthogonality_grid", "run_regime_study", "run_welch_population", "welch_population",
]
