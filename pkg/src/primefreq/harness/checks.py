"""Acceptance assertions evaluated by ``eval ... --check``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..encoder import GAUSSIAN_BASELINE, STATIC_PRIME
from ..metrics import GramReport
from .grid import WelchPopulation
from .regimes import ClassificationResult, RegimeResult

WELCH_SLACK = 1e-12


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def check_welch_lower_bound(reports: list[GramReport]) -> Check:
    bad = [r for r in reports if r.n > r.dim and r.mu_max < r.welch - WELCH_SLACK]
    return Check("welch_lower_bound", not bad,
                 f"{len(bad)} of {sum(r.n > r.dim for r in reports)} N>D reports below the bound")


def check_orthogonality(summary: dict, min_win_fraction: float = 7 / 9) -> list[Check]:
    paired = summary.get("paired")
    if not paired or not paired["total"]:
        return [Check("orthogonality_ordering", False, "grid lacks paired prime/gaussian cells")]
    need = math.ceil(min_win_fraction * paired["total"] - 1e-9)
    gm_p, gm_g = paired["grid_mean_prime"], paired["grid_mean_gaussian"]
    return [
        Check("orthogonality_grid_mean", gm_p < gm_g, f"prime {gm_p:.6g} vs gaussian {gm_g:.6g}"),
        Check("orthogonality_cell_wins", paired["prime_wins"] >= need,
              f"prime wins {paired['prime_wins']}/{paired['total']} (need {need})"),
    ]


def check_welch_population(pop: WelchPopulation, factor: float = 2.0) -> list[Check]:
    q = pop.quantiles
    if STATIC_PRIME not in q or GAUSSIAN_BASELINE not in q:
        return [Check("welch_population", False, "both sources required")]
    rp = q[STATIC_PRIME]["optimality_ratio"]["p50"]
    rg = q[GAUSSIAN_BASELINE]["optimality_ratio"]["p50"]
    ep = q[STATIC_PRIME]["excess_coherence"]["p50"]
    eg = q[GAUSSIAN_BASELINE]["excess_coherence"]["p50"]
    return [
        Check("welch_ratio_ordering", rp < rg, f"median ratio prime {rp:.4g} vs gaussian {rg:.4g}"),
        Check("welch_ratio_factor", rg > factor * rp, f"gaussian median {rg:.4g} vs {factor}x prime median {factor * rp:.4g}"),
        Check("welch_excess_ordering", ep < eg, f"median excess prime {ep:.4g} vs gaussian {eg:.4g}"),
    ]


def check_regimes(results: list[RegimeResult], mse_factor: float = 1e3) -> list[Check]:
    out = []
    for kind, noise in sorted({(r.kind, r.noise) for r in results}):
        cells = {(r.sigma, r.d_out): r for r in results if r.kind == kind and r.noise == noise}
        lo, hi = cells.get((0.007, 128)), cells.get((1.0, 4))
        tag = f"{kind}/noise={noise:g}"
        if noise == 0 and lo is not None:
            out.append(Check(f"manifold_recon[{tag}]", lo.recon_mse < 1e-8, f"mse {lo.recon_mse:.3g} < 1e-08"))
        if lo is not None and hi is not None:
            out.append(Check(f"hashing_failure[{tag}]", hi.recon_mse >= mse_factor * lo.recon_mse,
                             f"mse(1.0, D=4) {hi.recon_mse:.3g} vs {mse_factor:g} x mse(0.007, D=128) {lo.recon_mse:.3g}"))
    for r in results:
        dev = float(np.max(np.abs(r.latent_norms - math.sqrt(r.d_out / 2))))
        if dev > 1e-9:
            out.append(Check(f"torus_norm[{r.kind}/{r.sigma:g}/{r.d_out}]", False, f"norm deviation {dev:.3g}"))
    out.append(Check("torus_norm", all(c.passed for c in out if c.name.startswith("torus_norm[")),
                     "all latent rows have norm sqrt(D/2) within 1e-09"))
    return out


def check_classification(results: list[ClassificationResult], d_out: int = 128,
                         linear=(0.007, 0.02), full: float = 1.0) -> list[Check]:
    at = {r.sigma: r for r in results if r.d_out == d_out}
    out = []
    for s in linear:
        r = at.get(s)
        if r is None:
            out.append(Check(f"class_separation[s={s:g}]", False, "missing cell"))
            continue
        intra, inter = min(r.intra()), float(np.max(r.inter()))
        out.append(Check(f"class_separation[s={s:g}]", intra > inter,
                         f"min intra {intra:.4f} vs max inter {inter:.4f}"))
    if linear[0] in at and full in at:
        a, b = at[linear[0]].intra(), at[full].intra()
        ok = all(x >= y for x, y in zip(a, b))
        out.append(Check("linear_beats_full", ok, f"intra s={linear[0]:g} {a[0]:.4f},{a[1]:.4f} vs s={full:g} {b[0]:.4f},{b[1]:.4f}"))
    return out
