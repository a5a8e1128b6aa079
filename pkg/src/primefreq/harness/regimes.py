"""Manifold-vs-hashing regime study and the cosine-similarity classification study."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..basis import PrimeBasis, build_dynamic
from ..encoder import forward, reverse
from ..errors import InjectivityError
from ..primes import PrimeTable, default_table
from ..synth import CIRCLES, SPIRAL, Dataset2D, make

MANIFOLD = "manifold"
HASHING = "hashing"

REGIME_SIGMAS = (0.007, 1.0)
REGIME_DOUTS = (4, 128)
REGIME_NOISE = (0.0, 0.5)
CLASSIFY_SIGMAS = (0.007, 0.02, 1.0)
CLASSIFY_DOUTS = (4, 128)
CLASSIFY_NOISE = 0.5
DATASET_NAMES = ("clean_spiral", "noisy_spiral", "clean_circles", "noisy_circles")


def principal_components(z: np.ndarray, n_comp: int = 2) -> np.ndarray:
    """Projection of mean-centered rows onto their top principal directions."""
    zc = z - z.mean(axis=0)
    _, _, vt = np.linalg.svd(zc, full_matrices=False)
    return zc @ vt[:n_comp].T


def regime_of(basis: PrimeBasis, points: np.ndarray) -> str:
    inside = float(np.max(np.abs(points))) < basis.injectivity_radius()
    return MANIFOLD if inside and basis.invertible_shape else HASHING


def _class_similarity(z: np.ndarray, labels: np.ndarray) -> tuple[float, float]:
    u = z / np.linalg.norm(z, axis=1, keepdims=True)
    g = u @ u.T
    same = labels[:, None] == labels[None, :]
    off = ~np.eye(len(labels), dtype=bool)
    intra = float(g[same & off].mean())
    inter = float(g[~same].mean()) if np.any(~same) else float("nan")
    return intra, inter


@dataclass(eq=False)
class RegimeResult:
    kind: str
    noise: float
    sigma: float
    d_out: int
    regime: str
    radius: float
    sup_norm: float
    recon_mse: float
    intra_class_sim: float
    inter_class_sim: float
    latent_norms: np.ndarray
    latent_pcs: np.ndarray

    CSV_FIELDS = ("kind", "noise", "sigma", "d_out", "regime", "radius", "sup_norm",
                  "recon_mse", "intra_class_sim", "inter_class_sim")

    def row(self) -> dict:
        return {f: getattr(self, f) for f in self.CSV_FIELDS}


def check_manifold(ds: Dataset2D, basis: PrimeBasis) -> None:
    if regime_of(basis, ds.points) != MANIFOLD:
        raise InjectivityError(
            f"{ds.kind} (noise={ds.noise}) at sigma={basis.sigma}, D={basis.d_out}: sup-norm "
            f"{ds.sup_norm():.6g} vs injectivity radius {basis.injectivity_radius():.6g}; "
            "cell cannot be in the manifold regime"
        )


def run_regime_cell(ds: Dataset2D, sigma: float, d_out: int, claim_manifold: bool,
                    primes: PrimeTable | None = None) -> RegimeResult:
    basis = build_dynamic(ds.points.shape[1], d_out, sigma, primes)
    if claim_manifold:
        check_manifold(ds, basis)
    regime = regime_of(basis, ds.points)
    z = forward(basis, ds.points)
    x_hat = reverse(basis, z)
    intra, inter = _class_similarity(z, ds.labels)
    return RegimeResult(
        kind=ds.kind, noise=ds.noise, sigma=float(sigma), d_out=int(d_out), regime=regime,
        radius=basis.injectivity_radius(), sup_norm=ds.sup_norm(),
        recon_mse=float(np.mean((x_hat - ds.points) ** 2)),
        intra_class_sim=intra, inter_class_sim=inter,
        latent_norms=np.linalg.norm(z, axis=1), latent_pcs=principal_components(z),
    )


def run_regime_study(datasets: list[Dataset2D], sigmas=REGIME_SIGMAS, d_outs=REGIME_DOUTS,
                     manifold_sigmas=(0.007,), primes: PrimeTable | None = None,
                     workers: int | None = None) -> list[RegimeResult]:
    """Encode and reconstruct every (dataset, sigma, D) cell.

    Cells whose sigma is in `manifold_sigmas` claim the manifold regime and
    raise InjectivityError when the data leaves the injectivity radius.
    """
    primes = primes or default_table()
    claimed = {float(s) for s in manifold_sigmas}
    cells = [
        (ds, s, d, float(s) in claimed and d >= 2 * ds.points.shape[1])
        for ds in datasets for s in sorted(sigmas) for d in sorted(d_outs)
    ]
    # fail on misconfiguration before running any cell
    for ds, s, d, claim in cells:
        if claim:
            check_manifold(ds, build_dynamic(ds.points.shape[1], d, s, primes))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: run_regime_cell(*c, primes=primes), cells))


def classification_datasets(n: int = 1000, noise: float = CLASSIFY_NOISE, seed: int = 42) -> list[Dataset2D]:
    """Clean/noisy spiral and circles; clean and noisy variants share points and order."""
    return [make(SPIRAL, n, 0.0, seed), make(SPIRAL, n, noise, seed),
            make(CIRCLES, n, 0.0, seed), make(CIRCLES, n, noise, seed)]


def cosine_matrix(vectors: list[np.ndarray], center: bool) -> np.ndarray:
    m = np.stack([v.ravel() for v in vectors])
    if center:
        m = m - m.mean(axis=1, keepdims=True)
    m = m / np.linalg.norm(m, axis=1, keepdims=True)
    g = m @ m.T
    g = (g + g.T) / 2
    np.fill_diagonal(g, 1.0)
    return g


@dataclass(eq=False)
class ClassificationResult:
    sigma: float
    d_out: int
    names: tuple[str, ...]
    centered: np.ndarray
    uncentered: np.ndarray
    recon_mse: tuple[float, ...]

    def intra(self, centered: bool = True) -> tuple[float, float]:
        m = self.centered if centered else self.uncentered
        return float(m[0, 1]), float(m[2, 3])

    def inter(self, centered: bool = True) -> np.ndarray:
        m = self.centered if centered else self.uncentered
        return m[:2, 2:].ravel()


def run_classification_study(sigma_list=CLASSIFY_SIGMAS, d_outs=CLASSIFY_DOUTS, n: int = 1000,
                             noise: float = CLASSIFY_NOISE, seed: int = 42,
                             primes: PrimeTable | None = None) -> list[ClassificationResult]:
    """4 x 4 cosine-similarity matrices of flattened reconstructions per (sigma, D)."""
    primes = primes or default_table()
    data = classification_datasets(n, noise, seed)
    out = []
    for d in sorted(d_outs):
        for s in sorted(sigma_list):
            basis = build_dynamic(2, d, s, primes)
            recon = [reverse(basis, forward(basis, ds.points)) for ds in data]
            out.append(ClassificationResult(
                sigma=float(s), d_out=int(d), names=DATASET_NAMES,
                centered=cosine_matrix(recon, True), uncentered=cosine_matrix(recon, False),
                recon_mse=tuple(float(np.mean((r - ds.points) ** 2)) for r, ds in zip(recon, data)),
            ))
    return out
