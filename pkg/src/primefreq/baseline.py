"""Seeded normalized-Gaussian codebooks (the comparison baseline).

Uniforms come from numpy's PCG64 (128-bit state); normal variates are made
from them with the Box-Muller transform so the whole chain is explicit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import GAUSSIAN_BASELINE, Codebook

GENERATOR_NAME = "PCG64+BoxMuller"


@dataclass(frozen=True)
class BaselineConfig:
    seed: int = 42
    n: int = 1000
    dim: int = 256

    def __post_init__(self):
        if self.n < 1 or self.dim < 1:
            raise ValueError(f"baseline needs n >= 1 and dim >= 1, got n={self.n}, dim={self.dim}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


def box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    """`count` standard normal variates from pairs of uniforms."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1], keeps log finite
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(2.0 * np.pi * u2)
    out[1::2] = r * np.sin(2.0 * np.pi * u2)
    return out[:count]


def generate_gaussian(cfg: BaselineConfig) -> Codebook:
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    rows = box_muller(rng, cfg.n * cfg.dim).reshape(cfg.n, cfg.dim)
    norms = np.linalg.norm(rows, axis=1)
    for i in np.flatnonzero(norms == 0):
        while norms[i] == 0:
            rows[i] = box_muller(rng, cfg.dim)
            norms[i] = np.linalg.norm(rows[i])
    return Codebook(
        rows / norms[:, None],
        GAUSSIAN_BASELINE,
        {"n": cfg.n, "dim": cfg.dim, "seed": cfg.seed, "generator": GENERATOR_NAME, "normalized": True},
    )
