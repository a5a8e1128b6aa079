"""Wall-clock scaling checks for the operations in the complexity table."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..basis import build_dynamic, build_static
from ..encoder import forward, generate_static, reverse
from ..primes import PrimeTable, default_table

DEFAULT_SIZES = (20_000, 40_000, 80_000)
DEFAULT_DIMS = (128, 256, 512)


def _reps_for(fn, min_time: float) -> int:
    fn()
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        if time.perf_counter() - t0 >= min_time:
            return reps
        reps *= 2


def median_times(fns, trials: int = 5, min_time: float = 2e-2) -> list[float]:
    """Median per-call seconds for each callable.

    Each trial loops a callable until about `min_time` has elapsed. Trials are
    interleaved across callables so load spikes affect all sizes alike.
    """
    reps = [_reps_for(fn, min_time) for fn in fns]
    samples = [[] for _ in fns]
    for _ in range(trials):
        for i, (fn, r) in enumerate(zip(fns, reps)):
            t0 = time.perf_counter()
            for _ in range(r):
                fn()
            samples[i].append((time.perf_counter() - t0) / r)
    return [float(np.median(s)) for s in samples]


@dataclass
class BenchRow:
    op: str
    size: int
    param: int
    seconds: float
    ratio: float | None  # time / time at the previous (half) size


def _with_ratios(op: str, sizes, param: int, times) -> list[BenchRow]:
    rows = []
    for i, (s, t) in enumerate(zip(sizes, times)):
        rows.append(BenchRow(op, int(s), int(param), t, t / times[i - 1] if i else None))
    return rows


def bench(sizes=DEFAULT_SIZES, dims=DEFAULT_DIMS, static_dim: int = 256, batch: int = 10_000,
          d_in: int = 16, trials: int = 5, primes: PrimeTable | None = None) -> list[BenchRow]:
    """Time static init/generate over `sizes` (N) and dynamic forward/cached reverse over `dims` (D)."""
    primes = primes or default_table()
    primes.ensure_count(max(max(dims) // 2 * d_in, static_dim // 2))
    sizes, dims = sorted(sizes), sorted(dims)
    sb = build_static(static_dim, primes)
    rows = []
    # static init has no N argument; timing it per N makes the independence visible
    rows += _with_ratios("static_init", sizes, static_dim,
                         median_times([lambda: build_static(static_dim, primes)] * len(sizes), trials))
    rows += _with_ratios("static_generate", sizes, static_dim,
                         median_times([lambda n=n: generate_static(sb, n) for n in sizes], trials))
    x = np.random.default_rng(0).uniform(-1e-3, 1e-3, (batch, d_in))
    bases = [build_dynamic(d_in, d, 0.007, primes) for d in dims]
    embeddings = [forward(b, x) for b in bases]
    for b in bases:
        b.decoder()
    fwd = median_times([lambda b=b: forward(b, x) for b in bases], trials)
    rev = median_times([lambda b=b, z=z: reverse(b, z) for b, z in zip(bases, embeddings)], trials)
    rows += _with_ratios("dynamic_forward", dims, batch, fwd)
    rows += _with_ratios("dynamic_reverse_cached", dims, batch, rev)
    return rows
