"""Ordered prime table backed by an incremental segmented sieve of Eratosthenes.

The table only ever grows. Each growth step sieves the integers between the
current limit and a new one, so earlier work is never repeated.
"""
from __future__ import annotations

import math
import os
import struct
import threading

import numpy as np

from .errors import ResourceExhaustedError

DEFAULT_CAP = 1 << 40
SEGMENT = 1 << 18

CACHE_MAGIC = b"PRIM1"


def simple_sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as uint64, plain (unsegmented) sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.uint64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.uint64)


def sieve_range(low: int, high: int, base: np.ndarray) -> np.ndarray:
    """Primes in ``[low, high)`` given every prime up to ``isqrt(high - 1)`` in `base`."""
    low = max(low, 2)
    if high <= low:
        return np.empty(0, dtype=np.uint64)
    out = []
    for seg_lo in range(low, high, SEGMENT):
        seg_hi = min(seg_lo + SEGMENT, high)
        mask = np.ones(seg_hi - seg_lo, dtype=bool)
        for p in base.tolist():
            p2 = p * p
            if p2 >= seg_hi:
                break
            start = max(p2, -(-seg_lo // p) * p)
            mask[start - seg_lo :: p] = False
        out.append(np.flatnonzero(mask).astype(np.uint64) + np.uint64(seg_lo))
    return np.concatenate(out)


def estimate_limit(n: int) -> int:
    """Upper bound on the n-th prime: n (ln n + ln ln n) for n >= 6."""
    if n < 6:
        return 15
    return int(math.ceil(n * (math.log(n) + math.log(math.log(n))))) + 1


class PrimeTable:
    """Ascending primes, complete up to ``sieve_limit``.

    Reads never block: ``values`` is swapped for a longer array at the end of
    a growth step and earlier arrays are never mutated. Growth is serialized
    by a lock.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = int(cap)
        self._values = np.empty(0, dtype=np.uint64)
        self._sieve_limit = 1
        self._lock = threading.Lock()

    @property
    def values(self) -> np.ndarray:
        v = self._values.view()
        v.flags.writeable = False
        return v

    @property
    def sieve_limit(self) -> int:
        return self._sieve_limit

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"PrimeTable(count={len(self)}, sieve_limit={self._sieve_limit})"

    def ensure_count(self, m: int) -> "PrimeTable":
        """Grow until at least `m` primes are held. Returns self."""
        m = int(m)
        if m < 1:
            raise ValueError(f"prime count must be >= 1, got {m}")
        if len(self._values) >= m:
            return self
        with self._lock:
            target = max(estimate_limit(m), self._sieve_limit + 1)
            while len(self._values) < m:
                if target > self.cap:
                    raise ResourceExhaustedError(
                        f"sieve limit {target} for {m} primes exceeds cap {self.cap}"
                    )
                self._extend_to(target)
                target = min(2 * target, max(self.cap, target + 1))
        return self

    def _extend_to(self, limit: int) -> None:
        base = simple_sieve(math.isqrt(limit))
        fresh = sieve_range(self._sieve_limit + 1, limit + 1, base)
        self._values = np.concatenate([self._values, fresh])
        self._sieve_limit = limit

    def extend_to_limit(self, limit: int) -> "PrimeTable":
        """Sieve every integer up to `limit` (no-op if already covered)."""
        if limit > self.cap:
            raise ResourceExhaustedError(f"sieve limit {limit} exceeds cap {self.cap}")
        with self._lock:
            if limit > self._sieve_limit:
                self._extend_to(int(limit))
        return self

    def slice_roots(self, m: int) -> np.ndarray:
        """Square roots of the first `m` primes, float64, recomputed each call."""
        self.ensure_count(m)
        return np.sqrt(self._values[:m].astype(np.float64))

    # -- binary cache ------------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        """Write ``PRIM1`` + little-endian u64 count + little-endian u64 primes."""
        vals = self._values
        with open(path, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<Q", len(vals)))
            fh.write(vals.astype("<u8").tobytes())

    @classmethod
    def load(cls, path: str | os.PathLike, cap: int = DEFAULT_CAP) -> "PrimeTable":
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:5] != CACHE_MAGIC or len(blob) < 13:
            raise ValueError(f"{path}: not a prime cache file")
        (count,) = struct.unpack("<Q", blob[5:13])
        body = blob[13:]
        if len(body) != 8 * count:
            raise ValueError(f"{path}: truncated prime cache ({len(body)} bytes for {count} primes)")
        vals = np.frombuffer(body, dtype="<u8").astype(np.uint64)
        if count and (vals[0] != 2 or np.any(np.diff(vals.astype(np.int64)) <= 0)):
            raise ValueError(f"{path}: prime cache is not an ascending prime list")
        table = cls(cap=cap)
        table._values = vals
        table._sieve_limit = int(vals[-1]) if count else 1
        return table


_default: PrimeTable | None = None
_default_lock = threading.Lock()


def default_table() -> PrimeTable:
    """Process-wide shared table."""
    global _default
    with _default_lock:
        if _default is None:
            _default = PrimeTable()
        return _default


def set_default_table(table: PrimeTable) -> None:
    global _default
    with _default_lock:
        _default = table
