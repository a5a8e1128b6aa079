"""Deterministic frequency bases built from square roots of consecutive primes."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimensionError, NumericalFailureError
from .primes import PrimeTable, default_table


def _check_even(d_out: int) -> int:
    if d_out < 2 or d_out % 2:
        raise InvalidDimensionError(f"embedding dimension must be even and >= 2, got {d_out}")
    return d_out // 2


def pseudoinverse(a: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudoinverse by SVD.

    Singular values below ``max(a.shape) * eps * s_max`` are treated as zero.
    """
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc
    if s.size == 0:
        return np.zeros(a.shape[::-1])
    tol = max(a.shape) * np.finfo(np.float64).eps * s[0]
    s_inv = np.zeros_like(s)
    keep = s > tol
    s_inv[keep] = 1.0 / s[keep]
    return (vt.T * s_inv) @ u.T


@dataclass(eq=False)
class PrimeBasis:
    """Weight matrix ``w`` (k x d_in) with ``w[i, j] = sqrt(p[i*d_in + j])``.

    The decoder (pseudoinverse of ``2*pi*sigma*w``) is computed on first use
    and cached.
    """

    w: np.ndarray
    sigma: float
    d_in: int
    d_out: int
    _pinv: np.ndarray | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def k(self) -> int:
        return self.d_out // 2

    @property
    def w_max(self) -> float:
        return float(self.w[-1, -1])

    @property
    def scaled(self) -> np.ndarray:
        """The phase matrix ``2*pi*sigma*w``."""
        return (2.0 * np.pi * self.sigma) * self.w

    @property
    def pinv(self) -> np.ndarray | None:
        return self._pinv

    def decoder(self) -> np.ndarray:
        if self._pinv is None:
            with self._lock:
                if self._pinv is None:
                    p = pseudoinverse(self.scaled)
                    p.flags.writeable = False
                    self._pinv = p
        return self._pinv

    def injectivity_radius(self) -> float:
        """Sup-norm radius below which no phase of ``2*pi*sigma*w @ x`` reaches pi.

        Each phase is bounded by ``2*pi*sigma*d_in*w_max*|x|_inf``, so
        ``|x|_inf < 1 / (2*sigma*d_in*w_max)`` keeps every phase in (-pi, pi).
        """
        return 1.0 / (2.0 * self.sigma * self.d_in * self.w_max)

    @property
    def invertible_shape(self) -> bool:
        return self.d_out >= 2 * self.d_in


def build_dynamic(d_in: int, d_out: int, sigma: float, primes: PrimeTable | None = None) -> PrimeBasis:
    k = _check_even(d_out)
    if d_in < 1:
        raise InvalidDimensionError(f"input dimension must be >= 1, got {d_in}")
    if not sigma > 0 or not np.isfinite(sigma):
        raise ValueError(f"sigma must be a positive finite number, got {sigma}")
    primes = primes or default_table()
    w = primes.slice_roots(k * d_in).reshape(k, d_in)
    w.flags.writeable = False
    return PrimeBasis(w=w, sigma=float(sigma), d_in=int(d_in), d_out=int(d_out))


def decoder(basis: PrimeBasis) -> PrimeBasis:
    """Populate the cached pseudoinverse; returns the same basis."""
    basis.decoder()
    return basis


def injectivity_radius(basis: PrimeBasis) -> float:
    return basis.injectivity_radius()


@dataclass(frozen=True, eq=False)
class StaticBasis:
    """Frequency vector ``omega = sqrt(first k primes)`` for sequence generation."""

    omega: np.ndarray
    d_out: int

    @property
    def k(self) -> int:
        return self.d_out // 2


def build_static(d_out: int, primes: PrimeTable | None = None) -> StaticBasis:
    k = _check_even(d_out)
    primes = primes or default_table()
    omega = primes.slice_roots(k)
    omega.flags.writeable = False
    return StaticBasis(omega=omega, d_out=int(d_out))
