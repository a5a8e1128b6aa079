"""Independent reference computations, kept separate from the code under test."""
import math

import mpmath


def trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        r = math.isqrt(n)
        if all(n % p for p in out if p <= r):
            out.append(n)
    return out


def torus_point(phase_expr):
    """(cos, sin) at 40 digits for a phase given as an mpmath expression."""
    with mpmath.workdps(40):
        v = phase_expr()
        return float(mpmath.cos(v)), float(mpmath.sin(v))
