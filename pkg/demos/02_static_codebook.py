"""
A deterministic sequence codebook
=================================

StaticPrime rows are positional codes: row t holds cos and sin of
2*pi*t*sqrt(p) for the first D/2 primes. No seed is involved.
"""

import numpy as np

from primefreq import build_static, generate_static, normalize_rows, report

basis = build_static(16)
print("frequencies:", np.round(basis.omega, 4))

cb = generate_static(basis, 1000)
print("row 0 (all phases zero):", cb.rows[0])

# unit rows are needed before computing coherence statistics
rep = report(normalize_rows(cb))
print(f"E_RMS {rep.e_rms:.4f}  mu_max {rep.mu_max:.4f}  welch {rep.welch:.4f}  ratio {rep.optimality_ratio:.3f}")

# rows never repeat, because the square roots of distinct primes are rationally independent
print("distinct rows:", len(np.unique(np.round(cb.rows, 12), axis=0)))
