"""
Crosstalk against a random Gaussian codebook
============================================

Same N and D, two codebooks: the prime one and normalized Gaussian rows.
The prime rows have slightly lower RMS similarity in every cell.
"""

from primefreq import BaselineConfig, build_static, generate_gaussian, generate_static, normalize_rows, report

for n in (500, 1000, 2000):
    for d in (16, 64, 256):
        p = report(normalize_rows(generate_static(build_static(d), n)))
        g = [report(generate_gaussian(BaselineConfig(seed=s, n=n, dim=d))).e_rms for s in range(42, 47)]
        g_mean = sum(g) / len(g)
        print(f"N={n:5d} D={d:4d}  prime {p.e_rms:.5f}  gaussian {g_mean:.5f}  "
              f"reduction {100 * (g_mean - p.e_rms) / g_mean:5.2f}%")
