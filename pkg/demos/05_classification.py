"""
Does reconstruction keep shape identity?
========================================

Clean and noisy versions of a spiral and of two circles are encoded and
decoded. At low sigma the reconstructions of the same shape stay alike and
different shapes stay apart; at sigma = 1 that structure is gone.
"""

import numpy as np

from primefreq.harness import run_classification_study

np.set_printoptions(precision=3, suppress=True)

for res in run_classification_study(d_outs=(128,)):
    print(f"sigma={res.sigma:g}, D={res.d_out}")
    print("  ", res.names)
    print(res.centered)
    print()
