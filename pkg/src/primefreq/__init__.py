"""Deterministic prime-frequency feature maps.

``StaticPrime`` sequence codebooks and the ``DynamicPrime`` forward/reverse
map, plus coherence metrics and a normalized-Gaussian baseline to compare
against.
"""
from .baseline import BaselineConfig, generate_gaussian
from .basis import PrimeBasis, StaticBasis, build_dynamic, build_static, decoder, injectivity_radius
from .encoder import Codebook, forward, generate_static, normalize_rows, reverse
from .errors import PrimeFreqError
from .metrics import GramReport, gram_offdiag, report, rms_error, welch_bound
from .primes import PrimeTable, default_table
from .synth import Dataset2D, make_circles, make_spiral

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig", "Codebook", "Dataset2D", "GramReport", "PrimeBasis", "PrimeFreqError",
    "PrimeTable", "StaticBasis", "build_dynamic", "build_static", "decoder", "default_table",
    "forward", "generate_gaussian", "generate_static", "gram_offdiag", "injectivity_radius",
    "make_circles", "make_spiral", "normalize_rows", "report", "reverse", "rms_error", "welch_bound",
]
