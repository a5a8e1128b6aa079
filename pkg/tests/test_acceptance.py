"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines are printed in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import trial_division_primes  # noqa: E402

from primefreq.basis import build_dynamic  # noqa: E402
from primefreq.cli import main as cli_main  # noqa: E402
from primefreq.encoder import forward, reverse  # noqa: E402
from primefreq.harness import checks  # noqa: E402
from primefreq.harness.bench import bench  # noqa: E402
from primefreq.harness.grid import GridSpec, run_orthogonality_grid, welch_population  # noqa: E402
from primefreq.harness.regimes import run_classification_study, run_regime_cell  # noqa: E402
from primefreq.metrics import report, rms_error, welch_bound  # noqa: E402
from primefreq.encoder import GAUSSIAN_BASELINE, Codebook  # noqa: E402
from primefreq.primes import PrimeTable  # noqa: E402
from primefreq.synth import make  # noqa: E402

LINES: dict[int, str] = {}


def record(num: int, title: str, passed: bool, detail: str) -> bool:
    LINES[num] = f"[{'PASS' if passed else 'FAIL'}] {num:2d}. {title}: {detail}"
    return passed


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- criteria -----------------------------------------------------------------

def c1_torus():
    def body():
        rng = np.random.default_rng(1)
        worst_pair = worst_norm = 0.0
        for d in (1, 2, 8):
            x = rng.uniform(-1, 1, size=(1000, d))
            for dout in (4, 64, 128):
                for s in (0.007, 1.0):
                    z = forward(build_dynamic(d, dout, s), x)
                    k = dout // 2
                    worst_pair = max(worst_pair, float(np.max(np.abs(z[:, :k] ** 2 + z[:, k:] ** 2 - 1))))
                    worst_norm = max(worst_norm, float(np.max(np.abs(np.sum(z * z, axis=1) - dout / 2))))
        return worst_pair, worst_norm
    (wp, wn), t = timed(body)
    ok = wp <= 1e-12 and wn <= 1e-9 and t < 5
    return record(1, "torus invariants", ok, f"max pair dev {wp:.2e} (<=1e-12), max |z|^2 dev {wn:.2e} (<=1e-9), {t:.2f}s (<5s)")


def c2_roundtrip():
    def body():
        basis = build_dynamic(2, 128, 0.007)
        r = basis.injectivity_radius()
        x = np.random.default_rng(2).uniform(-r / 2, r / 2, size=(1000, 2))
        return float(np.max(np.abs(reverse(basis, forward(basis, x)) - x))), r
    (err, r), t = timed(body)
    ok = err < 1e-8 and t < 5
    return record(2, "manifold roundtrip", ok, f"max error {err:.2e} (<1e-8) inside r/2={r / 2:.4g}, {t:.2f}s (<5s)")


def c3_hashing():
    def body():
        ds = make("spiral", 1000, 0.0, 42)
        lo = run_regime_cell(ds, 0.007, 128, True).recon_mse
        hi = run_regime_cell(ds, 1.0, 4, False).recon_mse
        return lo, hi
    (lo, hi), t = timed(body)
    ok = hi >= 1e3 * lo and t < 10
    return record(3, "hashing-regime failure", ok, f"mse(s=1,D=4) {hi:.3g} vs 1e3 x mse(s=0.007,D=128) {1e3 * lo:.3g}, {t:.2f}s (<10s)")


_GRID = {}


def default_grid():
    if "res" not in _GRID:
        _GRID["res"], _GRID["t"] = timed(lambda: run_orthogonality_grid(GridSpec()))
    return _GRID["res"], _GRID["t"]


def c4_orthogonality():
    res, t = default_grid()
    cs = checks.check_orthogonality(res.summary)
    ok = all(c.passed for c in cs) and t < 120
    return record(4, "orthogonality ordering", ok, "; ".join(c.detail for c in cs) + f"; {t:.1f}s (<120s)")


def c5_welch_population():
    res, t = default_grid()
    t0 = time.perf_counter()
    cs = checks.check_welch_population(welch_population(res.reports))
    t += time.perf_counter() - t0
    ok = all(c.passed for c in cs) and t < 120
    detail = "; ".join(f"{c.name} {'ok' if c.passed else 'FAILED'} ({c.detail})" for c in cs)
    return record(5, "welch population ordering", ok, detail + f"; {t:.1f}s (<120s)")


def c6_welch_sanity():
    res, _ = default_grid()
    c = checks.check_welch_lower_bound(res.reports)
    return record(6, "welch lower-bound sanity", c.passed, c.detail)


def c7_classification():
    res, t = timed(run_classification_study)
    cs = checks.check_classification(res)
    ok = all(c.passed for c in cs) and len(cs) == 3 and t < 30
    return record(7, "classification study", ok, "; ".join(c.detail for c in cs) + f"; {t:.2f}s (<30s)")


def c8_golden():
    w = welch_bound(8, 4)
    r = rms_error([0.3, -0.4])
    ang = np.deg2rad([0.0, 120.0, 240.0])
    ratio = report(Codebook(np.column_stack([np.cos(ang), np.sin(ang)]), GAUSSIAN_BASELINE)).optimality_ratio
    # oracles: sqrt(4/28) = 1/sqrt(7); sqrt((0.09 + 0.16)/2) = sqrt(1/8)
    ok = (abs(w - 1 / math.sqrt(7)) <= 1e-15 and abs(r - math.sqrt(0.125)) <= 1e-15
          and abs(ratio - 1.0) <= 1e-9)
    return record(8, "metric golden values", ok, f"welch(8,4)={w:.17g}, rms={r:.17g}, simplex ratio={ratio:.12f}")


def c9_primes():
    oracle = trial_division_primes(104729)
    table = PrimeTable().ensure_count(10_000)
    got = table.values[:10_000].tolist()
    ok = got == oracle[:10_000] and got[-1] == 104729 and len(oracle) == 10_000
    return record(9, "prime oracle", ok, f"first 10^4 match trial division: {got == oracle[:10_000]}, p_10000={got[-1]}")


def c10_complexity():
    rows, t = timed(lambda: bench(trials=5))
    gen = [r.ratio for r in rows if r.op == "static_generate" and r.ratio is not None]
    init = [r.ratio for r in rows if r.op == "static_init" and r.ratio is not None]
    ok = all(1.5 <= x <= 3.0 for x in gen) and all(x < 1.5 for x in init) and t < 60
    return record(10, "complexity bands", ok,
                  f"generate doubling {', '.join(f'{x:.2f}' for x in gen)} in [1.5,3.0]; "
                  f"init {', '.join(f'{x:.2f}' for x in init)} flat (<1.5); {t:.1f}s (<60s)")


def c11_determinism(tmp: Path):
    outs = []
    for name in ("run_a", "run_b"):
        code = cli_main(["eval", "orthogonality", "--out", str(tmp / name)])
        outs.append((code, (tmp / name / "reports.csv").read_bytes()))
    ok = outs[0][0] == outs[1][0] == 0 and outs[0][1] == outs[1][1]
    return record(11, "determinism", ok, f"reports.csv byte-identical across two runs: {outs[0][1] == outs[1][1]} "
                                         f"({len(outs[0][1])} bytes)")


# -- pytest wrappers -------------------------------------------------------------

def test_c01_torus_invariants():
    assert c1_torus(), LINES[1]


def test_c02_roundtrip():
    assert c2_roundtrip(), LINES[2]


def test_c03_hashing_failure():
    assert c3_hashing(), LINES[3]


@pytest.mark.slow
def test_c04_orthogonality_ordering():
    assert c4_orthogonality(), LINES[4]


@pytest.mark.slow
def test_c05_welch_population():
    assert c5_welch_population(), LINES[5]


@pytest.mark.slow
def test_c06_welch_lower_bound():
    assert c6_welch_sanity(), LINES[6]


def test_c07_classification():
    assert c7_classification(), LINES[7]


def test_c08_metric_golden_values():
    assert c8_golden(), LINES[8]


def test_c09_prime_oracle():
    assert c9_primes(), LINES[9]


@pytest.mark.slow
def test_c10_complexity_bands():
    assert c10_complexity(), LINES[10]


@pytest.mark.slow
def test_c11_determinism(tmp_path, capsys):
    ok = c11_determinism(tmp_path)
    capsys.readouterr()
    assert ok, LINES[11]


if __name__ == "__main__":
    import tempfile

    results = [c1_torus(), c2_roundtrip(), c3_hashing(), c4_orthogonality(), c5_welch_population(),
               c6_welch_sanity(), c7_classification(), c8_golden(), c9_primes(), c10_complexity()]
    with tempfile.TemporaryDirectory() as d:
        import contextlib
        import io
        with contextlib.redirect_stdout(io.StringIO()):
            results.append(c11_determinism(Path(d)))
    for k in sorted(LINES):
        print(LINES[k])
    sys.exit(0 if all(results) else 1)
