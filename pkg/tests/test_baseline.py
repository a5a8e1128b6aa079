import numpy as np
import pytest

from primefreq.baseline import BaselineConfig, box_muller, generate_gaussian
from primefreq.encoder import GAUSSIAN_BASELINE
from primefreq.metrics import gram_offdiag


def test_unit_rows_and_metadata():
    cb = generate_gaussian(BaselineConfig(seed=42, n=300, dim=17))
    assert cb.source == GAUSSIAN_BASELINE
    assert cb.meta["seed"] == 42
    np.testing.assert_allclose(np.linalg.norm(cb.rows, axis=1), 1.0, rtol=0, atol=1e-12)


def test_same_seed_identical():
    a = generate_gaussian(BaselineConfig(seed=7, n=50, dim=8)).rows
    b = generate_gaussian(BaselineConfig(seed=7, n=50, dim=8)).rows
    assert a.tobytes() == b.tobytes()


def test_seed_isolation():
    ga = gram_offdiag(generate_gaussian(BaselineConfig(seed=1, n=40, dim=8)))
    gb = gram_offdiag(generate_gaussian(BaselineConfig(seed=2, n=40, dim=8)))
    assert np.any(ga != gb)


def test_box_muller_moments():
    z = box_muller(np.random.Generator(np.random.PCG64(0)), 400_001)
    assert z.size == 400_001
    assert abs(z.mean()) < 5 / np.sqrt(z.size)
    assert abs(z.var() - 1) < 0.01
    # fourth moment of a standard normal is 3
    assert abs(np.mean(z**4) - 3) < 0.05


def test_mean_abs_similarity_concentrates():
    vals = []
    for seed in range(5):
        sims = gram_offdiag(generate_gaussian(BaselineConfig(seed=seed, n=1000, dim=4096)))
        vals.append(np.mean(np.abs(sims)))
    target = 1 / np.sqrt(4096)
    assert target / 2 < np.mean(vals) < 2 * target


@pytest.mark.parametrize("seed", [42, 43, 44])
def test_offdiag_mean_unbiased(seed):
    n, dim = 500, 64
    sims = gram_offdiag(generate_gaussian(BaselineConfig(seed=seed, n=n, dim=dim)))
    assert abs(sims.mean()) < 3 / np.sqrt(n * (n - 1) / 2 * dim)


def test_config_validation():
    with pytest.raises(ValueError):
        BaselineConfig(n=0)
    with pytest.raises(ValueError):
        BaselineConfig(dim=0)
    with pytest.raises(ValueError):
        BaselineConfig(seed=-1)
