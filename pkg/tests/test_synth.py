import csv
import io

import numpy as np
import pytest

from primefreq.synth import EXTENT, make, make_circles, make_spiral


def test_spiral_parametric_noiseless():
    ds = make_spiral(400, 0.0, 1)
    r = np.linalg.norm(ds.points, axis=1)
    theta = r * EXTENT
    for c in (0, 1):
        m = ds.labels == c
        expect = theta[m, None] * np.column_stack([np.cos(theta[m] + c * np.pi), np.sin(theta[m] + c * np.pi)]) / EXTENT
        np.testing.assert_allclose(ds.points[m], expect, rtol=0, atol=1e-12)


def test_spiral_origin_at_theta_zero():
    # both arms start at the origin: rho = theta = 0
    for c in (0, 1):
        p = 0.0 * np.array([np.cos(c * np.pi), np.sin(c * np.pi)])
        assert np.all(p == 0)
    ds = make_spiral(2000, 0.0, 0)
    assert ds.points[np.argmin(np.linalg.norm(ds.points, axis=1))] == pytest.approx([0, 0], abs=2e-3)


def test_circles_radii():
    ds = make_circles(500, 0.0, 3)
    r = np.linalg.norm(ds.points, axis=1)
    np.testing.assert_allclose(r[ds.labels == 1], 1.0, atol=1e-12)
    np.testing.assert_allclose(r[ds.labels == 0], 0.5, atol=1e-12)


def test_circles_min_interclass_distance():
    ds = make_circles(600, 0.0, 4)
    a, b = ds.points[ds.labels == 0], ds.points[ds.labels == 1]
    dist = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    assert dist.min() == pytest.approx(0.5, abs=1e-9)
    assert dist.min() >= 0.5 - 1e-9


@pytest.mark.parametrize("kind", ["spiral", "circles"])
def test_deterministic_balanced_contained(kind):
    a, b = make(kind, 301, 0.5, 11), make(kind, 301, 0.5, 11)
    assert a.points.tobytes() == b.points.tobytes()
    assert abs(np.sum(a.labels == 0) - np.sum(a.labels == 1)) <= 1
    clean = make(kind, 301, 0.0, 11)
    assert np.all(np.linalg.norm(clean.points, axis=1) <= 1 + 1e-12)
    assert np.all(np.isfinite(a.points))


@pytest.mark.parametrize("kind", ["spiral", "circles"])
def test_noise_shares_underlying_points(kind):
    clean, noisy = make(kind, 200, 0.0, 5), make(kind, 200, 1.5, 5)
    np.testing.assert_array_equal(clean.labels, noisy.labels)
    resid = (noisy.points - clean.points) * EXTENT / 1.5
    # residual is the same standard-normal draw for both shapes
    assert 0.8 < resid.std() < 1.2


def test_noiseless_inside_low_sigma_radius():
    from primefreq.basis import build_dynamic
    r = build_dynamic(2, 128, 0.007).injectivity_radius()
    for kind in ("spiral", "circles"):
        assert make(kind, 1000, 0.0, 42).sup_norm() < r


def test_csv_export():
    ds = make_circles(6, 0.0, 0)
    rows = list(csv.reader(io.StringIO(ds.to_csv())))
    assert rows[0] == ["x", "y", "label"]
    assert len(rows) == 7
    assert float(rows[1][0]) == ds.points[0, 0]


def test_validation():
    with pytest.raises(ValueError):
        make_spiral(1)
    with pytest.raises(ValueError):
        make_circles(10, -1.0)
    with pytest.raises(ValueError):
        make("moons", 10)
