import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import trial_division_primes
from primefreq.errors import ResourceExhaustedError
from primefreq.primes import CACHE_MAGIC, PrimeTable, estimate_limit, sieve_range, simple_sieve


ORACLE = trial_division_primes(110_000)


def test_first_primes(table):
    table.ensure_count(5)
    assert table.values[:5].tolist() == [2, 3, 5, 7, 11]


def test_ten_thousandth_prime(table):
    table.ensure_count(10_000)
    assert int(table.values[9999]) == 104729
    assert table.values[:10_000].tolist() == ORACLE[:10_000]


def test_sieve_matches_trial_division_to_1e5():
    t = PrimeTable().extend_to_limit(100_000)
    assert t.values.tolist() == [p for p in ORACLE if p <= 100_000]


def test_segmented_range_matches_plain_sieve():
    base = simple_sieve(1000)
    got = sieve_range(500_000, 1_000_000, base)
    ref = simple_sieve(999_999)
    assert np.array_equal(got, ref[ref >= 500_000])


def test_idempotent_when_already_large(table):
    table.ensure_count(100)
    before = table.values.copy()
    limit = table.sieve_limit
    table.ensure_count(50)
    assert np.array_equal(table.values, before)
    assert table.sieve_limit == limit


def test_growth_keeps_prefix(table):
    table.ensure_count(10)
    head = table.values[:10].copy()
    table.ensure_count(5000)
    assert np.array_equal(table.values[:10], head)
    assert table.values.dtype == np.uint64


def test_no_gaps_up_to_sieve_limit(table):
    table.ensure_count(3000)
    lim = table.sieve_limit
    assert table.values.tolist() == [p for p in ORACLE if p <= lim]


def test_small_counts_use_fixed_limit():
    assert estimate_limit(1) == estimate_limit(5) == 15
    # Rosser-type bound really bounds the n-th prime
    for n in (6, 100, 1000, 10_000):
        assert ORACLE[n - 1] <= estimate_limit(n)


def test_cap_exceeded_raises():
    t = PrimeTable(cap=1000)
    t.ensure_count(100)  # p_100 = 541
    with pytest.raises(ResourceExhaustedError):
        t.ensure_count(200)  # p_200 = 1223


def test_rejects_nonpositive_count(table):
    with pytest.raises(ValueError):
        table.ensure_count(0)


def test_values_are_read_only(table):
    table.ensure_count(5)
    with pytest.raises(ValueError):
        table.values[0] = 4


def test_slice_roots_examples(table):
    np.testing.assert_array_equal(table.slice_roots(1), [np.sqrt(2.0)])
    np.testing.assert_allclose(table.slice_roots(3), [1.4142135623730951, 1.7320508075688772, 2.23606797749979], rtol=0, atol=1e-15)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=5000))
def test_slice_roots_monotone_and_square_back(m):
    t = PrimeTable()
    r = t.slice_roots(m)
    assert r.shape == (m,)
    assert np.all(np.diff(r) > 0)
    primes = t.values[:m].astype(np.float64)
    # squaring the rounded root reproduces the prime to within one ulp
    assert np.all(np.abs(r * r - primes) <= np.spacing(primes))


def test_concurrent_growth_is_consistent():
    t = PrimeTable()
    errors = []

    def grow(m):
        try:
            t.ensure_count(m)
            assert len(t) >= m
        except Exception as exc:  # pragma: no cover - reported below
            errors.append(exc)

    threads = [threading.Thread(target=grow, args=(m,)) for m in (100, 5000, 2000, 10_000, 50)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors
    assert t.values[:10_000].tolist() == ORACLE[:10_000]


def test_cache_roundtrip(tmp_path, table):
    table.ensure_count(1234)
    path = tmp_path / "primes.bin"
    table.save(path)
    blob = path.read_bytes()
    assert blob[:5] == CACHE_MAGIC
    assert int.from_bytes(blob[5:13], "little") == len(table)
    assert len(blob) == 13 + 8 * len(table)
    loaded = PrimeTable.load(path)
    assert np.array_equal(loaded.values, table.values)
    loaded.ensure_count(5000)
    assert loaded.values[:5000].tolist() == ORACLE[:5000]


def test_cache_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOPE!" + b"\0" * 8)
    with pytest.raises(ValueError):
        PrimeTable.load(bad)
    short = tmp_path / "short.bin"
    short.write_bytes(CACHE_MAGIC + (3).to_bytes(8, "little") + (2).to_bytes(8, "little"))
    with pytest.raises(ValueError):
        PrimeTable.load(short)
