import numpy as np
import pytest

import sievestats as ss
from sievestats.kinds import parse_kind
from sievestats.sieves import (
    oracle_value,
    read_table_csv,
    sieve_table,
    trial_factors,
    write_table_csv,
)

ALL_KINDS = [
    ss.PRIME,
    ss.TWIN_PRIME,
    ss.SQUAREFREE,
    ss.MOEBIUS,
    ss.LIOUVILLE,
    ss.PARITY_WEIGHT,
    ss.omega_equals(2),
    ss.VON_MANGOLDT,
]


def test_moebius_first_ten():
    table = sieve_table(ss.MOEBIUS, 1, 10)
    assert table.values.tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_moebius_at_one():
    assert sieve_table(ss.MOEBIUS, 1, 1).values.tolist() == [1]


def test_prime_indicator_first_ten():
    table = sieve_table(ss.PRIME, 1, 10)
    assert table.values.tolist() == [0, 1, 1, 0, 1, 0, 1, 0, 0, 0]


def test_parity_weight_first_six():
    table = sieve_table(ss.PARITY_WEIGHT, 1, 6)
    assert table.values.tolist() == [2, -1, -1, 0, -1, 2]


def test_twin_prime_small():
    table = sieve_table(ss.TWIN_PRIME, 1, 30)
    expected = [1 if n in (3, 5, 11, 17, 29) else 0 for n in range(1, 31)]
    assert table.values.tolist() == expected


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_sieve_matches_oracle(kind):
    hi = 3000
    table = sieve_table(kind, 1, hi)
    for n in range(1, hi + 1):
        expected = oracle_value(kind, n)
        if kind.is_integer_valued:
            assert table.value_at(n) == expected, f"{kind} at n={n}"
        else:
            assert table.value_at(n) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_segmentation_invariance(kind):
    one = sieve_table(kind, 1, 30000, segment_size=1 << 20)
    many = sieve_table(kind, 1, 30000, segment_size=977)
    assert np.array_equal(one.values, many.values)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_offset_window_matches_full_sieve(kind):
    lo, hi = 12345, 14321
    window = sieve_table(kind, lo, hi, segment_size=500)
    full = sieve_table(kind, 1, hi)
    assert np.array_equal(window.values, full.values[lo - 1 :])


def test_workers_produce_identical_tables():
    serial = sieve_table(ss.MOEBIUS, 1, 10**6, segment_size=1 << 17, workers=1)
    parallel = sieve_table(ss.MOEBIUS, 1, 10**6, segment_size=1 << 17, workers=4)
    assert np.array_equal(serial.values, parallel.values)


def test_cross_kind_consistency(mu_table, sf_table, pw_table):
    mu = mu_table.values
    sf = sf_table.values
    pw = pw_table.values
    lv = sieve_table(ss.LIOUVILLE, 1, 10**6).values
    assert np.array_equal(mu == 0, sf == 0)
    assert np.array_equal(pw == 0, sf == 0)
    squarefree = sf == 1
    assert np.array_equal(mu[squarefree], lv[squarefree])


def test_alphabets_respected(mu_table, pw_table):
    assert set(np.unique(mu_table.values)) <= {-1, 0, 1}
    assert set(np.unique(pw_table.values)) <= {-1, 0, 2}


def test_squarefree_count_identity():
    n = 20000
    sf = sieve_table(ss.SQUAREFREE, 1, n).values
    # Direct marking of multiples of p^2, independent of the sieve internals.
    struck = np.zeros(n + 1, dtype=bool)
    p = 2
    while p * p <= n:
        if all(p % q for q in range(2, p)):
            struck[p * p :: p * p] = True
        p += 1
    assert int(sf.sum()) == n - int(struck[1:].sum())


def test_factor_signature_examples():
    assert ss.factor_signature(1) == ss.FactorSignature(0, 0, True)
    assert ss.factor_signature(12) == ss.FactorSignature(2, 3, False)
    assert ss.factor_signature(30) == ss.FactorSignature(3, 3, True)


def test_factor_signature_properties():
    for n in range(1, 500):
        sig = ss.factor_signature(n)
        assert sig.omega <= sig.big_omega
        assert sig.squarefree == (sig.omega == sig.big_omega)


def test_factor_signature_rejects_zero():
    with pytest.raises(ValueError):
        ss.factor_signature(0)
    with pytest.raises(ValueError):
        trial_factors(0)


def test_range_validation():
    with pytest.raises(ValueError, match="invalid range"):
        sieve_table(ss.MOEBIUS, 10, 2)
    with pytest.raises(ValueError, match="exceeds the configured maximum"):
        sieve_table(ss.MOEBIUS, 1, 10**10)
    with pytest.raises(ValueError, match="k >= 1"):
        ss.omega_equals(0)


def test_kind_parsing_round_trip():
    for kind in ALL_KINDS:
        assert parse_kind(str(kind)) == kind
    with pytest.raises(ValueError):
        parse_kind("totient")


def test_value_at_range_check():
    table = sieve_table(ss.MOEBIUS, 5, 10)
    assert table.value_at(6) == 1
    with pytest.raises(ValueError):
        table.value_at(4)


@pytest.mark.parametrize("kind", [ss.MOEBIUS, ss.VON_MANGOLDT], ids=str)
def test_csv_cache_round_trip(kind, tmp_path):
    table = sieve_table(kind, 3, 500)
    path = tmp_path / "cache.csv"
    write_table_csv(table, path)
    loaded = read_table_csv(path)
    assert loaded.kind == kind
    assert (loaded.lo, loaded.hi) == (3, 500)
    assert np.array_equal(loaded.values, table.values)


def test_csv_cache_header_line(tmp_path):
    table = sieve_table(ss.omega_equals(3), 1, 5)
    path = tmp_path / "omega.csv"
    write_table_csv(table, path)
    assert path.read_text().splitlines()[0] == "omega_equals:3,1,5"


def test_csv_cache_rejects_out_of_alphabet_values(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("moebius,1,3\n1\n300\n-1\n")
    with pytest.raises(ValueError, match="alphabet"):
        read_table_csv(path)
