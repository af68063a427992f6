import math
from fractions import Fraction

import pytest

from young.asymptotics import C, log_of_count
from young.counting import (
    RestrictedCountTable,
    _gaussian_coeff,
    coeff_from_product,
    count_partitions,
    count_restricted,
    joint_tail,
    load_or_build,
)
from young.partitions import enumerate_partitions, partitions


def test_count_partitions_values():
    assert count_partitions(0) == 1
    assert count_partitions(5) == 7
    assert count_partitions(100) == 190569292
    with pytest.raises(ValueError):
        count_partitions(-1)


def test_count_partitions_matches_enumeration():
    for n in range(26):
        assert count_partitions(n) == enumerate_partitions(n)


def test_count_restricted_examples():
    assert count_restricted(4, 2, 2) == 1
    assert count_restricted(5, 3, 2) == 1
    assert count_restricted(20, 20, 20) == count_partitions(20)
    assert count_restricted(0, 0, 0) == 1
    assert count_restricted(3, 0, 3) == 0
    assert count_restricted(9, 2, 2) == 0  # exceeds box capacity


def test_count_restricted_matches_product_oracle():
    for n in range(17):
        for r in range(n + 1):
            for s in range(r, n + 1):
                want = coeff_from_product(n, r, s)
                assert count_restricted(n, r, s) == want
                assert count_restricted(n, s, r) == want


def test_product_oracle_case_30_5_7():
    assert coeff_from_product(30, 5, 7) == count_restricted(30, 5, 7)
    assert coeff_from_product(0, 4, 9) == 1


def test_product_oracle_truncation_guard():
    with pytest.raises(ValueError, match="truncation"):
        coeff_from_product(201, 5, 5)
    assert coeff_from_product(210, 3, 3, limit=210) == count_restricted(210, 3, 3)


def test_count_restricted_monotone():
    for r in range(13):
        assert count_restricted(12, r, 12) <= count_restricted(12, r + 1, 12)
        assert count_restricted(12, 12, r) <= count_restricted(12, 12, r + 1)


def test_count_restricted_matches_enumeration_filter():
    for n in range(1, 13):
        plist = list(partitions(n))
        for r in range(1, n + 1):
            for s in range(1, n + 1):
                direct = sum(1 for p in plist if p[0] <= r and len(p) <= s)
                assert count_restricted(n, r, s) == direct


def test_large_query_uses_exact_polynomial_path():
    # beyond the cube limit the Gaussian-binomial path must agree with the oracle
    assert count_restricted(250, 30, 20) == coeff_from_product(250, 30, 20, limit=250)
    assert count_restricted(150, 40, 37) == _gaussian_coeff(150, 40, 37)


def test_joint_tail_small_exact():
    jt = joint_tail(100, 0.5, 0.5)
    scale = math.sqrt(100) / C
    assert jt.r == math.ceil(scale * math.log(scale / 0.5))
    assert jt.s == jt.r
    expected = Fraction(coeff_from_product(100, jt.r, jt.s), count_partitions(100))
    assert jt.fraction == expected
    assert 0.0 < jt.value < 1.0


def test_joint_tail_degenerate_bounds():
    scale = math.sqrt(100) / C
    with pytest.raises(ValueError):
        joint_tail(100, scale, 1.0)  # log term hits zero
    with pytest.raises(ValueError):
        joint_tail(100, 0.5, -1.0)


def test_largest_part_table_entries():
    table = RestrictedCountTable.build(30)
    for v in range(31):
        for m in range(v + 1):
            assert table.entry(v, m) == count_restricted(v, m, v)
        row = table.row(v)
        assert all(row[i] <= row[i + 1] for i in range(len(row) - 1))
    assert table.entry(12, 40) == count_partitions(12)
    with pytest.raises(ValueError):
        table.entry(31, 3)


def test_box_table_entries():
    table = RestrictedCountTable.build(18, RestrictedCountTable.MODE_BOX)
    for n in range(19):
        for r in range(0, 19, 3):
            for s in range(0, 19, 4):
                assert table.entry(n, r, s) == count_restricted(n, r, s)


@pytest.mark.parametrize("mode", [RestrictedCountTable.MODE_LARGEST,
                                  RestrictedCountTable.MODE_BOX])
def test_table_cache_roundtrip(tmp_path, mode):
    table = RestrictedCountTable.build(15, mode)
    path = tmp_path / "t.ypt"
    table.save(path)
    loaded = RestrictedCountTable.load(path)
    assert loaded.mode == mode
    assert loaded.n_max == 15
    if mode == RestrictedCountTable.MODE_LARGEST:
        assert loaded.entry(15, 4) == table.entry(15, 4)
        assert loaded.row(10) == table.row(10)
    else:
        assert loaded.entry(15, 4, 7) == table.entry(15, 4, 7)


def test_table_cache_rejects_garbage(tmp_path):
    path = tmp_path / "bad.ypt"
    path.write_bytes(b"not a table at all")
    with pytest.raises(ValueError):
        RestrictedCountTable.load(path)


def test_load_or_build_uses_cache(tmp_path):
    first = load_or_build(12, cache_dir=str(tmp_path))
    assert (tmp_path / "counts-by-largest-part-12.ypt").exists()
    second = load_or_build(12, cache_dir=str(tmp_path))
    assert second.row(12) == first.row(12)


def test_log_of_count():
    assert math.isclose(log_of_count(7), math.log(7), rel_tol=1e-15)
    big = count_partitions(910)
    # p(910) has 31 digits; compare against string-length bracketing
    digits = len(str(big))
    assert (digits - 1) * math.log(10) < log_of_count(big) < digits * math.log(10)
    with pytest.raises(ValueError):
        log_of_count(0)
