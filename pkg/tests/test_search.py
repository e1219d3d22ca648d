from fractions import Fraction

import pytest

from multiperfect.arith import sigma_by_divisors
from multiperfect.search import (
    SearchConfig,
    abundancy,
    oracle_families,
    oracle_suite,
    search_kperfect,
)


def test_abundancy_examples():
    assert abundancy(6) == Fraction(2, 1)
    assert abundancy(120) == Fraction(3, 1)
    assert abundancy(1) == Fraction(1, 1)
    assert abundancy(10) == Fraction(9, 5)
    with pytest.raises(ValueError):
        abundancy(0)


def test_search_classical_perfects():
    report = search_kperfect(SearchConfig(k=2, bound=10_000))
    assert report.hits == [6, 28, 496, 8128]


def test_search_3perfect():
    report = search_kperfect(SearchConfig(k=3, bound=1000))
    assert report.hits == [120, 672]


def test_search_odd_only_empty():
    report = search_kperfect(SearchConfig(k=2, bound=50_000, odd_only=True))
    assert report.hits == []


def test_worker_count_independence():
    reports = [
        search_kperfect(SearchConfig(k=2, bound=9000, workers=w)) for w in (1, 4, 8)
    ]
    assert reports[0].hits == reports[1].hits == reports[2].hits == [6, 28, 496, 8128]


def test_hits_verified_by_divisor_enumeration():
    report = search_kperfect(SearchConfig(k=3, bound=1000, workers=2))
    for h in report.hits:
        assert sigma_by_divisors(h) == 3 * h


def test_shape_pruning_soundness():
    plain = search_kperfect(SearchConfig(k=2, bound=20_000, odd_only=True))
    pruned = search_kperfect(
        SearchConfig(k=2, bound=20_000, odd_only=True, shape_filter=2),
        debug_recheck=True,
    )
    assert pruned.hits == plain.hits == []
    assert pruned.pruned_count > 0


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(k=1, bound=100)
    with pytest.raises(ValueError):
        SearchConfig(k=2, bound=100, workers=0)


def test_oracle_unknown_family():
    with pytest.raises(ValueError, match="unknown oracle family"):
        oracle_suite("no-such-family")


def test_oracle_families_all_pass_small():
    # shrunk ranges; the full published grids run in the acceptance suite
    small = {
        "nu2-sigma": {"p_max": 60, "e_max": 20},
        "nu2-sigma-minus-one": {"p_max": 60, "e_max": 20},
        "broughan-zhou": {"p_max": 60, "e_max": 19},
        "valuation-identity": {"n_max": 5000},
        "euler-divisibility": {"prime_max": 30, "beta_max": 5},
        "fermat-criterion": {"p_max": 60, "beta_max": 4},
        "half-sigma-mod8": {"pi_max": 120},
        "mod16-tables": {},
        "remark-parity": {"n_squares": 300},
        "sigma-enumeration": {"n_max": 2000},
    }
    assert sorted(small) == oracle_families()
    for family, ranges in small.items():
        rep = oracle_suite(family, **ranges)
        assert rep.passed, rep.counterexamples
        assert rep.instances > 0


def test_oracle_aliases():
    rep = oracle_suite("thm3.3-mod16")
    assert rep.family == "mod16-tables" and rep.passed
