import pytest

from rainbowmatch.core import validate_family
from rainbowmatch.exact import has_full_rainbow_matching, max_rainbow_matching
from rainbowmatch.generators import InvalidParameter, mix_seed, random_family
from rainbowmatch.harness import (check_near_full, check_upper_bound, pin_f2,
                                  search_lower_bound, two_color_families)


def test_upper_bound_n5():
    r = check_upper_bound(5, 9, trials=300, seed=1)
    assert r.ok and r.tested == r.full == 300
    assert sum(r.details['routes'].values()) == 300


@pytest.mark.parametrize('method', ['greedy', 'exact'])
def test_upper_bound_other_methods(method):
    r = check_upper_bound(3, 5, trials=100, seed=2, method=method, host=7)
    assert r.ok and r.full == 100


def test_greedy_can_fall_short_and_witness_replays():
    r = check_upper_bound(4, 4, trials=200, seed=0, method='greedy')
    assert r.violations > 0 and len(r.witnesses) == r.violations
    for w in r.witnesses[:10]:
        f = validate_family(w['instance'])
        assert max_rainbow_matching(f).size == w['max_rainbow']
        assert w['returned'] is not None


def test_constructive_refuses_small_sizes():
    with pytest.raises(InvalidParameter):
        check_upper_bound(4, 6, trials=1)


def test_two_color_count():
    assert sum(1 for _ in two_color_families(3)) == 2400
    assert sum(1 for _ in two_color_families(1)) == 4


def test_exhaustive_only_n2():
    with pytest.raises(InvalidParameter):
        check_upper_bound(3, 6, exhaustive=True)


def test_pin_f2():
    assert pin_f2() == {'families_checked': 2400, 'all_full': True,
                        'cycle_max_rainbow': 1, 'f2': 3}


def test_exhaustive_size_two_fails():
    r = check_upper_bound(2, 2, method='exact', exhaustive=True)
    assert r.violations > 0


@pytest.mark.parametrize('n', [2, 3, 4])
def test_lower_search_finds_cycles(n):
    r = search_lower_bound(n, n, iterations=10, seed=0)
    assert r.details['found'] and r.ok
    w = r.witnesses[0]
    assert max_rainbow_matching(validate_family(w['instance'])).size == w['max_rainbow'] < n


def test_lower_search_above_threshold_finds_nothing():
    r = search_lower_bound(3, 6, iterations=150, seed=4)
    assert not r.details['found'] and r.ok and r.tested == 150


def test_near_full_latin():
    r = check_near_full(4, 'latin-exhaustive')
    assert r.tested == 576 and r.ok
    assert check_near_full(6, 'latin-random', trials=10, seed=3).ok


def test_near_full_random_and_cycle():
    assert check_near_full(5, 'random', trials=200, seed=9).ok
    r = check_near_full(5, 'cycle')
    assert r.ok and r.tested == 4 and r.details['routes'] == {'max=4': 4}


def test_bad_mode():
    with pytest.raises(InvalidParameter):
        check_near_full(3, 'bogus')


def test_reports_are_deterministic():
    a = check_upper_bound(4, 7, trials=60, seed=5)
    b = check_upper_bound(4, 7, trials=60, seed=5)
    assert a.to_json() == b.to_json()
    assert a.to_json() != check_upper_bound(4, 7, trials=60, seed=6).to_json()


def test_parallel_matches_serial():
    a = check_upper_bound(4, 7, trials=40, seed=5, jobs=1)
    b = check_upper_bound(4, 7, trials=40, seed=5, jobs=2)
    assert a.to_json() == b.to_json()
    c = check_near_full(5, 'random', trials=30, seed=2, jobs=2)
    assert c.to_json() == check_near_full(5, 'random', trials=30, seed=2).to_json()


def test_timing_opt_in():
    r = check_upper_bound(2, 4, trials=5, seed=0)
    assert 'duration_s' not in r.to_dict()
    assert 'duration_s' in r.to_dict(timing=True)


def test_upper_bound_seed7_cross_checked():
    r = check_upper_bound(5, 9, trials=1000, seed=7)
    assert r.ok and r.full == 1000
    assert all(has_full_rainbow_matching(random_family(5, 9, 9, 9, mix_seed(7, t)))
               for t in range(0, 1000, 10))


def test_greedy_at_2n_minus_1():
    assert check_upper_bound(4, 7, trials=300, seed=0, method='greedy').ok


def test_lower_search_pigeonhole_case():
    r = search_lower_bound(2, 3, iterations=300, seed=1)
    assert not r.details['found'] and not r.witnesses and r.tested == 300


def test_cycle_mode_exact_values():
    r = check_near_full(6, 'cycle')
    assert r.ok and r.details['routes'] == {'max=5': 5}


def test_near_full_random_500():
    r = check_near_full(5, 'random', trials=500, seed=0)
    assert r.ok and r.params['size'] == 7
