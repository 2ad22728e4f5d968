import pytest

from rainbowmatch.core import Edge, is_rainbow_matching, validate_family, family_to_dict
from rainbowmatch.exact import has_full_rainbow_matching, max_rainbow_matching
from rainbowmatch.generators import (
    InvalidParameter, LatinSquare, NotLatin, cycle_family, cycle_family_extended,
    cyclic_latin_square, latin_square_by_index, latin_square_family, latin_squares,
    mix_seed, planted_near_full, random_family, random_latin_square,
)
from rainbowmatch.solver import required_size

from naive import naive_has_transversal


class TestCycle:

    def test_n2(self):
        f = cycle_family(2, 1)
        assert f[1] == (Edge(0, 0), Edge(1, 1))
        assert set(f[2]) == {Edge(0, 1), Edge(1, 0)}
        assert not has_full_rainbow_matching(f)

    def test_n3(self):
        f = cycle_family(3, 1)
        assert set(f[1]) == {(0, 0), (1, 1), (2, 2)}
        assert set(f[2]) == set(f[3]) == {(0, 2), (1, 0), (2, 1)}
        assert max_rainbow_matching(f).size == 2

    def test_union_is_a_cycle(self):
        f = cycle_family(5, 2)
        edges = set(f[1]) | set(f[5])
        assert len(edges) == 10
        # every vertex has degree 2 in the union
        for v in range(5):
            assert sum(e.u == v for e in edges) == 2
            assert sum(e.w == v for e in edges) == 2

    @pytest.mark.parametrize('n', range(2, 9))
    def test_no_full_for_k_below_n(self, n):
        for k in range(1, n):
            assert not has_full_rainbow_matching(cycle_family(n, k))

    def test_k_equals_n_has_full(self):
        assert has_full_rainbow_matching(cycle_family(4, 4))

    @pytest.mark.parametrize('n', range(2, 7))
    def test_extended(self, n):
        f = cycle_family_extended(n)
        assert f.n == 2 * n - 2
        assert all(s == n for s in f.sizes())
        assert max_rainbow_matching(f, target=n).size < n

    @pytest.mark.parametrize('n,k', [(1, 1), (3, 0), (3, 4)])
    def test_bad_params(self, n, k):
        with pytest.raises(InvalidParameter):
            cycle_family(n, k)


class TestLatin:

    def test_counts(self):
        assert [sum(1 for _ in latin_squares(n)) for n in (1, 2, 3, 4)] == [1, 2, 12, 576]

    def test_all_distinct(self):
        squares = [L.cells for L in latin_squares(4)]
        assert len(set(squares)) == 576

    def test_order_two(self):
        f = latin_square_family(LatinSquare.from_rows([[0, 1], [1, 0]]))
        assert f.matchings == ((Edge(0, 0), Edge(1, 1)), (Edge(0, 1), Edge(1, 0)))
        assert max_rainbow_matching(f).size == 1

    def test_order_three_cyclic(self):
        L = cyclic_latin_square(3)
        f = latin_square_family(L)
        # the diagonal carries symbols 0, 2, 1, i.e. colors 1, 3, 2
        r = {1: Edge(0, 0), 3: Edge(1, 1), 2: Edge(2, 2)}
        assert is_rainbow_matching(f, r)
        assert has_full_rainbow_matching(f)

    def test_order_one(self):
        f = latin_square_family(LatinSquare.from_rows([[0]]))
        assert f.matchings == ((Edge(0, 0),),)
        assert has_full_rainbow_matching(f)

    @pytest.mark.parametrize('L', list(latin_squares(3)), ids=str)
    def test_partition(self, L):
        f = latin_square_family(L)
        edges = [e for m in f.matchings for e in m]
        assert len(edges) == 9 == len(set(edges))
        assert all(len(m) == 3 for m in f.matchings)

    @pytest.mark.parametrize('rows', [[[0, 1], [0, 1]], [[0, 0], [1, 1]], [[0, 2], [2, 0]], [[0]] * 2])
    def test_not_latin(self, rows):
        with pytest.raises(NotLatin):
            LatinSquare.from_rows(rows)

    def test_by_index(self):
        assert latin_square_by_index(3, 0).cells == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
        with pytest.raises(InvalidParameter):
            latin_square_by_index(2, 2)

    @pytest.mark.parametrize('order', [1, 2, 5, 8, 10])
    def test_random_is_latin_and_deterministic(self, order):
        a = random_latin_square(order, 5)
        assert a == random_latin_square(order, 5)
        assert a.order == order

    def test_oracle_agrees_with_permutation_search(self):
        for L in latin_squares(4):
            f = latin_square_family(L)
            assert has_full_rainbow_matching(f) == naive_has_transversal(L.cells)


class TestRandom:

    def test_deterministic(self):
        assert random_family(3, 6, 8, 8, 42) == random_family(3, 6, 8, 8, 42)
        assert random_family(3, 6, 8, 8, 42) != random_family(3, 6, 8, 8, 43)

    def test_frozen_output(self):
        # pins the seed mixing and sampling scheme across platforms
        assert family_to_dict(random_family(2, 2, 3, 3, 0)) == FROZEN_RANDOM

    def test_saturates_right_side(self):
        f = random_family(4, 5, 9, 5, 1)
        for m in f.matchings:
            assert {e.w for e in m} == set(range(5))

    @pytest.mark.parametrize('seed', range(100))
    def test_valid(self, seed):
        f = random_family(4, 7, 10, 10, seed)
        assert validate_family(family_to_dict(f)) == f
        assert f.sizes() == [7] * 4

    @pytest.mark.parametrize('args', [(0, 1, 2, 2), (2, 3, 2, 5), (2, 3, 5, 2)])
    def test_bad_params(self, args):
        with pytest.raises(InvalidParameter):
            random_family(*args, seed=0)

    def test_mix_seed(self):
        assert mix_seed(0, 0) != mix_seed(0, 1) != mix_seed(1, 0)
        assert 0 <= mix_seed(2**40, 7) < 2**64
        assert mix_seed(7, 3) == FROZEN_MIX

    def test_mix_seed_is_splitmix64(self):
        # first output of the reference SplitMix64 generator seeded with 0
        assert mix_seed(0, 0) == 0xE220A8397B1DCDAF


FROZEN_MIX = 18244702527029869672
FROZEN_RANDOM = {'u_size': 3, 'w_size': 3, 'matchings': [[[0, 2], [2, 1]], [[0, 1], [1, 0]]]}


class TestPlanted:

    @pytest.mark.parametrize('n', [6, 7, 8, 9])
    def test_shape(self, n):
        f, R = planted_near_full(n, 3)
        assert f.sizes() == [required_size(n)] * n
        assert R.size == n - 1 and n not in R
        assert is_rainbow_matching(f, R)
        assert f == planted_near_full(n, 3)[0]

    def test_small_n_rejected(self):
        with pytest.raises(InvalidParameter):
            planted_near_full(5, 0)
