import json

import pytest
from hypothesis import given, settings, strategies as st

from rainbowmatch.core import (
    DuplicateEdge, Edge, InvalidAssignment, InvalidFamily, InvalidVertex,
    NotAMatching, RainbowMatching, edges_between, family_from_json,
    family_to_dict, family_to_json, free_vertices, is_rainbow_matching,
    rainbow_from_json, rainbow_to_json, validate_family,
)
from rainbowmatch.generators import cycle_family


def fam(u_size, w_size, *matchings):
    return validate_family({'u_size': u_size, 'w_size': w_size,
                            'matchings': [list(map(list, m)) for m in matchings]})


@st.composite
def families(draw, max_n=4, max_side=5):
    u_size = draw(st.integers(1, max_side))
    w_size = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_n))
    ms = []
    for _ in range(n):
        us = draw(st.permutations(range(u_size)))
        ws = draw(st.permutations(range(w_size)))
        k = draw(st.integers(0, min(u_size, w_size)))
        ms.append(list(zip(us[:k], ws[:k])))
    return fam(u_size, w_size, *ms)


class TestValidate:

    def test_valid_single_matching(self):
        f = fam(2, 2, [(0, 0), (1, 1)])
        assert f.n == 1
        assert f[1] == (Edge(0, 0), Edge(1, 1))

    def test_shared_left_vertex(self):
        with pytest.raises(NotAMatching) as exc:
            fam(2, 2, [(0, 0), (0, 1)])
        assert (exc.value.color, exc.value.side, exc.value.vertex) == (1, 'u', 0)

    def test_shared_right_vertex(self):
        with pytest.raises(NotAMatching) as exc:
            fam(2, 2, [(0, 1)], [(0, 0), (1, 0)])
        assert (exc.value.color, exc.value.side, exc.value.vertex) == (2, 'w', 0)

    def test_out_of_range(self):
        with pytest.raises(InvalidVertex):
            fam(1, 1, [(0, 2)])
        with pytest.raises(InvalidVertex):
            fam(1, 1, [(-1, 0)])

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            fam(2, 2, [(0, 0), (0, 0)])

    def test_repeated_edges_across_colors_allowed(self):
        f = fam(2, 2, [(0, 0)], [(0, 0)])
        assert f[1] == f[2]

    @pytest.mark.parametrize('raw', [
        [],
        {'u_size': 1, 'w_size': 1},
        {'u_size': 1, 'w_size': 1, 'matchings': []},
        {'u_size': 'a', 'w_size': 1, 'matchings': [[]]},
        {'u_size': 1, 'w_size': 1, 'matchings': [[[0]]]},
        {'u_size': 1, 'w_size': 1, 'matchings': [[[0, True]]]},
    ])
    def test_malformed(self, raw):
        with pytest.raises(InvalidFamily):
            validate_family(raw)

    def test_isolated_vertices_kept(self):
        f = fam(5, 7, [(0, 0)])
        assert (f.u_size, f.w_size) == (5, 7)

    @given(families())
    def test_json_round_trip(self, f):
        assert family_from_json(family_to_json(f)) == f
        assert validate_family(json.loads(json.dumps(family_to_dict(f)))) == f


class TestRainbow:

    def test_full(self):
        f = fam(2, 2, [(0, 0)], [(1, 1)])
        r = RainbowMatching({1: Edge(0, 0), 2: Edge(1, 1)})
        assert is_rainbow_matching(f, r)
        assert r.is_full(f)

    def test_shared_vertex(self):
        f = fam(2, 2, [(0, 0)], [(0, 1)])
        v = is_rainbow_matching(f, {1: (0, 0), 2: (0, 1)})
        assert not v
        assert 'u=0' in v.reason

    def test_wrong_color(self):
        f = fam(2, 2, [(0, 0)], [(1, 1)])
        v = is_rainbow_matching(f, {1: (1, 1)})
        assert not v
        assert 'F_1' in v.reason

    def test_color_out_of_range(self):
        f = fam(2, 2, [(0, 0)])
        assert not is_rainbow_matching(f, {2: (0, 0)})

    def test_empty_is_rainbow(self):
        assert is_rainbow_matching(fam(1, 1, [(0, 0)]), {})

    def test_json_round_trip(self):
        r = RainbowMatching({2: Edge(1, 0), 1: Edge(0, 3)})
        text = rainbow_to_json(r)
        assert json.loads(text) == {'assignment': [[1, [0, 3]], [2, [1, 0]]]}
        assert rainbow_from_json(text) == r

    @pytest.mark.parametrize('text', [
        '{}', '{"assignment": [[1]]}', '{"assignment": [[1, [0, 0]], [1, [1, 1]]]}',
        '{"assignment": [["a", [0, 0]]]}', 'nope',
    ])
    def test_bad_assignment(self, text):
        with pytest.raises(InvalidAssignment):
            rainbow_from_json(text)

    def test_replace(self):
        r = RainbowMatching({1: Edge(0, 0), 2: Edge(1, 1)})
        assert r.replace(remove=[1], add={3: Edge(2, 2)}) == RainbowMatching({2: (1, 1), 3: (2, 2)})
        assert r.size == 2


class TestFreeVertices:

    def test_nothing_matched(self):
        f = fam(3, 3, [(0, 0)])
        assert free_vertices(f, {}) == ({0, 1, 2}, {0, 1, 2})

    def test_one_matched(self):
        f = fam(2, 2, [(0, 0)])
        assert free_vertices(f, {1: (0, 0)}) == ({1}, {1})

    def test_full(self):
        f = cycle_family(3, 3)
        r = {1: (0, 0), 2: (1, 1), 3: (2, 2)}
        assert free_vertices(f, r) == (frozenset(), frozenset())

    @given(families(), st.data())
    def test_sizes_and_disjointness(self, f, data):
        # build a valid rainbow matching greedily from a random color order
        order = data.draw(st.permutations(list(f.colors)))
        r, uu, ww = {}, set(), set()
        for c in order:
            for e in f[c]:
                if e.u not in uu and e.w not in ww:
                    r[c] = e
                    uu.add(e.u)
                    ww.add(e.w)
                    break
        assert is_rainbow_matching(f, r)
        X, Y = free_vertices(f, r)
        assert len(X) == f.u_size - len(r)
        assert len(Y) == f.w_size - len(r)
        assert not X & uu and not Y & ww


class TestEdgesBetween:

    def test_basic(self):
        assert edges_between([(0, 0), (1, 1)], {0}, {0, 1}) == {Edge(0, 0)}

    def test_empty_side(self):
        assert edges_between([(0, 0), (1, 1)], set(), {0, 1}) == frozenset()

    def test_full_sides(self):
        f = cycle_family(3, 1)
        assert edges_between(f[1], {0, 1, 2}, {0, 1, 2}) == set(f[1])

    @settings(max_examples=200)
    @given(families(max_n=1, max_side=6), st.data())
    def test_partition(self, f, data):
        S = f[1]
        A = data.draw(st.sets(st.integers(0, f.u_size - 1)))
        B = data.draw(st.sets(st.integers(0, f.w_size - 1)))
        Ac = set(range(f.u_size)) - A
        Bc = set(range(f.w_size)) - B
        parts = [edges_between(S, A, B), edges_between(S, A, Bc),
                 edges_between(S, Ac, range(f.w_size))]
        assert sum(len(p) for p in parts) == len(S)
        assert frozenset().union(*parts) == set(S)
