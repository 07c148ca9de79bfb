import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toruskk.errors import DimensionError, TransversalityError
from toruskk.lattice import det
from toruskk.oracle import (
    RandomSpec,
    TorusPoint,
    enumerate_intersection,
    grid_intersection,
    lies_on,
    random_primitive_subtorus,
    random_subtori,
    random_transverse_pairs,
    random_unimodular,
)
from toruskk.subtorus import expand_ktheory, make_subtorus, pairing_signed


def sub(d, text):
    return make_subtorus(d, "base", text)


def pt(*xs):
    return TorusPoint(tuple(Fraction(x) for x in xs))


class TestEnumerate:
    def test_axes(self):
        assert enumerate_intersection(sub(2, "1;0"), sub(2, "0;1")) == [pt(0, 0)]

    def test_two_points(self):
        assert enumerate_intersection(sub(2, "1;0"), sub(2, "1;2")) == [pt(0, 0), pt("1/2", 0)]

    def test_point_and_full_torus(self):
        assert enumerate_intersection(sub(2, "2 x 0"), sub(2, "1,0;0,1")) == [pt(0, 0)]

    def test_not_transverse(self):
        with pytest.raises(TransversalityError):
            enumerate_intersection(sub(2, "1;1"), sub(2, "1;1"))

    def test_not_complementary(self):
        with pytest.raises(DimensionError):
            enumerate_intersection(sub(2, "1;0"), sub(2, "1,0;0,1"))

    def test_point_reduction(self):
        assert pt("3/2", -1).to_json() == ["1/2", "0"]

    @settings(max_examples=40)
    @given(st.integers(0, 2 ** 32))
    def test_matches_grid_search(self, seed):
        rng = random.Random(seed)
        k = rng.randint(0, 2)
        t = random_primitive_subtorus(2, k, rng)
        u = random_primitive_subtorus(2, 2 - k, rng)
        s = pairing_signed(t, u)
        if s == 0 or abs(s) > 12:
            return
        assert enumerate_intersection(t, u) == grid_intersection(t, u)

    @settings(max_examples=60)
    @given(st.integers(1, 4), st.integers(0, 2 ** 32))
    def test_points_lie_on_both(self, d, seed):
        rng = random.Random(seed)
        k = rng.randint(0, d)
        t = random_primitive_subtorus(d, k, rng)
        u = random_primitive_subtorus(d, d - k, rng)
        if pairing_signed(t, u) == 0:
            return
        pts = enumerate_intersection(t, u)
        assert len(set(pts)) == len(pts) == abs(pairing_signed(t, u))
        assert all(lies_on(t, p) and lies_on(u, p) for p in pts)


class TestLiesOn:
    def test_examples(self):
        c = sub(2, "1;1")
        assert lies_on(c, pt("1/3", "1/3"))
        assert not lies_on(c, pt("1/3", "2/3"))
        assert lies_on(sub(2, "2 x 0"), pt(0, 0))
        assert not lies_on(sub(2, "2 x 0"), pt("1/2", 0))


class TestGenerators:
    @pytest.mark.parametrize("d", range(1, 6))
    def test_unimodular(self, d):
        rng = random.Random(d)
        for _ in range(50):
            U = random_unimodular(d, rng, 4)
            assert abs(det(U)) == 1
            assert all(abs(x) <= 4 for r in U.to_lists() for x in r)

    def test_deterministic(self):
        a = [t.basis for t in random_subtori(3, 2, RandomSpec(seed=5, trials=20))]
        b = [t.basis for t in random_subtori(3, 2, RandomSpec(seed=5, trials=20))]
        assert a == b

    def test_trivial_subtorus(self):
        t = random_primitive_subtorus(3, 0, RandomSpec(seed=1))
        assert t.k == 0 and t.basis.shape == (3, 0)

    @pytest.mark.parametrize("d", range(1, 5))
    def test_full_rank_top_coefficient(self, d):
        for t in random_subtori(d, d, RandomSpec(seed=d, trials=20)):
            c = expand_ktheory(t)
            assert set(c.terms) == {()} and abs(c.terms[()]) == 1

    def test_bad_k(self):
        with pytest.raises(DimensionError):
            random_primitive_subtorus(2, 3, RandomSpec())

    def test_transverse_pairs(self):
        pairs = list(random_transverse_pairs(4, RandomSpec(seed=3, trials=500)))
        assert len(pairs) == 500
        for t, u in pairs:
            assert t.k + u.k == 4
            assert abs(pairing_signed(t, u)) == len(enumerate_intersection(t, u))
