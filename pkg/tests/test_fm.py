import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toruskk import fm
from toruskk.exterior import AlgebraSpec, ExteriorClass, GradedLinearMap, apply_map, compose_maps, invert_map, monomials, pair_kh
from toruskk.oracle import random_unimodular
from toruskk.subtorus import OrientedSubtorus, dual_subtorus, expand_homology, expand_ktheory, make_subtorus


def mono(d, variance, side, idx, c=1):
    return ExteriorClass.monomial(AlgebraSpec(d, variance, side), idx, c)


class TestSigns:
    @pytest.mark.parametrize("k,d,expected", [(0, 1, 1), (1, 1, 1), (1, 2, -1), (2, 2, -1),
                                              (2, 3, -1), (0, 4, 1), (3, 3, -1), (2, 4, -1)])
    def test_thm_k(self, k, d, expected):
        assert fm.thm_k(k, d) == expected

    @pytest.mark.parametrize("k,d,expected", [(0, 1, 1), (1, 1, -1), (2, 2, -1), (1, 2, 1),
                                              (2, 4, -1), (1, 3, -1)])
    def test_thm_h(self, k, d, expected):
        assert fm.thm_h(k, d) == expected


class TestFMK:
    def test_d1(self):
        f = fm.build_fm_k(1)
        assert f.images[()] == mono(1, "x", "dual", (1,))
        assert f.images[(1,)] == mono(1, "x", "dual", ())

    def test_d2_goldens(self):
        f = fm.build_fm_k(2)
        assert f.images[()] == mono(2, "x", "dual", (1, 2), -1)
        assert f.images[(1,)] == mono(2, "x", "dual", (2,))
        assert f.images[(2,)] == mono(2, "x", "dual", (1,), -1)
        assert f.images[(1, 2)] == mono(2, "x", "dual", ())

    @pytest.mark.parametrize("d", range(1, 7))
    def test_signed_complement_permutation_and_degree(self, d):
        f = fm.build_fm_k(d)
        assert fm.is_signed_complement_permutation(f)
        for m in monomials(d):
            assert f.images[m].grades() == {d - len(m)}

    @pytest.mark.parametrize("d", range(1, 7))
    def test_square_is_sign_per_grade(self, d):
        # recorded behaviour: constant sign (-1)^(d(d-1)/2) on every grade
        signs = fm.fm_square_signs(d)
        assert set(signs) == set(range(d + 1))
        assert set(signs.values()) == {(-1) ** (d * (d - 1) // 2)}


class TestFMH:
    def test_d1(self):
        f = fm.build_fm_h(1)
        assert f.images[(1,)] == mono(1, "y", "base", (), -1)
        assert f.images[()] == mono(1, "y", "base", (1,))

    def test_d2_top(self):
        # thm_h(2, 2) = -1, so the full dual torus goes to minus the point class
        assert fm.build_fm_h(2).images[(1, 2)] == mono(2, "y", "base", (), -1)


class TestAdjointness:
    @pytest.mark.parametrize("d", [2, 4])
    def test_even_d_pass(self, d):
        assert fm.adjointness_check(d).all_pass

    @pytest.mark.parametrize("d", range(1, 6))
    def test_discrepancy_is_koszul_sign(self, d):
        """<F_K a, b> = (-1)^(kd) <a, F_H b>, k the grade of b: the two sign formulas
        differ from associativity exactly by this factor."""
        fk, fh = fm.build_fm_k(d), fm.build_fm_h(d)
        for I in monomials(d):
            a = mono(d, "x", "base", I)
            for J in monomials(d):
                b = mono(d, "y", "dual", J)
                k = len(J)
                assert pair_kh(apply_map(fk, a), b) == (-1) ** (k * d) * pair_kh(a, apply_map(fh, b))


class TestPD:
    def test_d1(self):
        p = fm.build_pd_spin(1)
        assert p.images[(1,)] == mono(1, "x", "base", ())
        assert p.images[()] == mono(1, "x", "base", (1,))

    def test_d2(self):
        p = fm.build_pd_spin(2)
        assert p.images[(1,)] == mono(2, "x", "base", (2,))
        assert p.images[()] == mono(2, "x", "base", (1, 2))

    @given(st.integers(1, 5), st.integers(0, 2 ** 32))
    def test_flips_legs_on_any_subtorus(self, d, seed):
        rng = random.Random(seed)
        k = rng.randint(0, d)
        t = OrientedSubtorus(d, "base", random_unimodular(d, rng, 4).select_columns(range(k)))
        assert apply_map(fm.build_pd_spin(d), expand_homology(t)) == expand_ktheory(t)


class TestAssembly:
    def test_d1_goldens(self):
        mu = fm.build_assembly(1)
        assert mu.images[()] == mono(1, "x", "dual", ())
        assert mu.images[(1,)] == mono(1, "x", "dual", (1,))

    @pytest.mark.parametrize("d", range(1, 6))
    def test_factorization_and_invertible(self, d):
        mu = fm.build_assembly(d)
        assert mu == compose_maps(fm.build_fm_k(d), fm.build_pd_spin(d))
        inv = invert_map(mu)
        assert compose_maps(inv, mu) == GradedLinearMap.identity(mu.source)

    def test_diagonal_circle(self):
        out = fm.assembly_on_subtorus(make_subtorus(2, "base", "1;1"))
        assert out == -expand_ktheory(make_subtorus(2, "dual", "1;-1"))
        assert out == ExteriorClass(AlgebraSpec(2, "x", "dual"), {(1,): -1, (2,): -1})

    def test_d3_plane(self):
        t = make_subtorus(3, "base", "1,0;1,0;0,1")
        assert fm.thm_k(2, 3) == -1
        assert fm.assembly_on_subtorus(t) == -expand_ktheory(dual_subtorus(t))

    @pytest.mark.parametrize("d", range(1, 5))
    def test_point_class(self, d):
        t = OrientedSubtorus(d, "base", make_subtorus(d, "base", f"{d} x 0").basis)
        out = fm.assembly_on_subtorus(t)
        assert out == mono(d, "x", "dual", ())

    def test_rejects_dual_side(self):
        with pytest.raises(Exception):
            fm.assembly_on_subtorus(make_subtorus(2, "dual", "1;1"))


class TestExamples:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_invert_torus(self, d):
        assert fm.example_invert_torus(d).all_pass

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_invert_dual(self, d):
        assert fm.example_invert_dual(d).all_pass

    @pytest.mark.parametrize("d", range(1, 7))
    def test_inverse_structure(self, d):
        assert fm.fm_inverse_structure(d).all_pass

    def test_inverse_d1(self):
        g = invert_map(fm.build_fm_k(1))
        assert g.images[(1,)] == mono(1, "x", "base", ())
        assert g.images[()] == mono(1, "x", "base", (1,))

    def test_inverse_d2_entries(self):
        M = invert_map(fm.build_fm_k(2)).matrix()
        assert {x for r in M.to_lists() for x in r} <= {-1, 0, 1}
