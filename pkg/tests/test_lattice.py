import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import invariant_factors, leibniz_det
from toruskk.errors import DimensionError, ParseError, PrimitivityError, RankError
from toruskk.lattice import (
    IntMatrix,
    det,
    dual_section,
    hermite_normal_form,
    integer_kernel_basis,
    is_primitive_basis,
    pluecker_minors,
    rank,
    saturate,
    smith_normal_form,
)
from toruskk.oracle import random_unimodular

M = IntMatrix.parse


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, lo=-9, hi=9, min_cols=0):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix.from_rows(rows, ncols=c)


def is_column_echelon(H: IntMatrix) -> bool:
    prev = -1
    seen_zero = False
    for j in range(H.cols):
        col = H.column(j)
        nz = [i for i, x in enumerate(col) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= prev or col[p] <= 0:
            return False
        if any(not 0 <= H[p, jj] < col[p] for jj in range(j)):
            return False
        prev = p
    return True


class TestParse:
    def test_text_roundtrip(self):
        assert M("1,0;1,2").to_lists() == [[1, 0], [1, 2]]
        assert M("1,0;1,2").to_text() == "1,0;1,2"

    def test_empty(self):
        e = M("3 x 0")
        assert e.shape == (3, 0)
        assert e.to_text() == "3 x 0"

    def test_json(self):
        assert M("[[1, 2], [3, 4]]").to_lists() == [[1, 2], [3, 4]]

    @pytest.mark.parametrize("bad", ["1,a", "", "2 x 2", "1,2;3"])
    def test_bad(self, bad):
        with pytest.raises((ParseError, DimensionError)):
            M(bad)


class TestDeterminant:
    @given(st.integers(0, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_matches_leibniz(self, rows):
        n = len(rows)
        A = IntMatrix.from_rows(rows, ncols=n)
        assert det(A) == leibniz_det(rows)

    def test_empty_is_one(self):
        assert det(IntMatrix.zeros(0, 0)) == 1


class TestHermite:
    def test_example(self):
        A = M("2,4;0,2")
        h = hermite_normal_form(A)
        assert A @ h.U == h.H
        assert abs(det(h.U)) == 1
        assert abs(det(h.H)) == 4

    def test_identity(self):
        h = hermite_normal_form(IntMatrix.identity(3))
        assert h.H == IntMatrix.identity(3) and h.U == IntMatrix.identity(3)

    def test_empty(self):
        h = hermite_normal_form(M("2 x 0"))
        assert h.H.shape == (2, 0) and h.U.shape == (0, 0)

    @given(int_matrices())
    def test_witness(self, A):
        h = hermite_normal_form(A)
        assert A @ h.U == h.H
        assert abs(det(h.U)) == 1
        assert is_column_echelon(h.H)

    @given(int_matrices(max_rows=4, max_cols=4))
    def test_canonical(self, A):
        # same column lattice => same HNF
        U = random_unimodular(A.cols, random.Random(A.to_text()), 3)
        assert hermite_normal_form(A @ U).H == hermite_normal_form(A).H


class TestSmith:
    @pytest.mark.parametrize("text,diag", [("2,0;0,3", [1, 6]), ("1,0;0,1", [1, 1]), ("2", [2])])
    def test_examples(self, text, diag):
        A = M(text)
        s = smith_normal_form(A)
        assert s.invariants == diag
        assert s.U @ A @ s.V == s.D

    def test_gcd_lcm_2x2(self):
        # d1 = gcd of entries, d1 * d2 = |det|
        s = smith_normal_form(M("4,6;2,8"))
        assert s.invariants[0] == 2 and s.invariants[0] * s.invariants[1] == abs(4 * 8 - 6 * 2)

    @given(int_matrices())
    def test_witness(self, A):
        s = smith_normal_form(A)
        assert s.U @ A @ s.V == s.D
        assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
        inv = s.invariants
        assert all(x >= 1 for x in inv)
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
        assert all(s.D[i, j] == 0 for i in range(A.rows) for j in range(A.cols)
                   if i != j or i >= len(inv))

    @settings(max_examples=60)
    @given(int_matrices(max_rows=4, max_cols=4, lo=-5, hi=5))
    def test_against_minor_gcds(self, A):
        assert smith_normal_form(A).invariants == invariant_factors(A.to_lists(), A.cols)


class TestPrimitive:
    @pytest.mark.parametrize("text,expected", [("1;1", True), ("2;0", False), ("2 x 0", True),
                                               ("1,0;0,1", True), ("1,1;0,2", False)])
    def test_examples(self, text, expected):
        assert is_primitive_basis(M(text)) is expected

    def test_too_many_columns(self):
        with pytest.raises(DimensionError):
            is_primitive_basis(M("1,0,0;0,1,0"))

    def test_rank_deficient(self):
        assert not is_primitive_basis(M("1,1;1,1"))


class TestSaturate:
    @pytest.mark.parametrize("text,expected", [("2;0", "1;0"), ("2;2", "1;1"), ("-2;-2", "-1;-1")])
    def test_examples(self, text, expected):
        assert saturate(M(text)).to_text() == expected

    def test_rank_error(self):
        with pytest.raises(RankError):
            saturate(M("1,2;2,4"))

    @given(int_matrices(max_rows=5, max_cols=3, lo=-6, hi=6, min_cols=1))
    def test_properties(self, B):
        if rank(B) != B.cols or B.cols > B.rows:
            return
        S = saturate(B)
        assert is_primitive_basis(S)
        assert saturate(S) == S
        # same rational span, same orientation: B = S W with det W > 0
        W = dual_section(S).T @ B
        assert S @ W == B
        assert det(W) > 0


class TestKernel:
    def test_examples(self):
        N = integer_kernel_basis(M("1,1"))
        assert N.to_text() == "1;-1"
        assert integer_kernel_basis(IntMatrix.identity(3)).shape == (3, 0)
        Z = integer_kernel_basis(M("0,0"))
        assert Z.cols == 2 and abs(det(Z)) == 1

    @given(int_matrices(max_rows=4, max_cols=5, lo=-5, hi=5))
    def test_properties(self, A):
        N = integer_kernel_basis(A)
        assert (A @ N).is_zero()
        assert N.cols == A.cols - rank(A)
        assert is_primitive_basis(N)
        assert integer_kernel_basis(A) == N


class TestDualSection:
    @pytest.mark.parametrize("text", ["1;1", "1,0;0,1", "3 x 0", "2,1;3,1;5,7"])
    def test_postcondition(self, text):
        B = M(text)
        Mx = dual_section(B)
        assert B.T @ Mx == IntMatrix.identity(B.cols)

    def test_identity(self):
        assert dual_section(IntMatrix.identity(2)) == IntMatrix.identity(2)

    def test_non_primitive(self):
        with pytest.raises(PrimitivityError) as exc:
            dual_section(M("2;0"))
        assert exc.value.invariant == 2


class TestPluecker:
    def test_examples(self):
        assert pluecker_minors(M("1;1")).coefficients == {(1,): 1, (2,): 1}
        assert pluecker_minors(IntMatrix.identity(2)).coefficients == {(1, 2): 1}
        assert pluecker_minors(M("1,0;0,1;0,0")).coefficients == {(1, 2): 1, (1, 3): 0, (2, 3): 0}

    @given(int_matrices(max_rows=5, max_cols=3, lo=-4, hi=4),
           st.lists(st.integers(-3, 3), min_size=9, max_size=9))
    def test_multiplicative(self, B, w):
        if B.cols > B.rows:
            return
        k = B.cols
        W = IntMatrix.from_rows([w[i * 3:i * 3 + k] for i in range(k)], ncols=k)
        lhs = pluecker_minors(B @ W).coefficients
        rhs = pluecker_minors(B).coefficients
        assert lhs == {J: det(W) * c for J, c in rhs.items()}
