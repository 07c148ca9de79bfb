"""Oriented subtori of T^d and of the dual torus, their duals and classes.

A subtorus is stored as a primitive integer basis of its tangent lattice; the
column order is the orientation. A zero-dimensional subtorus (the trivial
subgroup) has no columns to order, so it carries an explicit sign instead.
For k > 0 the sign is always folded into the first column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError, PrimitivityError, RankError, SpecMismatchError
from .exterior import AlgebraSpec, ExteriorClass, SIDES, complement
from .lattice import (
    IntMatrix,
    as_matrix,
    det,
    dual_section,
    hermite_normal_form,
    integer_kernel_basis,
    pluecker_minors,
    rank,
    smith_normal_form,
)


def other_side(side: str) -> str:
    return "dual" if side == "base" else "base"


@dataclass(frozen=True)
class OrientedSubtorus:
    d: int
    side: str
    basis: IntMatrix
    sign: int = 1

    def __post_init__(self):
        if self.side not in SIDES:
            raise SpecMismatchError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.basis.rows != self.d:
            raise DimensionError(f"basis has {self.basis.rows} rows, expected d={self.d}")
        if self.sign == -1 and self.basis.cols:
            object.__setattr__(self, "basis", self.basis.negate_column(0))
            object.__setattr__(self, "sign", 1)

    @property
    def k(self) -> int:
        return self.basis.cols

    def reversed(self) -> OrientedSubtorus:
        """Same subgroup, opposite orientation."""
        if self.k == 0:
            return OrientedSubtorus(self.d, self.side, self.basis, -self.sign)
        return OrientedSubtorus(self.d, self.side, self.basis.negate_column(0))

    def to_json(self) -> dict:
        out = {"d": self.d, "side": self.side, "basis": self.basis.to_text()}
        if self.sign == -1:
            out["orientation"] = -1
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> OrientedSubtorus:
        d = int(obj["d"])
        basis = as_matrix(obj["basis"])
        if basis.rows == 0 and basis.cols == 0:
            basis = IntMatrix.zeros(d, 0)
        return make_subtorus(d, obj.get("side", "base"), basis, int(obj.get("orientation", 1)))


def make_subtorus(d: int, side: str, basis, sign: int = 1) -> OrientedSubtorus:
    """Validate a basis as the tangent lattice of an embedded subtorus."""
    B = as_matrix(basis)
    if B.rows == 0 and B.cols == 0 and d > 0:
        B = IntMatrix.zeros(d, 0)
    if B.rows != d:
        raise DimensionError(f"basis has {B.rows} rows, expected d={d}")
    if B.cols > d:
        raise DimensionError(f"{B.cols} basis vectors in Z^{d}")
    r = rank(B)
    if r != B.cols:
        raise RankError(f"basis has rank {r} but {B.cols} columns")
    if B.cols:
        inv = smith_normal_form(B).invariants
        if inv[-1] != 1:
            raise PrimitivityError(
                f"basis spans an index-{_prod(inv)} sublattice of its saturation; "
                f"the map is not an embedding (Smith invariant {inv[-1]})",
                invariant=inv[-1],
            )
    return OrientedSubtorus(d, side, B, sign)


def coordinate_subtorus(d: int, S, side: str = "base") -> OrientedSubtorus:
    """Subtorus spanned by the standard vectors e_i, i in S (ascending)."""
    S = sorted(S)
    return OrientedSubtorus(
        d, side, IntMatrix.from_columns([[int(r == i - 1) for r in range(d)] for i in S], d))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _unit_columns(d: int, J) -> IntMatrix:
    return IntMatrix.from_columns([[int(r == j - 1) for r in range(d)] for j in J], d)


def dual_subtorus(t: OrientedSubtorus) -> OrientedSubtorus:
    """Annihilator subtorus on the opposite side.

    The kernel basis N of B^T is oriented so that [N | M] has determinant +1,
    where M lifts the dual basis of the character lattice (B^T M = I). A sign
    carried by a point-like t is carried over to the dual basis.
    """
    B = t.basis
    N = integer_kernel_basis(B.T)
    M = dual_section(B)
    s = t.sign * det(N.hstack(M))
    # OrientedSubtorus folds a negative sign into N's first column when it has one
    return OrientedSubtorus(t.d, other_side(t.side), N, s)


def expand_homology(t: OrientedSubtorus) -> ExteriorClass:
    """[T]_* in the y-basis: the coefficient of y_J is the minor of B on rows J."""
    spec = AlgebraSpec(t.d, "y", t.side)
    return ExteriorClass(spec, {J: t.sign * c for J, c in pluecker_minors(t.basis).coefficients.items()})


def expand_ktheory(t: OrientedSubtorus) -> ExteriorClass:
    """[T]_! in the x-basis: the coefficient of x_J (|J| = d - k) is det[B | E_J]."""
    spec = AlgebraSpec(t.d, "x", t.side)
    terms = {}
    for J in pluecker_minors(IntMatrix.zeros(t.d, t.d - t.k)).coefficients:
        terms[J] = t.sign * det(t.basis.hstack(_unit_columns(t.d, J)))
    return ExteriorClass(spec, terms)


def _check_same_torus(t: OrientedSubtorus, u: OrientedSubtorus) -> None:
    if t.d != u.d or t.side != u.side:
        raise SpecMismatchError(f"subtori live on different tori: ({t.d}, {t.side}) vs ({u.d}, {u.side})")


def pairing_signed(t: OrientedSubtorus, u: OrientedSubtorus) -> int:
    """Signed intersection number det[B | B'] of complementary subtori."""
    _check_same_torus(t, u)
    if t.k + u.k != t.d:
        raise DimensionError(f"dimensions {t.k} + {u.k} are not complementary in d={t.d}")
    return t.sign * u.sign * det(t.basis.hstack(u.basis))


@dataclass(frozen=True)
class IntersectionData:
    transverse: bool
    identity_component: OrientedSubtorus | None
    component_count: int | None

    def to_json(self) -> dict:
        return {
            "transverse": self.transverse,
            "identityComponent": self.identity_component.to_json() if self.identity_component else None,
            "componentCount": self.component_count,
        }


def _completion_sign(Ca: IntMatrix) -> tuple[int, list[int]]:
    """Sign of det[Ca | E_P] for a greedy choice of unit columns P completing Ca."""
    k, c = Ca.shape
    cols = Ca
    chosen = []
    for j in range(k):
        if cols.cols == k:
            break
        trial = cols.hstack(_unit_columns(k, [j + 1]))
        if rank(trial) == trial.cols:
            cols = trial
            chosen.append(j)
    D = det(cols)
    return (1 if D > 0 else -1), chosen


def intersection_data(t: OrientedSubtorus, u: OrientedSubtorus) -> IntersectionData:
    """Transversality, oriented identity component and component count of t ∩ u.

    The component C is oriented so that (C, completion to Γ, completion to Γ')
    is a positive basis of R^d when the completions are oriented like Γ and Γ'.
    With this choice wedge([t]_!, [u]_!) = componentCount * [C]_!.
    """
    _check_same_torus(t, u)
    d = t.d
    R = t.basis.hstack(u.basis)
    if rank(R) != d:
        return IntersectionData(False, None, None)
    count = _prod(smith_normal_form(R).invariants)
    K = integer_kernel_basis(R)
    c = K.cols
    if c == 0:
        s = t.sign * u.sign * (1 if det(R) > 0 else -1)
        return IntersectionData(True, OrientedSubtorus(d, t.side, IntMatrix.zeros(d, 0), s), count)
    C = hermite_normal_form(t.basis @ K.select_rows(range(t.k))).H.select_columns(range(c))
    # coordinates of C inside Γ and Γ' (C = B Ca = B' Cb)
    Ca = dual_section(t.basis).T @ C
    Cb = dual_section(u.basis).T @ C
    sa, Pa = _completion_sign(Ca)
    sb, Pb = _completion_sign(Cb)
    full = C.hstack(t.basis.select_columns(Pa)).hstack(u.basis.select_columns(Pb))
    if sa * sb * det(full) < 0:
        C = C.negate_column(0)
    return IntersectionData(True, OrientedSubtorus(d, t.side, C), count)
