"""Fourier-Mukai transform, spin Poincaré duality and assembly as integer maps.

The FM maps are defined on the basis of coordinate-subtorus classes by the
two subtorus theorems and extended linearly. Their behaviour on arbitrary
subtori is then a genuine consistency check (see ``verify``), not a
tautology.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import ToruskkError
from .exterior import (
    AlgebraSpec,
    ExteriorClass,
    GradedLinearMap,
    apply_map,
    complement,
    compose_maps,
    invert_map,
    monomials,
    pair_kh,
)
from .lattice import IntMatrix
from .report import PropertyResult, VerifyReport
from .subtorus import (
    OrientedSubtorus,
    coordinate_subtorus,
    dual_subtorus,
    expand_homology,
    expand_ktheory,
)


class ConsistencyError(ToruskkError):
    kind = "consistency"


def thm_k(k: int, d: int) -> int:
    """Sign relating [T]_! ⊗ F to the dual class: (-1)^(k(d-k) + k(k-1)/2)."""
    return -1 if (k * (d - k) + k * (k - 1) // 2) % 2 else 1


def thm_h(k: int, d: int) -> int:
    """Sign relating F ⊗ [Γ̂]_* to the dual-subtorus class: (-1)^(kd + k(k-1)/2)."""
    return -1 if (k * d + k * (k - 1) // 2) % 2 else 1


def _single_term(c: ExteriorClass) -> tuple[tuple[int, ...], int]:
    (m, coef), = c.terms.items()
    if coef not in (1, -1):
        raise ConsistencyError(f"coordinate class {c} is not a unit monomial")
    return m, coef


def _coordinate_sets(d: int):
    for k in range(d + 1):
        for S in combinations(range(1, d + 1), k):
            yield k, S


@lru_cache(maxsize=None)
def build_fm_k(d: int) -> GradedLinearMap:
    """FM on K-theory, Λx(T^d) -> Λx(dual torus)."""
    if d < 1:
        raise ToruskkError("FM transform needs d >= 1")
    src, tgt = AlgebraSpec(d, "x", "base"), AlgebraSpec(d, "x", "dual")
    images = {}
    for k, S in _coordinate_sets(d):
        t = coordinate_subtorus(d, S, "base")
        m, coef = _single_term(expand_ktheory(t))
        images[m] = coef * thm_k(k, d) * expand_ktheory(dual_subtorus(t))
    return GradedLinearMap(src, tgt, images, -d, "FM_K")


@lru_cache(maxsize=None)
def build_fm_h(d: int) -> GradedLinearMap:
    """FM on K-homology, Λy(dual torus) -> Λy(T^d)."""
    if d < 1:
        raise ToruskkError("FM transform needs d >= 1")
    src, tgt = AlgebraSpec(d, "y", "dual"), AlgebraSpec(d, "y", "base")
    images = {}
    for k, S in _coordinate_sets(d):
        t = coordinate_subtorus(d, S, "dual")
        m, coef = _single_term(expand_homology(t))
        images[m] = coef * thm_h(k, d) * expand_homology(dual_subtorus(t))
    return GradedLinearMap(src, tgt, images, -d, "FM_H")


@lru_cache(maxsize=None)
def build_pd_spin(d: int) -> GradedLinearMap:
    """Spin Poincaré duality Λy(T^d) -> Λx(T^d): [T]_* -> [T]_! (leg flip)."""
    if d < 1:
        raise ToruskkError("Poincaré duality map needs d >= 1")
    src, tgt = AlgebraSpec(d, "y", "base"), AlgebraSpec(d, "x", "base")
    images = {}
    for _, S in _coordinate_sets(d):
        t = coordinate_subtorus(d, S, "base")
        m, coef = _single_term(expand_homology(t))
        images[m] = coef * expand_ktheory(t)
    return GradedLinearMap(src, tgt, images, d, "PD")


@lru_cache(maxsize=None)
def build_assembly(d: int) -> GradedLinearMap:
    """Assembly map μ = FM_K ∘ PD : Λy(T^d) -> Λx(dual torus)."""
    mu = compose_maps(build_fm_k(d), build_pd_spin(d))
    return GradedLinearMap(mu.source, mu.target, mu.images, mu.degree_shift, "mu")


def assembly_on_subtorus(t: OrientedSubtorus) -> ExteriorClass:
    """μ([T]_*), checked against ±[T̂]_! computed independently from the dual subtorus."""
    if t.side != "base":
        raise ToruskkError("assembly takes a subtorus of the base torus")
    out = apply_map(build_assembly(t.d), expand_homology(t))
    expected = thm_k(t.k, t.d) * expand_ktheory(dual_subtorus(t))
    if out != expected:
        raise ConsistencyError(
            f"μ([T]_*) = {out} but the dual-subtorus formula gives {expected} "
            f"for basis {t.basis.to_text()}")
    return out


def is_signed_complement_permutation(f: GradedLinearMap) -> bool:
    """Every monomial I maps to ±(complement of I)."""
    d = f.source.d
    for m in monomials(d):
        img = f.images[m]
        if len(img.terms) != 1:
            return False
        (n, c), = img.terms.items()
        if n != complement(m, d) or c not in (1, -1):
            return False
    return True


def _mono_json(m) -> list[int]:
    return list(m)


def adjointness_check(d: int) -> VerifyReport:
    """<FM_K a, b> == <a, FM_H b> for every pair of monomials."""
    fk, fh = build_fm_k(d), build_fm_h(d)
    xb, yd = AlgebraSpec(d, "x", "base"), AlgebraSpec(d, "y", "dual")
    checked, first, failures = 0, None, 0
    for I in monomials(d):
        a = ExteriorClass.monomial(xb, I)
        fa = apply_map(fk, a)
        for J in monomials(d):
            b = ExteriorClass.monomial(yd, J)
            lhs, rhs = pair_kh(fa, b), pair_kh(a, apply_map(fh, b))
            checked += 1
            if lhs != rhs:
                failures += 1
                if first is None:
                    first = {"d": d, "a": _mono_json(I), "b": _mono_json(J), "lhs": lhs, "rhs": rhs}
    r = VerifyReport(params={"d": d})
    note = f"{failures} of {checked} monomial pairs disagree" if failures else ""
    r.add(PropertyResult(f"adjointness[d={d}]", first is None, checked, first, note))
    return r


def _antidiagonal(d: int, side: str) -> OrientedSubtorus:
    cols = [[-1 if r == i else (1 if r == d + i else 0) for r in range(2 * d)] for i in range(d)]
    return OrientedSubtorus(2 * d, side, IntMatrix.from_columns(cols, 2 * d))


def _diagonal(d: int, side: str) -> OrientedSubtorus:
    cols = [[1 if r in (i, d + i) else 0 for r in range(2 * d)] for i in range(d)]
    return OrientedSubtorus(2 * d, side, IntMatrix.from_columns(cols, 2 * d))


def example_invert_torus(d: int) -> VerifyReport:
    """FM_{2d}[anti-diagonal]_! == (-1)^(d + d(d-1)/2) [diagonal of the dual torus]_!."""
    sign = -1 if (d + d * (d - 1) // 2) % 2 else 1
    lhs = apply_map(build_fm_k(2 * d), expand_ktheory(_antidiagonal(d, "base")))
    rhs = sign * expand_ktheory(_diagonal(d, "dual"))
    ok = lhs == rhs
    cex = None if ok else {"d": d, "side": "K-theory", "lhs": lhs.to_json(), "rhs": rhs.to_json()}
    r = VerifyReport(params={"d": d})
    r.add(PropertyResult(f"invert-torus[d={d}]", ok, 1, cex))
    return r


def example_invert_dual(d: int) -> VerifyReport:
    """FM_{2d}[anti-diagonal of the dual torus]_* == (-1)^(d(d-1)/2) [diagonal]_*."""
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    lhs = apply_map(build_fm_h(2 * d), expand_homology(_antidiagonal(d, "dual")))
    rhs = sign * expand_homology(_diagonal(d, "base"))
    ok = lhs == rhs
    cex = None if ok else {"d": d, "side": "K-homology", "lhs": lhs.to_json(), "rhs": rhs.to_json()}
    r = VerifyReport(params={"d": d})
    r.add(PropertyResult(f"invert-dual[d={d}]", ok, 1, cex))
    return r


def fm_inverse_structure(d: int) -> VerifyReport:
    f = build_fm_k(d)
    r = VerifyReport(params={"d": d})
    try:
        g = invert_map(f)
    except ToruskkError as exc:
        r.add(PropertyResult(f"fm-invertible[d={d}]", False, 1,
                             {"d": d, "matrix": f.matrix().to_text(), "error": str(exc)}))
        return r
    ok = (is_signed_complement_permutation(g)
          and compose_maps(g, f) == GradedLinearMap.identity(f.source)
          and compose_maps(f, g) == GradedLinearMap.identity(f.target))
    cex = None if ok else {"d": d, "inverse": g.matrix().to_text()}
    r.add(PropertyResult(f"fm-invertible[d={d}]", ok, 2 ** d, cex))
    return r


def fm_square_signs(d: int) -> dict[int, int]:
    """Apply FM_K twice (dual torus relabelled as base) and return the sign per grade.

    Raises ConsistencyError if the square is not diagonal or the sign varies
    within a grade.
    """
    f = build_fm_k(d)
    xb = AlgebraSpec(d, "x", "base")
    out: dict[int, int] = {}
    for m in monomials(d):
        once = f.images[m].relabel(xb)
        twice = apply_map(f, once).relabel(xb)
        if set(twice.terms) != {m}:
            raise ConsistencyError(f"FM∘FM is not diagonal at {m}: {twice}")
        s = twice.terms[m]
        if out.setdefault(len(m), s) != s:
            raise ConsistencyError(f"FM∘FM sign varies within grade {len(m)}")
    return out
