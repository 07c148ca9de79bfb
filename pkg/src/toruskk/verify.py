"""Seeded property suite behind ``toruskk verify``.

Each property draws from its own ``random.Random`` seeded by a string built
from (seed, property, d), so reports are reproducible byte for byte and
independent of which other properties ran.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from . import fm
from .exterior import AlgebraSpec, ExteriorClass, GradedLinearMap, compose_maps, invert_map, merge_sign, monomials, pair_kh, wedge
from .lattice import IntMatrix, det, hermite_normal_form, smith_normal_form
from .oracle import enumerate_intersection, lies_on, random_unimodular
from .report import PropertyResult, VerifyReport
from .subtorus import (
    OrientedSubtorus,
    coordinate_subtorus,
    dual_subtorus,
    expand_homology,
    expand_ktheory,
    intersection_data,
    pairing_signed,
)


@dataclass(frozen=True)
class VerifyConfig:
    dims: tuple[int, ...] = (1, 2, 3)
    trials: int = 200
    seed: int = 0
    entry_bound: int = 4
    # the invert examples live in ambient 2d; keep them affordable
    max_example_d: int = 3
    # enumeration oracle is exponential in the point count; d <= 4 as specified
    max_enum_d: int = 4


def _rng(cfg: VerifyConfig, name: str, d: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}:{d}")


def _subtorus(d: int, k: int, rng: random.Random, bound: int, side: str = "base") -> OrientedSubtorus:
    U = random_unimodular(d, rng, bound)
    sign = rng.choice((1, -1)) if k == 0 else 1
    return OrientedSubtorus(d, side, U.select_columns(range(k)), sign)


def _cex(cfg: VerifyConfig, t: OrientedSubtorus, **extra) -> dict:
    out = {"seed": cfg.seed, "d": t.d, "k": t.k, "basis": t.basis.to_text()}
    if t.sign == -1:
        out["orientation"] = -1
    out.update(extra)
    return out


def _coordinate_then_random(cfg: VerifyConfig, name: str, d: int, side: str) -> Iterable[OrientedSubtorus]:
    for k in range(d + 1):
        for S in combinations(range(1, d + 1), k):
            yield coordinate_subtorus(d, S, side)
    rng = _rng(cfg, name, d)
    for i in range(cfg.trials):
        yield _subtorus(d, i % (d + 1), rng, cfg.entry_bound, side)


def check_thm_k(cfg: VerifyConfig, d: int) -> PropertyResult:
    f = fm.build_fm_k(d)
    n = 0
    for t in _coordinate_then_random(cfg, "thm-k", d, "base"):
        n += 1
        lhs = f(expand_ktheory(t))
        rhs = fm.thm_k(t.k, d) * expand_ktheory(dual_subtorus(t))
        if lhs != rhs:
            return PropertyResult(f"thm-k[d={d}]", False, n, _cex(cfg, t, lhs=str(lhs), rhs=str(rhs)))
    return PropertyResult(f"thm-k[d={d}]", True, n)


def check_thm_h(cfg: VerifyConfig, d: int) -> PropertyResult:
    f = fm.build_fm_h(d)
    n = 0
    for t in _coordinate_then_random(cfg, "thm-h", d, "dual"):
        n += 1
        lhs = f(expand_homology(t))
        rhs = fm.thm_h(t.k, d) * expand_homology(dual_subtorus(t))
        if lhs != rhs:
            return PropertyResult(f"thm-h[d={d}]", False, n, _cex(cfg, t, lhs=str(lhs), rhs=str(rhs)))
    return PropertyResult(f"thm-h[d={d}]", True, n)


def check_assembly(cfg: VerifyConfig, d: int) -> PropertyResult:
    name = f"assembly[d={d}]"
    mu = fm.build_assembly(d)
    if mu != compose_maps(fm.build_fm_k(d), fm.build_pd_spin(d)):
        return PropertyResult(name, False, 1, {"seed": cfg.seed, "d": d, "reason": "mu != FM_K o PD"})
    n = 1
    for t in _coordinate_then_random(cfg, "assembly", d, "base"):
        n += 1
        lhs = mu(expand_homology(t))
        rhs = fm.thm_k(t.k, d) * expand_ktheory(dual_subtorus(t))
        if lhs != rhs:
            return PropertyResult(name, False, n, _cex(cfg, t, lhs=str(lhs), rhs=str(rhs)))
    return PropertyResult(name, True, n)


def check_fm_structure(cfg: VerifyConfig, d: int) -> PropertyResult:
    """FM_K is a signed complement permutation; grade k goes to grade d - k."""
    f = fm.build_fm_k(d)
    ok = fm.is_signed_complement_permutation(f)
    for m in monomials(d):
        ok = ok and f.images[m].grades() == {d - len(m)}
    cex = None if ok else {"seed": cfg.seed, "d": d, "matrix": f.matrix().to_text()}
    return PropertyResult(f"fm-structure[d={d}]", ok, 2 ** d, cex)


def check_pd_invertible(cfg: VerifyConfig, d: int) -> PropertyResult:
    p = fm.build_pd_spin(d)
    try:
        q = invert_map(p)
    except ValueError as exc:
        return PropertyResult(f"pd-invertible[d={d}]", False, 1, {"seed": cfg.seed, "d": d, "error": str(exc)})
    ok = compose_maps(q, p) == GradedLinearMap.identity(p.source) and fm.is_signed_complement_permutation(p)
    cex = None if ok else {"seed": cfg.seed, "d": d, "matrix": p.matrix().to_text()}
    return PropertyResult(f"pd-invertible[d={d}]", ok, 2 ** d, cex)


def check_pairing_count(cfg: VerifyConfig, d: int) -> PropertyResult:
    """|det[B|B']| equals the enumerated intersection, and each point lies on both."""
    name = f"pairing-count[d={d}]"
    rng = _rng(cfg, "pairing-count", d)
    n = 0
    while n < cfg.trials:
        k = rng.randint(0, d)
        t = _subtorus(d, k, rng, cfg.entry_bound)
        u = _subtorus(d, d - k, rng, cfg.entry_bound)
        s = pairing_signed(t, u)
        if s == 0:
            continue
        n += 1
        pts = enumerate_intersection(t, u)
        if len(pts) != abs(s) or not all(lies_on(t, p) and lies_on(u, p) for p in pts):
            return PropertyResult(name, False, n, _cex(cfg, t, other=u.basis.to_text(), signed=s,
                                                       points=len(pts)))
    return PropertyResult(name, True, n)


def check_laplace(cfg: VerifyConfig, d: int) -> PropertyResult:
    """<[T]_!, [T']_*> = det[B|B'] for complementary pairs (transverse or not)."""
    name = f"laplace[d={d}]"
    rng = _rng(cfg, "laplace", d)
    for n in range(1, cfg.trials + 1):
        k = rng.randint(0, d)
        t = _subtorus(d, k, rng, cfg.entry_bound)
        u = _subtorus(d, d - k, rng, cfg.entry_bound)
        if pair_kh(expand_ktheory(t), expand_homology(u)) != pairing_signed(t, u):
            return PropertyResult(name, False, n, _cex(cfg, t, other=u.basis.to_text()))
    return PropertyResult(name, True, cfg.trials)


def check_double_dual(cfg: VerifyConfig, d: int) -> PropertyResult:
    """The double dual has the original lattice and an orientation sign fixed by (k, d)."""
    name = f"double-dual[d={d}]"
    rng = _rng(cfg, "double-dual", d)
    signs: dict[int, int] = {}
    for n in range(1, cfg.trials + 1):
        t = _subtorus(d, rng.randint(0, d), rng, cfg.entry_bound)
        tt = dual_subtorus(dual_subtorus(t))
        a, b = expand_homology(t), expand_homology(tt)
        if a == b:
            s = 1
        elif a == -b:
            s = -1
        else:
            return PropertyResult(name, False, n, _cex(cfg, t, double_dual=tt.basis.to_text()))
        if signs.setdefault(t.k, s) != s:
            return PropertyResult(name, False, n, _cex(cfg, t, reason="sign varies within (k, d)"))
    note = "signs by k: " + ", ".join(f"{k}:{signs[k]:+d}" for k in sorted(signs))
    return PropertyResult(name, True, cfg.trials, note=note)


def check_ring(cfg: VerifyConfig, d: int) -> PropertyResult:
    """wedge([T]_!, [T']_!) = componentCount * [identity component]_! for transverse pairs."""
    name = f"ring[d={d}]"
    rng = _rng(cfg, "ring", d)
    n = 0
    while n < cfg.trials:
        k = rng.randint(0, d)
        kk = rng.randint(d - k, d)
        t = _subtorus(d, k, rng, cfg.entry_bound)
        u = _subtorus(d, kk, rng, cfg.entry_bound)
        data = intersection_data(t, u)
        if not data.transverse:
            continue
        n += 1
        lhs = wedge(expand_ktheory(t), expand_ktheory(u))
        rhs = data.component_count * expand_ktheory(data.identity_component)
        if lhs != rhs:
            return PropertyResult(name, False, n, _cex(cfg, t, other=u.basis.to_text(),
                                                       lhs=str(lhs), rhs=str(rhs)))
    return PropertyResult(name, True, n)


def check_exterior(cfg: VerifyConfig, d: int) -> PropertyResult:
    """<x_I, y_J> = δ_IJ and x_I ∧ x_J = merge-sign x_{I∪J}, exhaustively."""
    xs, ys = AlgebraSpec(d, "x", "base"), AlgebraSpec(d, "y", "base")
    mons = monomials(d)
    n = 0
    for I in mons:
        xI = ExteriorClass.monomial(xs, I)
        for J in mons:
            n += 1
            xJ = ExteriorClass.monomial(xs, J)
            if pair_kh(xI, ExteriorClass.monomial(ys, J)) != int(I == J):
                return PropertyResult(f"exterior[d={d}]", False, n, {"seed": cfg.seed, "d": d, "I": list(I), "J": list(J)})
            s = merge_sign(I, J)
            expect = ExteriorClass.monomial(xs, sorted(I + J), s) if s else ExteriorClass.zero(xs)
            p, q = len(I), len(J)
            if wedge(xI, xJ) != expect or wedge(xI, xJ) != (-1) ** (p * q) * wedge(xJ, xI):
                return PropertyResult(f"exterior[d={d}]", False, n, {"seed": cfg.seed, "d": d, "I": list(I), "J": list(J)})
    return PropertyResult(f"exterior[d={d}]", True, n)


def check_lattice(cfg: VerifyConfig, d: int) -> PropertyResult:
    """HNF and SNF witness identities on random matrices of up to d x d."""
    name = f"lattice[d={d}]"
    rng = _rng(cfg, "lattice", d)
    for n in range(1, cfg.trials + 1):
        m, c = rng.randint(1, d), rng.randint(1, d)
        A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(c)] for _ in range(m)])
        h = hermite_normal_form(A)
        s = smith_normal_form(A)
        inv = s.invariants
        ok = (A @ h.U == h.H and abs(det(h.U)) == 1 and s.U @ A @ s.V == s.D
              and abs(det(s.U)) == 1 and abs(det(s.V)) == 1
              and all(b % a == 0 for a, b in zip(inv, inv[1:])) and all(x > 0 for x in inv))
        if not ok:
            return PropertyResult(name, False, n, {"seed": cfg.seed, "d": d, "matrix": A.to_text()})
    return PropertyResult(name, True, cfg.trials)


PER_DIMENSION: tuple[Callable[[VerifyConfig, int], PropertyResult], ...] = (
    check_lattice,
    check_exterior,
    check_laplace,
    check_ring,
    check_double_dual,
    check_thm_k,
    check_thm_h,
    check_fm_structure,
    check_pd_invertible,
    check_assembly,
)


def run_verify(cfg: VerifyConfig, properties: Iterable[str] | None = None) -> VerifyReport:
    """Run the suite for every d in ``cfg.dims``; ``properties`` filters by name prefix."""
    wanted = None if properties is None else tuple(properties)
    report = VerifyReport(seed=cfg.seed, params={"dims": ",".join(map(str, cfg.dims)),
                                                "trials": cfg.trials, "entryBound": cfg.entry_bound})

    def want(name: str) -> bool:
        return wanted is None or any(name.startswith(w) for w in wanted)

    for d in cfg.dims:
        for check in PER_DIMENSION:
            label = check.__name__.removeprefix("check_").replace("_", "-")
            if want(label):
                report.add(check(cfg, d))
        if d <= cfg.max_enum_d and want("pairing-count"):
            report.add(check_pairing_count(cfg, d))
        if want("adjointness"):
            report.extend(fm.adjointness_check(d))
        if want("fm-invertible"):
            report.extend(fm.fm_inverse_structure(d))
        if d <= cfg.max_example_d:
            if want("invert-torus"):
                report.extend(fm.example_invert_torus(d))
            if want("invert-dual"):
                report.extend(fm.example_invert_dual(d))
    return report
