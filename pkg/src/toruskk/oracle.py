"""Brute-force ground truth: intersection points and seeded random subtori."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import DimensionError, TransversalityError
from .lattice import IntMatrix, det, integer_kernel_basis, smith_normal_form
from .subtorus import OrientedSubtorus


@dataclass(frozen=True, order=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in self.coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class RandomSpec:
    seed: int = 0
    entry_bound: int = 4
    trials: int = 100

    def __post_init__(self):
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be positive")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def enumerate_intersection(t: OrientedSubtorus, u: OrientedSubtorus) -> list[TorusPoint]:
    """All points of t ∩ u for complementary transverse subtori, via Smith form.

    Solutions of B a ≡ B' a' (mod Z^d) form R^{-1} Z^d with R = [B | -B'];
    modulo Z^d they are V · (m_i / d_i), 0 <= m_i < d_i, where U R V = diag(d_i).
    """
    if t.d != u.d or t.side != u.side:
        raise DimensionError("subtori live on different tori")
    d = t.d
    if t.k + u.k != d:
        raise DimensionError(f"dimensions {t.k} + {u.k} are not complementary in d={d}")
    R = t.basis.hstack(-u.basis)
    s = smith_normal_form(R)
    diag = [s.D[i, i] for i in range(d)]
    if any(x == 0 for x in diag):
        raise TransversalityError("subtori are not transverse")
    V = s.V
    points = set()
    for ms in product(*(range(x) for x in diag)):
        frac = [Fraction(m, x) for m, x in zip(ms, diag)]
        sol = [sum(V[i, j] * frac[j] for j in range(d)) for i in range(d)]
        a = sol[: t.k]
        p = [sum(t.basis[i, j] * a[j] for j in range(t.k)) for i in range(d)]
        points.add(TorusPoint(tuple(p)))
    return sorted(points)


def lies_on(t: OrientedSubtorus, p: TorusPoint) -> bool:
    """Membership via the annihilator: p ∈ T iff <n, p> ∈ Z for all n with B^T n = 0."""
    N = integer_kernel_basis(t.basis.T)
    return all(sum(N[i, j] * p.coords[i] for i in range(t.d)).denominator == 1
               for j in range(N.cols))


def _on_plane_d2(B: IntMatrix, p: tuple[Fraction, ...]) -> bool:
    # direct test in d <= 2 without lattice machinery
    k = B.cols
    if k == B.rows:
        return True
    if k == 0:
        return all(c % 1 == 0 for c in p)
    if B.rows == 1:
        return True
    b1, b2 = B[0, 0], B[1, 0]
    # p + z parallel to (b1, b2) for some integer z: search one period of z
    bound = abs(b1) + abs(b2) + 1
    for z1 in range(-bound, bound + 1):
        for z2 in range(-bound, bound + 1):
            if (p[0] + z1) * b2 - (p[1] + z2) * b1 == 0:
                return True
    return False


def grid_intersection(t: OrientedSubtorus, u: OrientedSubtorus, max_den: int = 12) -> list[TorusPoint]:
    """Secondary oracle for d <= 2: test every grid point with denominator <= max_den."""
    if t.d > 2:
        raise DimensionError("grid search is only for d <= 2")
    found = set()
    for q in range(1, max_den + 1):
        for num in product(range(q), repeat=t.d):
            p = tuple(Fraction(n, q) for n in num)
            if _on_plane_d2(t.basis, p) and _on_plane_d2(u.basis, p):
                found.add(TorusPoint(p))
    return sorted(found)


def random_unimodular(d: int, rng: random.Random, entry_bound: int = 4,
                      steps: int | None = None) -> IntMatrix:
    """Random product of bounded elementary column operations applied to I_d.

    Operations that would push an entry beyond ``entry_bound`` are rejected,
    so every entry stays in [-entry_bound, entry_bound].
    """
    M = [[int(i == j) for j in range(d)] for i in range(d)]
    steps = 4 * d + 2 if steps is None else steps
    for _ in range(steps):
        op = rng.randrange(3)
        if op == 0 and d >= 2:
            i, j = rng.sample(range(d), 2)
            c = rng.choice([x for x in range(-entry_bound, entry_bound + 1) if x])
            new = [r[i] + c * r[j] for r in M]
            if all(abs(x) <= entry_bound for x in new):
                for r, x in zip(M, new):
                    r[i] = x
        elif op == 1 and d >= 2:
            i, j = rng.sample(range(d), 2)
            for r in M:
                r[i], r[j] = r[j], r[i]
        elif d >= 1:
            i = rng.randrange(d)
            for r in M:
                r[i] = -r[i]
    return IntMatrix.from_rows(M, ncols=d)


def random_primitive_subtorus(d: int, k: int, spec: RandomSpec | random.Random,
                              side: str = "base") -> OrientedSubtorus:
    """First k columns of a random unimodular matrix; primitive by construction."""
    if not 0 <= k <= d:
        raise DimensionError(f"need 0 <= k <= d, got k={k}, d={d}")
    if isinstance(spec, RandomSpec):
        rng, bound = spec.rng(), spec.entry_bound
    else:
        rng, bound = spec, 4
    U = random_unimodular(d, rng, bound)
    sign = rng.choice((1, -1)) if k == 0 else 1
    return OrientedSubtorus(d, side, U.select_columns(range(k)), sign)


def random_subtori(d: int, k: int, spec: RandomSpec, side: str = "base") -> Iterator[OrientedSubtorus]:
    """``spec.trials`` subtori drawn from one seeded stream."""
    rng = spec.rng()
    for _ in range(spec.trials):
        U = random_unimodular(d, rng, spec.entry_bound)
        sign = rng.choice((1, -1)) if k == 0 else 1
        yield OrientedSubtorus(d, side, U.select_columns(range(k)), sign)


def random_transverse_pairs(d: int, spec: RandomSpec, side: str = "base"
                            ) -> Iterator[tuple[OrientedSubtorus, OrientedSubtorus]]:
    """``spec.trials`` transverse complementary pairs; non-transverse draws are redrawn."""
    rng = spec.rng()
    made = 0
    while made < spec.trials:
        k = rng.randint(0, d)
        t = OrientedSubtorus(d, side, random_unimodular(d, rng, spec.entry_bound).select_columns(range(k)))
        u = OrientedSubtorus(d, side, random_unimodular(d, rng, spec.entry_bound).select_columns(range(d - k)))
        if det(t.basis.hstack(u.basis)) != 0:
            made += 1
            yield t, u
