"""Integer exterior algebras Λ*(Z^d) modelling K^*(T^d) and K_*(T^d).

Cohomology classes use x-type generators, homology classes y-type; each class
also carries which torus it lives on (the base torus T^d or the dual torus of
characters). Monomials are ascending tuples of 1-based indices, ordered by
size and then lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, NotInvertibleError, SpecMismatchError, VarianceError
from .lattice import IntMatrix, hermite_normal_form

VARIANCES = ("x", "y")
SIDES = ("base", "dual")

Monomial = tuple[int, ...]


def monomials(d: int) -> list[Monomial]:
    """All 2^d monomials in canonical order (size, then lexicographic)."""
    return [m for k in range(d + 1) for m in combinations(range(1, d + 1), k)]


def complement(idx: Iterable[int], d: int) -> Monomial:
    s = set(idx)
    return tuple(i for i in range(1, d + 1) if i not in s)


def merge_sign(I: Monomial, J: Monomial) -> int:
    """Sign of the permutation sorting the concatenation I, J (0 if they meet)."""
    if set(I) & set(J):
        return 0
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class AlgebraSpec:
    d: int
    variance: str
    side: str

    def __post_init__(self):
        if self.d < 0:
            raise DimensionError("ambient rank must be non-negative")
        if self.variance not in VARIANCES:
            raise VarianceError(f"variance must be one of {VARIANCES}, got {self.variance!r}")
        if self.side not in SIDES:
            raise SpecMismatchError(f"side must be one of {SIDES}, got {self.side!r}")

    def __str__(self) -> str:
        return f"Λ{self.variance}(d={self.d}, {self.side})"


@dataclass(frozen=True, eq=False)
class ExteriorClass:
    """Finitely supported integer combination of monomials; zero terms are dropped."""

    spec: AlgebraSpec
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, c in self.terms.items():
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)) or any(not 1 <= i <= self.spec.d for i in idx):
                raise DimensionError(f"bad index set {idx} for d={self.spec.d}")
            if c:
                clean[idx] = clean.get(idx, 0) + int(c)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> ExteriorClass:
        return cls(spec, {})

    @classmethod
    def monomial(cls, spec: AlgebraSpec, idx: Iterable[int], c: int = 1) -> ExteriorClass:
        return cls(spec, {tuple(idx): c})

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def variance(self) -> str:
        return self.spec.variance

    @property
    def side(self) -> str:
        return self.spec.side

    def coefficient(self, idx: Iterable[int]) -> int:
        return self.terms.get(tuple(idx), 0)

    def grades(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[Monomial, int]]:
        order = {m: i for i, m in enumerate(monomials(self.d))}
        return iter(sorted(self.terms.items(), key=lambda kv: order[kv[0]]))

    def _check(self, other: ExteriorClass) -> None:
        if self.spec != other.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorClass):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.spec, frozenset(self.terms.items())))

    def __add__(self, other: ExteriorClass) -> ExteriorClass:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorClass(self.spec, out)

    def __neg__(self) -> ExteriorClass:
        return ExteriorClass(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: ExteriorClass) -> ExteriorClass:
        return self + (-other)

    def __mul__(self, k: int) -> ExteriorClass:
        return ExteriorClass(self.spec, {m: k * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def relabel(self, spec: AlgebraSpec) -> ExteriorClass:
        if spec.d != self.d:
            raise SpecMismatchError("relabel keeps the ambient rank")
        return ExteriorClass(spec, self.terms)

    def __str__(self) -> str:
        v = self.variance + ("^" if self.side == "dual" else "")
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            name = f"{v}_{{{','.join(map(str, m))}}}" if m else f"{v}_∅"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("- " if c < 0 else "+ ") + mag + name)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "variance": self.variance,
            "side": self.side,
            "terms": [{"idx": list(m), "c": c} for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> ExteriorClass:
        spec = AlgebraSpec(int(obj["d"]), obj["variance"], obj["side"])
        terms: dict[Monomial, int] = {}
        for t in obj.get("terms", []):
            idx = tuple(int(i) for i in t["idx"])
            terms[idx] = terms.get(idx, 0) + int(t["c"])
        return cls(spec, terms)


def wedge(a: ExteriorClass, b: ExteriorClass) -> ExteriorClass:
    """Exterior product, x_I ∧ x_J = ±x_{I∪J} with the merge sign, 0 if I ∩ J ≠ ∅."""
    a._check(b)
    out: dict[Monomial, int] = {}
    for I, ca in a.terms.items():
        for J, cb in b.terms.items():
            s = merge_sign(I, J)
            if s:
                K = tuple(sorted(I + J))
                out[K] = out.get(K, 0) + s * ca * cb
    return ExteriorClass(a.spec, out)


def pair_kh(a: ExteriorClass, b: ExteriorClass) -> int:
    """K-theory/K-homology pairing; the y-monomials are the dual basis of the x-monomials."""
    if a.variance != "x" or b.variance != "y":
        raise VarianceError(
            f"pairing takes an x-type class then a y-type class, got {a.variance}, {b.variance}")
    if a.d != b.d or a.side != b.side:
        raise SpecMismatchError(f"cannot pair {a.spec} with {b.spec}")
    return sum(c * b.terms.get(m, 0) for m, c in a.terms.items())


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """Integer linear map between exterior algebras, stored by monomial images.

    ``degree_shift`` is bookkeeping for the KK-degree only; grading behaviour is
    checked by callers, not enforced here.
    """

    source: AlgebraSpec
    target: AlgebraSpec
    images: Mapping[Monomial, ExteriorClass]
    degree_shift: int = 0
    name: str = ""

    def __post_init__(self):
        missing = [m for m in monomials(self.source.d) if m not in self.images]
        if missing:
            raise SpecMismatchError(f"no image for source monomials {missing}")
        for m, img in self.images.items():
            if img.spec != self.target:
                raise SpecMismatchError(f"image of {m} lives in {img.spec}, expected {self.target}")

    @classmethod
    def from_matrix(cls, source: AlgebraSpec, target: AlgebraSpec, M: IntMatrix,
                    degree_shift: int = 0, name: str = "") -> GradedLinearMap:
        rows, cols = monomials(target.d), monomials(source.d)
        if M.shape != (len(rows), len(cols)):
            raise DimensionError(f"matrix shape {M.shape} does not fit {source} -> {target}")
        images = {c: ExteriorClass(target, {r: M[i, j] for i, r in enumerate(rows)})
                  for j, c in enumerate(cols)}
        return cls(source, target, images, degree_shift, name)

    @classmethod
    def identity(cls, spec: AlgebraSpec) -> GradedLinearMap:
        return cls(spec, spec, {m: ExteriorClass.monomial(spec, m) for m in monomials(spec.d)},
                   0, "id")

    @classmethod
    def zero(cls, source: AlgebraSpec, target: AlgebraSpec) -> GradedLinearMap:
        return cls(source, target, {m: ExteriorClass.zero(target) for m in monomials(source.d)},
                   0, "0")

    def matrix(self) -> IntMatrix:
        """Rows are target monomials, columns source monomials, both in canonical order."""
        rows, cols = monomials(self.target.d), monomials(self.source.d)
        return IntMatrix.from_rows(
            [[self.images[c].coefficient(r) for c in cols] for r in rows], ncols=len(cols))

    def __call__(self, a: ExteriorClass) -> ExteriorClass:
        return apply_map(self, a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(self.images[m] == other.images[m] for m in monomials(self.source.d)))

    __hash__ = None


def apply_map(f: GradedLinearMap, a: ExteriorClass) -> ExteriorClass:
    if a.spec != f.source:
        raise SpecMismatchError(f"map expects {f.source}, got {a.spec}")
    out = ExteriorClass.zero(f.target)
    for m, c in a.terms.items():
        out = out + c * f.images[m]
    return out


def compose_maps(g: GradedLinearMap, f: GradedLinearMap) -> GradedLinearMap:
    """g ∘ f."""
    if f.target != g.source:
        raise SpecMismatchError(f"cannot compose: {f.target} feeds {g.source}")
    images = {m: apply_map(g, img) for m, img in f.images.items()}
    name = f"{g.name}∘{f.name}" if g.name and f.name else ""
    return GradedLinearMap(f.source, g.target, images, f.degree_shift + g.degree_shift, name)


def invert_map(f: GradedLinearMap) -> GradedLinearMap:
    """Integer inverse; raises NotInvertibleError unless the matrix is unimodular."""
    if f.source.d != f.target.d:
        raise NotInvertibleError("source and target ranks differ")
    h = hermite_normal_form(f.matrix())
    if h.H != IntMatrix.identity(h.H.rows):
        raise NotInvertibleError(f"matrix of {f.name or 'map'} is not unimodular")
    name = f"{f.name}⁻¹" if f.name else ""
    return GradedLinearMap.from_matrix(f.target, f.source, h.U, -f.degree_shift, name)
