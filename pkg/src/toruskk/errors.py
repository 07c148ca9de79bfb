"""Exception hierarchy.

Every error raised on bad mathematical input derives from ``ToruskkError`` so
the CLI can map it to exit status 2 with a machine-readable payload.
"""


class ToruskkError(ValueError):
    kind = "error"

    def to_json(self) -> dict:
        return {"error": {"type": self.kind, "message": str(self)}}


class DimensionError(ToruskkError):
    kind = "dimension"


class RankError(ToruskkError):
    kind = "rank"


class PrimitivityError(ToruskkError):
    """Basis spans a sublattice of finite index > 1 in its saturation."""

    kind = "primitivity"

    def __init__(self, message: str, invariant: int | None = None):
        super().__init__(message)
        self.invariant = invariant

    def to_json(self) -> dict:
        out = super().to_json()
        if self.invariant is not None:
            out["error"]["invariant"] = self.invariant
        return out


class SpecMismatchError(ToruskkError):
    kind = "spec-mismatch"


class VarianceError(SpecMismatchError):
    kind = "variance"


class NotInvertibleError(ToruskkError):
    kind = "not-invertible"


class TransversalityError(ToruskkError):
    kind = "transversality"


class ParseError(ToruskkError):
    kind = "parse"
