"""Command-line front end.

Matrices are given as text, rows separated by ';' and entries by ',', or as a
JSON list of rows. COLUMNS ARE BASIS VECTORS: "1;1" is the single vector
(1, 1) in Z^2, while "1,1" is a 1 x 2 matrix.

Exit status: 0 on success, 1 when ``verify`` finds a failing property,
2 on computational errors (printed as a JSON error object), 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Any, Sequence

from . import fm
from .errors import SpecMismatchError, ToruskkError
from .exterior import ExteriorClass, GradedLinearMap, apply_map, invert_map, monomials, wedge
from .report import VerifyReport, format_report
from .subtorus import (
    OrientedSubtorus,
    dual_subtorus,
    expand_homology,
    expand_ktheory,
    intersection_data,
    make_subtorus,
    pairing_signed,
)
from .verify import VerifyConfig, run_verify

EXIT_OK, EXIT_FAILED, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2, 64

MAPS = {
    "fm": fm.build_fm_k,
    "fmh": fm.build_fm_h,
    "pd": fm.build_pd_spin,
    "assembly": fm.build_assembly,
    "fm-inverse": lambda d: invert_map(fm.build_fm_k(d)),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # lets "--basis -1;2" through: matrix text starting with a minus is a value, not a flag
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d[\d,;\s-]*$")

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _parse_json_arg(text: str) -> Any:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON argument: {exc}") from None


def _subtorus_from(args, basis_attr: str = "basis") -> OrientedSubtorus:
    basis = getattr(args, basis_attr)
    if basis is None:
        raise UsageError(f"--{basis_attr.replace('_', '-')} is required")
    if args.d is None:
        raise UsageError("--d is required")
    return make_subtorus(args.d, args.side, basis, args.orientation)


def _mono_label(variance: str, side: str, m) -> str:
    v = variance + ("^" if side == "dual" else "")
    return f"{v}_{''.join(map(str, m))}" if m else f"{v}_0"


def _matrix_json(name: str, f: GradedLinearMap) -> dict:
    M = f.matrix()
    return {
        "map": name,
        "d": f.source.d,
        "source": {"variance": f.source.variance, "side": f.source.side},
        "target": {"variance": f.target.variance, "side": f.target.side},
        "degreeShift": f.degree_shift,
        "rows": [list(m) for m in monomials(f.target.d)],
        "cols": [list(m) for m in monomials(f.source.d)],
        "entries": M.to_lists(),
    }


def _matrix_text(name: str, f: GradedLinearMap) -> str:
    rows = [_mono_label(f.target.variance, f.target.side, m) for m in monomials(f.target.d)]
    cols = [_mono_label(f.source.variance, f.source.side, m) for m in monomials(f.source.d)]
    M = f.matrix().to_lists()
    w = max(len(s) for s in rows + cols + [str(x) for r in M for x in r])
    lw = max(len(s) for s in rows)
    lines = [f"# {name} d={f.source.d} {f.source} -> {f.target} degreeShift={f.degree_shift}",
             " " * lw + " " + " ".join(c.rjust(w) for c in cols)]
    for label, r in zip(rows, M):
        lines.append(label.ljust(lw) + " " + " ".join(str(x).rjust(w) for x in r))
    return "\n".join(lines) + "\n"


def _render(obj: Any, fmt: str) -> str:
    if fmt == "json":
        payload = obj.to_json() if hasattr(obj, "to_json") else obj
        return json.dumps(payload, ensure_ascii=False) + "\n"
    if isinstance(obj, VerifyReport):
        return format_report(obj)
    if isinstance(obj, ExteriorClass):
        return f"{obj}\n"
    if isinstance(obj, OrientedSubtorus):
        extra = " orientation=-1" if obj.sign == -1 else ""
        return f"d={obj.d} side={obj.side} basis={obj.basis.to_text()}{extra}\n"
    if isinstance(obj, dict):
        return "".join(f"{k}: {v.to_json() if hasattr(v, 'to_json') else v}\n" for k, v in obj.items())
    return f"{obj}\n"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toruskk", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    def common(sp, basis: bool = True, two: bool = False):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if basis:
            sp.add_argument("--d", type=int, help="ambient dimension")
            sp.add_argument("--side", choices=("base", "dual"), default="base")
            sp.add_argument("--basis", help="basis matrix, columns are basis vectors")
            sp.add_argument("--orientation", type=int, choices=(1, -1), default=1,
                            help="orientation sign, only meaningful for the trivial subgroup")
        if two:
            sp.add_argument("--basis2", help="second subtorus basis (same d and side)")
        return sp

    common(sub.add_parser("dual", help="dual subtorus"))
    e = common(sub.add_parser("expand", help="exterior-algebra class of a subtorus"))
    e.add_argument("--variance", choices=("x", "y"), default="x",
                   help="x: K-theory class [T]_!, y: K-homology class [T]_*")
    f = common(sub.add_parser("fm", help="Fourier-Mukai transform of a subtorus class"))
    f.add_argument("--class", dest="cls", help="apply to a serialized class instead (JSON or @file)")
    a = common(sub.add_parser("assembly", help="assembly map on [T]_*"))
    a.add_argument("--class", dest="cls", help="apply to a serialized y-class on the base torus")
    common(sub.add_parser("pair", help="signed intersection pairing"), two=True)
    common(sub.add_parser("intersect", help="intersection data of two subtori"), two=True)
    w = common(sub.add_parser("wedge", help="wedge product of two classes"), basis=False)
    w.add_argument("--a", required=True)
    w.add_argument("--b", required=True)
    m = common(sub.add_parser("matrix", help="dump a map as a labelled integer matrix"), basis=False)
    m.add_argument("map", choices=sorted(MAPS))
    m.add_argument("--d", type=int, required=True)
    v = common(sub.add_parser("verify", help="run the seeded property suite"), basis=False)
    v.add_argument("--d", default="1,2,3", help="dimension or comma-separated list")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=None, help="defaults to $TORUSKK_SEED, then 0")
    v.add_argument("--entry-bound", type=int, default=4)
    v.add_argument("--property", action="append", default=None,
                   help="only properties whose name starts with this (repeatable)")
    return p


def _run(args) -> tuple[Any, int]:
    verb = args.verb
    if verb == "dual":
        return dual_subtorus(_subtorus_from(args)), EXIT_OK
    if verb == "expand":
        t = _subtorus_from(args)
        return (expand_ktheory(t) if args.variance == "x" else expand_homology(t)), EXIT_OK
    if verb == "fm":
        if args.cls is not None:
            c = ExteriorClass.from_json(_parse_json_arg(args.cls))
            if (c.variance, c.side) == ("x", "base"):
                return apply_map(fm.build_fm_k(c.d), c), EXIT_OK
            if (c.variance, c.side) == ("y", "dual"):
                return apply_map(fm.build_fm_h(c.d), c), EXIT_OK
            raise SpecMismatchError("fm acts on x-classes of the base torus or y-classes of the dual torus")
        t = _subtorus_from(args)
        if t.side == "base":
            return apply_map(fm.build_fm_k(t.d), expand_ktheory(t)), EXIT_OK
        return apply_map(fm.build_fm_h(t.d), expand_homology(t)), EXIT_OK
    if verb == "assembly":
        if args.cls is not None:
            c = ExteriorClass.from_json(_parse_json_arg(args.cls))
            return apply_map(fm.build_assembly(c.d), c), EXIT_OK
        t = _subtorus_from(args)
        return fm.assembly_on_subtorus(t), EXIT_OK
    if verb == "pair":
        t, u = _subtorus_from(args), _subtorus_from(args, "basis2")
        s = pairing_signed(t, u)
        return {"signed": s, "count": abs(s)}, EXIT_OK
    if verb == "intersect":
        t, u = _subtorus_from(args), _subtorus_from(args, "basis2")
        return intersection_data(t, u), EXIT_OK
    if verb == "wedge":
        a = ExteriorClass.from_json(_parse_json_arg(args.a))
        b = ExteriorClass.from_json(_parse_json_arg(args.b))
        return wedge(a, b), EXIT_OK
    if verb == "matrix":
        if args.d < 1:
            raise UsageError("--d must be at least 1")
        f = MAPS[args.map](args.d)
        return (_matrix_json(args.map, f) if args.format == "json" else _matrix_text(args.map, f)), EXIT_OK
    if verb == "verify":
        try:
            dims = tuple(int(x) for x in str(args.d).split(",") if x.strip())
        except ValueError:
            raise UsageError(f"bad --d {args.d!r}") from None
        if not dims or any(x < 1 for x in dims) or args.trials < 0 or args.entry_bound < 1:
            raise UsageError("verify needs dimensions >= 1, trials >= 0, entry bound >= 1")
        seed = args.seed
        if seed is None:
            env = os.environ.get("TORUSKK_SEED")
            try:
                seed = int(env) if env else 0
            except ValueError:
                raise UsageError(f"TORUSKK_SEED must be an integer, got {env!r}") from None
        cfg = VerifyConfig(dims=dims, trials=args.trials, seed=seed, entry_bound=args.entry_bound)
        r = run_verify(cfg, args.property)
        return r, EXIT_OK if r.all_pass else EXIT_FAILED
    raise UsageError("a verb is required: " + ", ".join(
        ("dual", "expand", "fm", "assembly", "pair", "intersect", "wedge", "matrix", "verify")))


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, code = _run(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ToruskkError as exc:
        out.write(json.dumps(exc.to_json(), ensure_ascii=False) + "\n")
        return EXIT_COMPUTE
    if isinstance(result, str):
        out.write(result)
    else:
        out.write(_render(result, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
