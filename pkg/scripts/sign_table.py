"""Print the sign conventions the package settles on, per dimension.

Covers the two transform signs, the double-dual sign, FM_K twice, the
orientation of ascending-basis hyperplanes, and how far the two transforms
are from being adjoint.

    python3 scripts/sign_table.py --max-d 6
"""

import argparse

from toruskk import fm
from toruskk.exterior import apply_map, monomials, pair_kh, AlgebraSpec, ExteriorClass
from toruskk.subtorus import coordinate_subtorus, dual_subtorus, expand_homology, expand_ktheory


def double_dual_sign(d: int, k: int) -> int:
    t = coordinate_subtorus(d, range(1, k + 1))
    return 1 if expand_homology(dual_subtorus(dual_subtorus(t))) == expand_homology(t) else -1


def hyperplane_signs(d: int) -> list[int]:
    out = []
    for i in range(1, d + 1):
        c = expand_ktheory(coordinate_subtorus(d, [j for j in range(1, d + 1) if j != i]))
        out.append(c.terms[(i,)])
    return out


def adjoint_defect(d: int) -> int:
    fk, fh = fm.build_fm_k(d), fm.build_fm_h(d)
    xs, ys = AlgebraSpec(d, "x", "base"), AlgebraSpec(d, "y", "dual")
    bad = 0
    for I in monomials(d):
        a = ExteriorClass.monomial(xs, I)
        for J in monomials(d):
            b = ExteriorClass.monomial(ys, J)
            bad += pair_kh(apply_map(fk, a), b) != pair_kh(a, apply_map(fh, b))
    return bad


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-d", type=int, default=5)
    args = ap.parse_args()
    sgn = lambda s: "+" if s > 0 else "-"
    for d in range(1, args.max_d + 1):
        ks = range(d + 1)
        print(f"d={d}")
        print("  k            " + " ".join(f"{k:>2}" for k in ks))
        print("  thm_k        " + " ".join(f"{sgn(fm.thm_k(k, d)):>2}" for k in ks))
        print("  thm_h        " + " ".join(f"{sgn(fm.thm_h(k, d)):>2}" for k in ks))
        print("  double dual  " + " ".join(f"{sgn(double_dual_sign(d, k)):>2}" for k in ks))
        sq = fm.fm_square_signs(d)
        print("  FM_K twice   " + " ".join(f"{sgn(sq[k]):>2}" for k in ks))
        print("  hyperplanes  " + " ".join(sgn(s) for s in hyperplane_signs(d)))
        print(f"  adjointness  {adjoint_defect(d)} of {4 ** d} monomial pairs disagree")


if __name__ == "__main__":
    main()
