"""Exact K-theory of tori: dual subtori, Fourier-Mukai transform, assembly."""

from .errors import ToruskkError
from .exterior import (
    AlgebraSpec,
    ExteriorClass,
    GradedLinearMap,
    apply_map,
    compose_maps,
    invert_map,
    monomials,
    pair_kh,
    wedge,
)
from .fm import (
    adjointness_check,
    assembly_on_subtorus,
    build_assembly,
    build_fm_h,
    build_fm_k,
    build_pd_spin,
    example_invert_dual,
    example_invert_torus,
    fm_inverse_structure,
    thm_h,
    thm_k,
)
from .lattice import (
    IntMatrix,
    dual_section,
    hermite_normal_form,
    integer_kernel_basis,
    is_primitive_basis,
    pluecker_minors,
    saturate,
    smith_normal_form,
)
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

__version__ = "0.1.0"
