"""Exact workbench for quasi-Hopf algebras, twists, star products and
internal homomorphisms on free bimodules."""

from .scalars import (
    DEFAULT_ORDER,
    GaussianRational,
    HbarPoly,
    gaussian,
    series_inv,
    series_mul,
)
from .pbw import LiePresentation
from .tensors import (
    TensorElement,
    apply_on_leg,
    exp_truncated,
    extend_structure_map,
    invert_element,
    leg_embed,
    nc_mul,
    perm_legs,
)
from .hopf import (
    CochainTwist,
    QuasiHopfData,
    Report,
    apply_twist,
    check_quasiantipode,
    check_quasibialgebra,
    check_quasitriangular,
    compose_twists,
    gauge_transform_antipode,
    word_element,
)
from .polyfun import (
    AlgebraObject,
    DerivationRep,
    PolyFunction,
    act,
    all_monomials,
    check_braided_commutativity,
    check_rep_bracket,
    star,
    weak_assoc_defect,
)
from .presets import Preset, build_r_tensor, preset, trivial_twist

__version__ = "0.1.0"
