"""Mod-2 surface algebra, Lefschetz fibration checks and Z2 geography bookkeeping."""

from .gf2 import BitMatrix, BitVector, nullspace, rank, solve_affine
from .surface import CurveClass, SurfaceModel, chain_classes, pairing, transvect, twist_matrix
from .spinforms import QuadraticForm, Spin, W2Type, classify_w2, find_spin_form, mod2_even_type, rokhlin_gate
from .fibrations import (
    Factorization,
    LefschetzFibration,
    catalog_fibration,
    double_along_fiber,
    endo_signature,
    euler_char,
    hurwitz_move,
    spin_status_closed,
    total_h1_action,
    verify_relation_mod2,
)
from .calculus import (
    EvenForm,
    ManifoldDescriptor,
    Pi1,
    RokhlinViolation,
    catalog_block,
    double_cover_form,
    fiber_sum,
    form_from_invariants,
    invariants_from_form,
    torus_surgery,
    z2_construct,
    z2_double,
    z2_quotient,
)
from .geography import audit_family, constraint_lines, coverage, family_catalog, missing_points, theorem_region

__version__ = "0.1.0"
