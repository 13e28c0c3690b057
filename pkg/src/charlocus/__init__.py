"""Exact characteristic-class calculus for dependency and degeneracy loci.

Exact mod 2 and twisted-integer classes (Schur determinants of
Stiefel-Whitney classes, the order-2 torsion polynomial and its
reductions), obstruction computations on projective spaces, and a small
numerical lab that verifies kernel and mapping-degree identities by
quadrature.
"""

from .charcalc import (
    SchurIndex,
    lift_to_bundle,
    projbundle_pushforward,
    schur_z,
    schur_z2,
    sq1,
    tensor_top_general,
    tensor_top_line,
    twisted_sq1,
)
from .graded import (
    DEFAULT_CAP,
    FreeTruncated,
    GeneratorSpec,
    GradedPoly,
    InputError,
    InternalError,
    ProjBundle,
    RingPresentation,
    TotalClass,
    TruncatedPower,
    Z,
    Z2,
    expression_string,
    format_poly,
    normal_form,
    poly_add,
    poly_mul,
    pontryagin_ring,
    projective_bundle,
    rp_ring,
    substitute,
    total_inverse,
    universal_pontryagin_class,
    universal_sw_class,
    w_ring,
)
from .kernels import (
    DegreeEstimate,
    OrientationReport,
    divisor_multiplicity,
    fiber_integral_check,
    lemma321_constant,
    mapping_degree,
    orientation_sign_check,
    sphere_volume,
)
from .maps import Ball, SampledMap, Sphere, builtin_map, complex_power_map, linear_map
from .obstructions import (
    BundleClassData,
    FeasibilityReport,
    dependency_class_mod2,
    degeneracy_class_mod2,
    feasibility_report,
    map_degeneracy_class_mod2,
    noninjectivity_class_mod2,
    normal_bundle_class,
    projection_degeneracy_class,
    rp_tangent_class,
)
from .parser import ParseError, parse_class
from .torsion import (
    Permutation,
    SymmetricGroupSplit,
    TwistedPoly,
    Verify615Report,
    decompose_S_ell,
    index_set_J,
    involution_P,
    involution_R,
    mod2_reduce,
    psi_embedding,
    q_class,
    real_reduce,
    torsion_polynomial,
    torsion_value_ring,
    verify_615,
    w_sigma,
)

__version__ = "0.1.0"
