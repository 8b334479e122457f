"""Noncommutative L^p spaces over finite-dimensional von Neumann algebras.

Structure theory of surjective L^p isometries for p != 2: synthesis from
(Jordan *-isomorphism, unitary) data, decomposition of raw maps back to that
form, Clarkson-type orthogonality, semi-inner products, corner calculus, and
a seeded property-suite harness.
"""

from .algebra import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    Block,
    CentralProjection,
    MultiMatrixAlgebra,
    Projection,
    allclose,
    central_support,
    frob_norm,
    from_vec,
    is_hermitian,
    is_psd,
    is_unitary,
    joint_left_support,
    joint_right_support,
    jordan_product,
    left_support,
    linmap_matrix,
    op_norm,
    pairing_matrix,
    polar_decompose,
    positive_part,
    proj_join,
    proj_leq,
    proj_meet,
    psd_power,
    random_sample,
    right_support,
    supports,
    to_vec,
    trace,
)
from .errors import (
    BlockMismatchError,
    CertificationError,
    ExponentError,
    NclpError,
    NotBijectiveError,
    NotCornerError,
    NotIsometryError,
    NotJordanError,
    NotProjectionError,
    PolarPartNotUnitaryError,
    PositiveImageError,
    ShapeMismatchError,
    UsageError,
)
from .isometry import (
    EPS_CERT,
    CentralCorrespondence,
    CornerImageReport,
    Decomposition,
    IsometryScreen,
    LpIsometry,
    ModuleRelationReport,
    RawIsometry,
    RightOrthoiso,
    StructuredIsometry,
    apply_isometry,
    central_correspondence,
    check_module_relation,
    corner_image,
    decompose,
    extract_right_orthoiso,
    synthesize,
    to_raw,
    verify_isometry_sampled,
)
from .jordan import (
    CentralDensity,
    JordanMap,
    apply_jordan,
    classify_linear_map,
    jordan_distance,
    jordan_split,
    pushforward_functional,
    random_jordan,
)
from .lpspace import (
    Corner,
    LpVector,
    PositiveFunctional,
    clarkson_defect,
    decompose_into_positives,
    dual_exponent,
    duality_vector,
    functional_pth_root,
    haagerup_pair,
    is_orthogonal_algebraic,
    lp_norm,
    orthocomplement,
    semi_inner_product,
)
from .suites import (
    SUITE_NAMES,
    Instance,
    SuiteConfig,
    SuiteReport,
    SuiteResult,
    generate_instance,
    report_to_json,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "Block",
    "BlockMismatchError",
    "CentralCorrespondence",
    "CentralDensity",
    "CentralProjection",
    "CertificationError",
    "Corner",
    "CornerImageReport",
    "Decomposition",
    "EPS_CERT",
    "EPS_EQ",
    "EPS_RANK",
    "ExponentError",
    "Instance",
    "IsometryScreen",
    "JordanMap",
    "LpIsometry",
    "LpVector",
    "ModuleRelationReport",
    "MultiMatrixAlgebra",
    "NclpError",
    "NotBijectiveError",
    "NotCornerError",
    "NotIsometryError",
    "NotJordanError",
    "NotProjectionError",
    "PolarPartNotUnitaryError",
    "PositiveFunctional",
    "PositiveImageError",
    "Projection",
    "RawIsometry",
    "RightOrthoiso",
    "SUITE_NAMES",
    "ShapeMismatchError",
    "StructuredIsometry",
    "SuiteConfig",
    "SuiteReport",
    "SuiteResult",
    "UsageError",
    "allclose",
    "apply_isometry",
    "apply_jordan",
    "central_correspondence",
    "central_support",
    "check_module_relation",
    "clarkson_defect",
    "classify_linear_map",
    "corner_image",
    "decompose",
    "decompose_into_positives",
    "dual_exponent",
    "duality_vector",
    "extract_right_orthoiso",
    "frob_norm",
    "from_vec",
    "functional_pth_root",
    "generate_instance",
    "haagerup_pair",
    "is_hermitian",
    "is_orthogonal_algebraic",
    "is_psd",
    "is_unitary",
    "joint_left_support",
    "joint_right_support",
    "jordan_distance",
    "jordan_product",
    "jordan_split",
    "left_support",
    "linmap_matrix",
    "lp_norm",
    "op_norm",
    "orthocomplement",
    "pairing_matrix",
    "polar_decompose",
    "positive_part",
    "proj_join",
    "proj_leq",
    "proj_meet",
    "psd_power",
    "pushforward_functional",
    "random_jordan",
    "random_sample",
    "report_to_json",
    "right_support",
    "run_suite",
    "semi_inner_product",
    "supports",
    "synthesize",
    "to_raw",
    "to_vec",
    "trace",
    "verify_isometry_sampled",
]
