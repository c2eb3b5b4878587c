"""
liestat
=======
Left-invariant Riemannian and statistical geometry on Lie groups from
structure constants, and the kernel classification of conjugate-symmetric
statistical structures.
"""

from liestat.algebra import (
    ALIASES,
    PRESETS,
    LieAlgebra,
    MilnorFrameSpec,
    NonUnimodularSpec,
    ad_matrix,
    bracket,
    change_frame,
    class_label,
    echelon_rows,
    is_subalgebra_ideal,
    jacobi_defect,
    milnor_invariant,
    milnor_label,
    nonuni_milnor_invariant,
    preset,
    unimodular_kernel,
)
from liestat.classify import (
    ConstraintSystem,
    SolutionSpace,
    SweepRow,
    build_system,
    classify,
    classify_nonunimodular,
    classify_product,
    classify_unimodular,
    contains,
    kernel,
    parse_grid,
    sweep,
)
from liestat.config import Tolerances, load_tolerances
from liestat.cubic import (
    CubicForm,
    cubic_from_entries,
    cubic_from_skewness,
    skewness_defects,
    skewness_from_cubic,
    unit_cubics,
)
from liestat.errors import InputError, LiestatError, NumericAmbiguityError, ValidationError
from liestat.geometry import (
    Connection,
    CurvatureTensor,
    InnerProduct,
    cartan_schouten,
    coordinate_sectionals,
    covariant_derivative,
    curvature,
    levi_civita,
    lower_curvature,
    metric_defect,
    ricci,
    ricci_symmetric,
    scalar_curvature,
    sectional_curvature,
    torsion,
    u_map,
)
from liestat.models import (
    NormalModel,
    TModel,
    coordinate_metric,
    flat_alpha,
    normal_structure,
    q_to_nu,
    t_coordinate_skewness,
    t_curvature_constant,
    t_frame_skewness,
    t_structure,
)
from liestat.statistical import (
    SasakianData,
    StatisticalStructure,
    alpha_curvature_decomposition,
    alpha_sectional_curvature,
    ambrose_singer_check,
    apolarity,
    codazzi_defect,
    conjugate_symmetry_defect,
    constant_curvature_fit,
    curvature_pair,
    dual_connection,
    equiaffine_check,
    essential_check,
    hessian_curvature,
    homogeneous_structure_check,
    homogeneous_tensors,
    identity_tension,
    is_bi_invariant,
    is_hessian,
    is_statistical,
    sasaki_eta_cubic,
    sasaki_family_connection,
    sasakian_data_check,
    sasakian_statistical_check,
    statistical_connection,
    statistical_curvature,
    statistical_sectional_curvature,
    symmetric_part,
    symmetric_part_defect,
)

__version__ = "1.0.0"

__all__ = [
    # errors / config
    "LiestatError", "InputError", "ValidationError", "NumericAmbiguityError",
    "Tolerances", "load_tolerances",
    # algebra
    "LieAlgebra", "MilnorFrameSpec", "NonUnimodularSpec", "PRESETS", "ALIASES",
    "preset", "bracket", "jacobi_defect", "ad_matrix", "unimodular_kernel",
    "is_subalgebra_ideal", "echelon_rows", "change_frame", "milnor_label",
    "class_label", "milnor_invariant", "nonuni_milnor_invariant",
    # geometry
    "InnerProduct", "Connection", "CurvatureTensor", "u_map", "levi_civita",
    "cartan_schouten", "torsion", "metric_defect", "covariant_derivative",
    "curvature", "ricci", "scalar_curvature", "ricci_symmetric", "lower_curvature",
    "sectional_curvature", "coordinate_sectionals",
    # cubic forms
    "CubicForm", "unit_cubics", "skewness_from_cubic", "cubic_from_skewness",
    "skewness_defects", "cubic_from_entries",
    # statistical
    "StatisticalStructure", "SasakianData", "statistical_connection",
    "dual_connection", "is_statistical", "symmetric_part", "symmetric_part_defect",
    "is_bi_invariant", "conjugate_symmetry_defect",
    "curvature_pair", "alpha_curvature_decomposition", "statistical_curvature",
    "statistical_sectional_curvature", "alpha_sectional_curvature",
    "constant_curvature_fit", "apolarity", "equiaffine_check", "identity_tension",
    "is_hessian", "hessian_curvature", "codazzi_defect", "essential_check",
    "sasakian_data_check", "sasaki_eta_cubic", "sasakian_statistical_check",
    "sasaki_family_connection", "ambrose_singer_check", "homogeneous_tensors",
    "homogeneous_structure_check",
    # classify
    "ConstraintSystem", "SolutionSpace", "SweepRow", "build_system", "kernel",
    "classify", "classify_unimodular", "classify_nonunimodular", "classify_product",
    "contains", "parse_grid", "sweep",
    # models
    "NormalModel", "TModel", "normal_structure", "t_structure", "t_frame_skewness",
    "t_curvature_constant", "flat_alpha", "q_to_nu", "coordinate_metric",
    "t_coordinate_skewness",
]
