"""Numerical toolkit for slice regular functions of a quaternionic variable."""

from ._config import Tolerances, override, set_tolerances, tolerances
from .counterexample import (
    WITNESS_PATH,
    BranchFunction,
    CounterexampleRecord,
    CutJump,
    classical_residual,
    counterexample_report,
    cut_jump,
    omega_phi,
    omega_phi_tilde,
    psi_phi_eval,
    psi_phi_model,
    psi_s_eval,
    branch_closed_forms,
)
from .errors import (
    ConfigParse,
    DegeneratePair,
    InconsistentRealData,
    InvalidPath,
    IoFailure,
    LiftNotContained,
    NonpositiveRadius,
    NotAUnit,
    NotInSet,
    NotOnSlice,
    NotOrthogonal,
    OnCut,
    OutOfDomain,
    OutOfExtension,
    PremiseFailed,
    SliceLabError,
    UnitOutOfBand,
    ZeroQuaternion,
)
from .extension import (
    Disk,
    ExtendedFunction,
    HolomorphicSliceData,
    SeriesResult,
    cr_residual,
    empirical_radius,
    extend_from_disk,
    extend_pair_eval,
    holo_eval,
    sigma_series_eval,
)
from .geometry import (
    Phi,
    PhiConstant,
    PhiDistance,
    PhiTable,
    SliceSet,
    complement,
    dist_to_slice,
    dumbbell,
    ellipse_book,
    euclidean_ball,
    euclidean_inradius,
    half_slice,
    intersection,
    is_real_connected_sampled,
    path_in_set,
    ray_complement,
    ray_complement_tilde,
    same_slice,
    sigma_ball,
    sigma_ball_contains,
    sigma_distance,
    sigma_inradius,
    slice_ball,
    slice_inradius,
    topology_report,
    union,
)
from .paths import ComplexPath, lift_path
from .pathslice import (
    ConsistencyReport,
    SliceRegularModel,
    Witness,
    constant_model,
    continuity_probe,
    extension_model,
    lifting_witness_search,
    path_repformula,
    path_slice_consistency,
    polynomial_model,
)
from .quaternion import (
    I_UNIT,
    J_UNIT,
    K_UNIT,
    ONE,
    ImaginaryUnit,
    InterpMatrix,
    Quaternion,
    SlicePoint,
    check_pair,
    embed,
    interp_matrix_inv,
    qinv,
    qmul,
    random_unit,
    rational_unit,
    slice_point,
    split_basis,
    unit_of,
)
from .slicefun import (
    SliceSampleTriple,
    SlicenessReport,
    StemFunction,
    eval_from_stem,
    repformula_matrix,
    repformula_point,
    repformula_split,
    right_polynomial,
    sliceness_check,
    stem_from_pair,
)

__version__ = "0.1.0"

__all__ = [
    "BranchFunction",
    "ComplexPath",
    "ConfigParse",
    "ConsistencyReport",
    "CounterexampleRecord",
    "CutJump",
    "DegeneratePair",
    "Disk",
    "ExtendedFunction",
    "HolomorphicSliceData",
    "I_UNIT",
    "ImaginaryUnit",
    "InconsistentRealData",
    "InterpMatrix",
    "InvalidPath",
    "IoFailure",
    "J_UNIT",
    "K_UNIT",
    "LiftNotContained",
    "NonpositiveRadius",
    "NotAUnit",
    "NotInSet",
    "NotOnSlice",
    "NotOrthogonal",
    "ONE",
    "OnCut",
    "OutOfDomain",
    "OutOfExtension",
    "Phi",
    "PhiConstant",
    "PhiDistance",
    "PhiTable",
    "PremiseFailed",
    "Quaternion",
    "SeriesResult",
    "SliceLabError",
    "SlicePoint",
    "SliceRegularModel",
    "SliceSampleTriple",
    "SliceSet",
    "SlicenessReport",
    "StemFunction",
    "Tolerances",
    "UnitOutOfBand",
    "WITNESS_PATH",
    "Witness",
    "ZeroQuaternion",
    "check_pair",
    "classical_residual",
    "complement",
    "constant_model",
    "continuity_probe",
    "counterexample_report",
    "cr_residual",
    "cut_jump",
    "dist_to_slice",
    "dumbbell",
    "ellipse_book",
    "embed",
    "empirical_radius",
    "euclidean_ball",
    "euclidean_inradius",
    "eval_from_stem",
    "extend_from_disk",
    "extend_pair_eval",
    "extension_model",
    "half_slice",
    "holo_eval",
    "interp_matrix_inv",
    "intersection",
    "is_real_connected_sampled",
    "lift_path",
    "lifting_witness_search",
    "omega_phi",
    "omega_phi_tilde",
    "override",
    "path_in_set",
    "path_repformula",
    "path_slice_consistency",
    "polynomial_model",
    "psi_phi_eval",
    "psi_phi_model",
    "psi_s_eval",
    "qinv",
    "qmul",
    "random_unit",
    "rational_unit",
    "ray_complement",
    "ray_complement_tilde",
    "branch_closed_forms",
    "repformula_matrix",
    "repformula_point",
    "repformula_split",
    "right_polynomial",
    "same_slice",
    "set_tolerances",
    "sigma_ball",
    "sigma_ball_contains",
    "sigma_distance",
    "sigma_inradius",
    "sigma_series_eval",
    "slice_ball",
    "slice_inradius",
    "slice_point",
    "sliceness_check",
    "split_basis",
    "stem_from_pair",
    "tolerances",
    "topology_report",
    "union",
    "unit_of",
]
