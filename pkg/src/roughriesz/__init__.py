"""Numerical checks for pointwise and Sobolev bounds relating rough singular
integrals, weighted Riesz-type potentials, and weighted maximal functions."""

from .corpus import (
    CORPUS_CATALOG,
    SmoothField,
    anisotropic_bump_field,
    bump_field,
    check_gradient_fd,
    dipole_field,
    field_from_spec,
    gradient_magnitude_field,
    indicator_field,
    make_corpus,
    poincare_sobolev_check,
    scaled_field,
    translated_field,
)
from .geometry import (
    Ball,
    DyadicTruncationGrid,
    QuadratureBudget,
    SphereQuadratureRule,
    ceil_pow2,
    sphere_area,
    sphere_rule,
    unit_ball_volume,
)
from .harness import (
    ExperimentBudget,
    GridSpec,
    HypothesisValidationError,
    PointRecord,
    RatioReport,
    build_grid,
    default_experiment_budget,
    dilation_check,
    ladder_is_stable,
    refinement_study,
    run_pointwise_experiment,
    run_sobolev_experiment,
)
from .hypotheses import (
    EXPERIMENT_IDS,
    POINTWISE_IDS,
    SOBOLEV_IDS,
    ConstraintCheck,
    DerivedExponents,
    HypothesisSet,
    ValidationReport,
    ahlfors_exponent,
    derive_exponents,
    interpolation_index,
    sobolev_exponent,
    validate_hypotheses,
)
from .kernels import (
    KERNEL_CATALOG,
    KernelOnSphere,
    cosine_kernel,
    harmonic_kernel,
    kernel_from_spec,
    lorentz_control_constant,
    lorentz_weak_norm,
    lrho_norm,
    project_mean_zero,
    require_mean_zero,
    sign_kernel,
)
from .norms import weighted_field_integral, weighted_lp_norm, weighted_morrey_norm
from .operators import (
    BallAverages,
    OperatorEvaluation,
    identity_check_riesz,
    maximal_truncated,
    maximal_truncated_batch,
    precompute_ball_averages,
    principal_value_singular,
    riesz_constant,
    riesz_potential,
    riesz_potential_batch,
    truncated_singular,
    weighted_maximal,
    weighted_maximal_batch,
    weighted_riesz,
    weighted_riesz_batch,
)
from .weights import (
    BallFamily,
    BallMassTable,
    MuckenhouptEstimate,
    Weight,
    ball_mass,
    ball_muckenhoupt_product,
    ball_quadrature,
    build_mass_table,
    check_doubling,
    check_holder_average,
    const_weight,
    estimate_lower_ahlfors,
    estimate_muckenhoupt_constant,
    export_mass_table_csv,
    mass_table_for_family,
    power_weight,
    smooth_power_weight,
    standard_ball_family,
    weight_from_spec,
)

__version__ = "0.1.0"
