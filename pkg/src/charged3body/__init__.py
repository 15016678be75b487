"""Central configurations and integral-map critical points of the charged
three-body problem: reduced quintic with certified root isolation, the
parameter-plane atlas of root-count regions, permutation covariance, and
relative-equilibrium phase points with Jacobian rank tests."""

from .quintic import (
    CouplingTriple,
    IntervalId,
    MassTriple,
    ReducedQuintic,
    RootList,
    basis_polynomials,
    build_quintic,
    count_roots_by_interval,
    isolate_real_roots,
)
from .atlas import (
    BetaPoint,
    GridSpec,
    RegionReport,
    SpecialPoints,
    classify,
    cusp_local_form,
    gamma_point,
    raster_sweep,
    reduced_potential,
    region_samples,
    special_points,
    trace_gamma,
    zero_potential_parabola,
)
from .symmetry import (
    PermutationElement,
    act_alpha,
    act_beta,
    act_mass,
    act_u,
    check_f_covariance,
    check_gamma_covariance,
)
from .phase import (
    Configuration,
    CriticalPointClass,
    PhasePoint,
    build_relative_equilibrium,
    effective_couplings,
    gradient_and_alpha_matrix,
    integral_map,
    jacobian_rank,
    make_configuration,
    make_phase_point,
    moment_of_inertia,
    multiplier_of,
    noncollinear_cc,
    reconstruct_collinear,
)
from .verify import run_all as run_verification

__version__ = "0.1.0"
