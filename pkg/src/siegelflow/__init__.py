"""Parallel transport of Gaussian quantum states over the Siegel upper
half-space, its Bogoliubov-transformation form, and the Segal-Bargmann and
Fourier transforms as boundary limits."""

from ._point import SiegelPoint, diagonal_point, standard_point
from .errors import (
    BranchDiscontinuityError,
    GridTooCoarseError,
    NoBoundaryLimitError,
    NonTransverseError,
    NonUnitaryError,
    NotIntegrableError,
    PolarizationMismatchError,
    SiegelFlowError,
    SpRelationViolatedError,
    TruncationOverflowError,
)
from .sections import (
    CorrectedSection,
    GaussianSection,
    HalfFormFrame,
    PolyFockSection,
    bergman_project,
    coherent_state,
    corrected_inner_product,
    difference_norm,
    fock_coefficients,
    fock_state,
    from_fock_coefficients,
    inner_product,
    inner_product_cross_frame,
    norm,
    oracle_inner_product,
    pair_halfforms,
    quadrature_integrate,
    section_from_json,
    section_to_json,
    vacuum,
)
from .siegel import (
    GeodesicSpec,
    LagrangianFrame,
    complex_structure_of,
    geodesic_between,
    geodesic_boundary_limits,
    geodesic_eval,
    lagrangian_pair_map,
    metric_distance,
    takagi,
)
from .sympl import (
    MetaplecticElement,
    SymplecticMap,
    act_on_siegel,
    compose,
    halfform_phase_of_g,
    random_siegel,
    random_symplectic,
    transform_z_coords,
    xi_matrix,
)
from .transforms import (
    BoundaryPolarization,
    BoundaryProfile,
    ConvergenceReport,
    CorrectedBoundarySection,
    boundary_inner_product,
    composition_identities_check,
    fourier,
    fourier_general,
    from_momentum_profile,
    from_position_profile,
    limit_transport_to_bargmann,
    limit_transport_to_fourier,
    segal_bargmann,
    segal_bargmann_inverse,
)
from .transport import (
    ConnectionForm,
    TransportResult,
    bogoliubov_operator_deformation,
    bogoliubov_scale,
    fock_connection_matrix,
    metaplectic_act,
    transport_coherent,
    transport_coherent_standard,
    transport_corrected,
    transport_corrected_coherent,
    transport_equals_scaled_projection_check,
    transport_halfform,
    transport_kernel_apply,
    transport_ode,
    transport_poly_standard,
    transport_uncorrected,
)

__version__ = "0.1.0"
