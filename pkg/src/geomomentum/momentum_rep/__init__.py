"""The (p_z, L_z) representation on the sphere and the amplitudes Q_lm(p_z)."""

from geomomentum.momentum_rep.closed_form import (
    closed_form_available,
    difference_residual,
    phase_alignment,
    q_lm_closed,
)
from geomomentum.momentum_rep.oscillator import (
    compare_ho,
    ho_momentum_density,
    variance_matched_beta,
)
from geomomentum.momentum_rep.properties import (
    AmplitudeTable,
    MomentumGrid,
    amplitude_table,
    distribution,
    node_count,
    normalization_integral,
    orthogonality_matrix,
    polynomial_structure_check,
    second_moment,
    symmetry_residuals,
)
from geomomentum.momentum_rep.quadrature import q_lm_fft, q_lm_numeric, q_lm_numeric_table
from geomomentum.momentum_rep.stripe import (
    StripeHarmonic,
    l2u_residual,
    theta_to_u,
    u_to_theta,
)
from geomomentum.momentum_rep.uncertainty import (
    analytic_second_moment,
    momentum_uncertainty_au,
    position_variance,
    uncertainty_product,
)

__all__ = [
    "AmplitudeTable",
    "MomentumGrid",
    "StripeHarmonic",
    "amplitude_table",
    "analytic_second_moment",
    "closed_form_available",
    "compare_ho",
    "difference_residual",
    "distribution",
    "ho_momentum_density",
    "l2u_residual",
    "momentum_uncertainty_au",
    "node_count",
    "normalization_integral",
    "orthogonality_matrix",
    "phase_alignment",
    "polynomial_structure_check",
    "position_variance",
    "q_lm_closed",
    "q_lm_fft",
    "q_lm_numeric",
    "q_lm_numeric_table",
    "second_moment",
    "symmetry_residuals",
    "theta_to_u",
    "u_to_theta",
    "uncertainty_product",
    "variance_matched_beta",
]
