"""Excitation amplitudes of uniformly accelerated two-level atoms.

Closed-form amplitudes and probabilities (``amplitudes``), the special
functions they need (``specfun``), a damped-quadrature oracle that
recomputes them from their defining integrals (``oracle``), and a CLI.
"""

from ._backend import BACKEND
from .amplitudes import (
    ComplexAmplitude,
    DickeDecomposition,
    DoubleExcitation,
    FirstOrderAmplitudes,
    SecondOrderAmplitudes,
    alpha_pm,
    beta_ll,
    beta_lr,
    beta_rl,
    beta_rr,
    build_symmetric_state_n,
    dicke_decomposition,
    first_order_amplitudes,
    prob_antisymmetric,
    prob_double_excitation,
    prob_double_excitation_recombined,
    prob_one_of_n,
    prob_prefactor,
    prob_single_atom,
    prob_symmetric,
    second_order_amplitudes,
)
from .errors import ConfigError, DomainError, NonConvergence, PoleError, RindlerDickeError, SizeError
from .kinematics import (
    DimensionlessParams,
    PhysicalParams,
    mode_norm_W,
    planck_factor,
    rindler_trajectory,
    theta_phase,
    to_dimensionless,
    unruh_temperature,
)
from .oracle import QuadratureConfig, alpha_numeric, beta_numeric, incomplete_gamma_numeric
from .specfun import (
    gamma,
    gamma_abs_imag_sq,
    hyp1f2,
    hyp2f1_at_minus1,
    kummer_2f1,
    log_gamma,
    lower_incomplete_gamma,
)

__version__ = "0.1.0"
