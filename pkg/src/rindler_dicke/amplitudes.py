"""Closed-form amplitudes and probabilities for accelerated atoms.

Conventions:

* Amplitudes are dimensionless.  First-order values carry an implicit c/a
  and second-order values an implicit (c/a)^2; the coupling enters via
  ``g = chi W c / a`` (``DimensionlessParams.coupling``).
* "L" photons go with alpha_plus and a phase e^{+i k d_j} on atom j, "R"
  photons with alpha_minus and e^{-i k d_j}.
* Probability functions take either ``PhysicalParams`` or
  ``DimensionlessParams``.
"""

import cmath
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, SizeError
from .kinematics import PhysicalParams, planck_factor, theta_phase, to_dimensionless
from .specfun import hyp1f2, log_gamma

MAX_ENUMERATED_ATOMS = 20


class ComplexAmplitude(complex):
    """A complex number with modulus and phase accessors."""

    @property
    def modulus(self):
        return abs(self)

    @property
    def phase(self):
        return cmath.phase(self)

    def as_dict(self):
        return {"re": self.real, "im": self.imag, "modulus": self.modulus, "phase": self.phase}


@dataclass(frozen=True)
class FirstOrderAmplitudes:
    alpha_plus: ComplexAmplitude
    alpha_minus: ComplexAmplitude
    A_s_left: ComplexAmplitude
    A_s_right: ComplexAmplitude
    A_a_left: ComplexAmplitude
    A_a_right: ComplexAmplitude


@dataclass(frozen=True)
class SecondOrderAmplitudes:
    beta_LL: ComplexAmplitude
    beta_RR: ComplexAmplitude
    beta_RL: ComplexAmplitude
    beta_LR: ComplexAmplitude
    H: ComplexAmplitude
    phi_RL: float


@dataclass(frozen=True)
class DickeDecomposition:
    """Final two-atom state over {|g>, |s>, |a>, |e>} with photon labels."""

    amp_ground: ComplexAmplitude
    amp_symmetric_left: ComplexAmplitude
    amp_symmetric_right: ComplexAmplitude
    amp_antisymmetric_left: ComplexAmplitude
    amp_antisymmetric_right: ComplexAmplitude
    amp_doubly_excited_2L: ComplexAmplitude
    amp_doubly_excited_2R: ComplexAmplitude
    amp_doubly_excited_RL: ComplexAmplitude

    photon_content = {
        "amp_ground": "vacuum",
        "amp_symmetric_left": "1 L photon",
        "amp_symmetric_right": "1 R photon",
        "amp_antisymmetric_left": "1 L photon",
        "amp_antisymmetric_right": "1 R photon",
        "amp_doubly_excited_2L": "2 L photons",
        "amp_doubly_excited_2R": "2 R photons",
        "amp_doubly_excited_RL": "1 R + 1 L photon",
    }

    def items(self):
        return [(name, getattr(self, name)) for name in self.photon_content]


@dataclass(frozen=True)
class DoubleExcitation:
    """Joint-excitation probability with its bracket and sign flag."""

    value: float
    valid: bool
    bracket: float


def dimensionless(params):
    if isinstance(params, PhysicalParams):
        return to_dimensionless(params)
    return params


def _sign(sign):
    if sign in ("+", 1, "plus", "L"):
        return 1
    if sign in ("-", -1, "minus", "R"):
        return -1
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def gamma_phase(xi):
    """phi = arg Gamma(i xi), taken from the imaginary part of log Gamma."""
    return log_gamma(1j * xi).imag


def alpha_pm(sign, dp):
    """e^{+-i theta} e^{-pi xi / 2} Gamma(+-i xi), in units of c/a."""
    dp = dimensionless(dp)
    th = theta_phase(dp)
    v = cmath.exp(1j * th - math.pi * dp.xi / 2 + log_gamma(1j * dp.xi))
    return ComplexAmplitude(v if _sign(sign) > 0 else v.conjugate())


def first_order_amplitudes(dp):
    """Coupling-stripped single-excitation amplitudes for |s> and |a>."""
    dp = dimensionless(dp)
    ap = alpha_pm("+", dp)
    am = alpha_pm("-", dp)
    half = dp.kd / 2
    # 1 +- e^{i kd} written as 2cos(kd/2)e^{i kd/2} and -2i sin(kd/2)e^{i kd/2}
    plus = 2 * math.cos(half)
    minus = 2 * math.sin(half)
    left = -1j * cmath.exp(1j * (dp.kd1 + half)) * ap / math.sqrt(2)
    right = -1j * cmath.exp(-1j * (dp.kd1 + half)) * am / math.sqrt(2)
    return FirstOrderAmplitudes(
        alpha_plus=ap,
        alpha_minus=am,
        A_s_left=ComplexAmplitude(left * plus),
        A_s_right=ComplexAmplitude(right * plus),
        A_a_left=ComplexAmplitude(left * -1j * minus),
        A_a_right=ComplexAmplitude(right * 1j * minus),
    )


def prob_prefactor(p):
    """8 pi g^2 / xi, which is 2 hbar chi^2 / (nu omega a) in SI inputs."""
    if isinstance(p, PhysicalParams):
        return 2 * p.hbar * p.chi**2 / (p.nu * p.omega * p.a)
    return 8 * math.pi * p.coupling**2 / p.xi


def _kd(p):
    return p.k * p.d if isinstance(p, PhysicalParams) else p.kd


def _xi(p):
    return p.omega * p.c / p.a if isinstance(p, PhysicalParams) else p.xi


def prob_symmetric(p):
    return prob_prefactor(p) * math.cos(_kd(p) / 2) ** 2 * planck_factor(_xi(p))


def prob_antisymmetric(p):
    return prob_prefactor(p) * math.sin(_kd(p) / 2) ** 2 * planck_factor(_xi(p))


def prob_single_atom(p):
    """Excitation probability of a lone atom: half of P_s + P_a."""
    return (prob_symmetric(p) + prob_antisymmetric(p)) / 2


def prob_one_of_n(n, p):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    return n * prob_single_atom(p)


def build_symmetric_state_n(n, kd_offsets, direction):
    """Coefficients e^{+-i kd_j}/sqrt(n) of the symmetric single-excitation state."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if n > MAX_ENUMERATED_ATOMS:
        raise SizeError(f"n = {n} exceeds the enumeration bound {MAX_ENUMERATED_ATOMS}")
    if len(kd_offsets) != n:
        raise DomainError("need one kd offset per atom")
    s = _sign(direction)
    norm = 1 / math.sqrt(n)
    return [ComplexAmplitude(cmath.exp(1j * s * kd) * norm) for kd in kd_offsets]


def single_excitation_channels(n, kd_offsets, p):
    """Probabilities of the single-excitation channels of n atoms.

    Each photon sector's state vector (amplitude -i g alpha e^{+-ikd_j} on
    atom j) is projected onto an orthonormal basis whose first vector is
    the symmetric state of ``build_symmetric_state_n``.  Returns a dict of
    per-sector arrays; their grand total is the probability that exactly
    one atom is excited.
    """
    dp = dimensionless(p)
    out = {}
    for direction, alpha in (("L", alpha_pm("+", dp)), ("R", alpha_pm("-", dp))):
        sym = np.array(build_symmetric_state_n(n, kd_offsets, direction), dtype=complex)
        s = 1 if direction == "L" else -1
        psi = -1j * dp.coupling * alpha * np.exp(1j * s * np.asarray(kd_offsets, dtype=float))
        # complete the symmetric vector to an orthonormal basis
        q, _ = np.linalg.qr(np.column_stack([sym, np.eye(n, dtype=complex)]))
        q = q[:, :n]
        q[:, 0] = sym
        out[direction] = np.abs(q.conj().T @ psi) ** 2
    return out


def beta_ll(dp):
    """(pi/xi) e^{2i(theta + phi)} / (e^{2 pi xi} - 1), phi = arg Gamma(i xi).

    This equals alpha_plus^2 / 2, as the ordered double integral of a
    product of identical factors must.
    """
    dp = dimensionless(dp)
    ph = 2 * (theta_phase(dp) + gamma_phase(dp.xi))
    return ComplexAmplitude(math.pi / dp.xi * planck_factor(dp.xi) * cmath.exp(1j * ph))


def beta_rr(dp):
    return ComplexAmplitude(beta_ll(dp).conjugate())


def _rl_half(dp):
    # e^{-pi xi}/(i xi) Gamma(-2i xi) e^{-2i theta} 1F2(i xi; 1+i xi, 1+2i xi; kappa^2)
    xi = dp.xi
    pre = cmath.exp(-math.pi * xi + log_gamma(-2j * xi) - 2j * theta_phase(dp)) / (1j * xi)
    return pre * hyp1f2(1j * xi, 1 + 1j * xi, 1 + 2j * xi, dp.kappa**2)


def beta_rl(dp):
    """Mixed-channel amplitude: R photon emitted first, then L.

    Real-valued: it is T + conj(T) with T the single 1F2 term of
    ``_rl_half``.  Its kappa derivative is (4/kappa) e^{-pi xi} K_{2i xi}(2 kappa).
    """
    dp = dimensionless(dp)
    return ComplexAmplitude(2 * _rl_half(dp).real)


def beta_lr(dp):
    return ComplexAmplitude(beta_rl(dp).conjugate())


def h_factor(dp):
    """1F2(-i xi; 1 - i xi, -2i xi; -kappa^2), the factor used by the joint-probability formula."""
    dp = dimensionless(dp)
    xi = dp.xi
    return ComplexAmplitude(hyp1f2(-1j * xi, 1 - 1j * xi, -2j * xi, -(dp.kappa**2)))


def beta_rl_single_series(dp):
    """(1/(i xi)) e^{-2i theta} e^{-pi xi} Gamma(-2i xi) H with H from ``h_factor``.

    Kept for comparison only: it does not reproduce the quadrature of the
    mixed-channel integral (``beta_rl`` does).
    """
    dp = dimensionless(dp)
    xi = dp.xi
    pre = cmath.exp(-math.pi * xi + log_gamma(-2j * xi) - 2j * theta_phase(dp)) / (1j * xi)
    return ComplexAmplitude(pre * h_factor(dp))


def second_order_amplitudes(dp):
    dp = dimensionless(dp)
    rl = beta_rl(dp)
    return SecondOrderAmplitudes(
        beta_LL=beta_ll(dp),
        beta_RR=beta_rr(dp),
        beta_RL=rl,
        beta_LR=beta_lr(dp),
        H=h_factor(dp),
        phi_RL=rl.phase,
    )


def prob_double_excitation(p):
    """Joint excitation probability from the closed-form bracket.

    16 pi g^4 / xi^3 * [pi xi n(xi)^2 - cos^2(kd) cos^2(phi_RL) n(2 xi) |H|^2]
    with n the Planck factor.  A negative bracket is reported through
    ``valid`` rather than clamped.
    """
    dp = dimensionless(p)
    xi = dp.xi
    pref = 16 * math.pi * dp.coupling**4 / xi**3
    bracket = math.pi * xi * planck_factor(xi) ** 2
    n2 = planck_factor(2 * xi)
    # skip the interference term once its Planck weight underflows; H
    # itself overflows at such large xi
    if n2 > 0:
        phi = beta_rl(dp).phase
        bracket -= math.cos(dp.kd) ** 2 * math.cos(phi) ** 2 * n2 * abs(h_factor(dp)) ** 2
    return DoubleExcitation(value=pref * bracket, valid=bracket >= 0, bracket=bracket)


def prob_double_excitation_recombined(p):
    """Joint excitation probability as the squared norm of the |e> sector.

    g^4 [8|beta_LL|^2 + 8|beta_RR|^2 + |beta_RL + beta_LR|^2 cos^2(kd)].
    """
    dp = dimensionless(p)
    g4 = dp.coupling**4
    mixed = abs(beta_rl(dp) + beta_lr(dp)) ** 2 * math.cos(dp.kd) ** 2
    return g4 * (8 * abs(beta_ll(dp)) ** 2 + 8 * abs(beta_rr(dp)) ** 2 + mixed)


def dicke_decomposition(p):
    """Amplitudes of the final state through second order."""
    dp = dimensionless(p)
    g = dp.coupling
    first = first_order_amplitudes(dp)
    ll = beta_ll(dp)
    rl = beta_rl(dp)
    phase2 = cmath.exp(1j * (2 * dp.kd1 + dp.kd))  # e^{ik(d1 + d2)}
    return DickeDecomposition(
        amp_ground=ComplexAmplitude(1),
        amp_symmetric_left=ComplexAmplitude(g * first.A_s_left),
        amp_symmetric_right=ComplexAmplitude(g * first.A_s_right),
        amp_antisymmetric_left=ComplexAmplitude(g * first.A_a_left),
        amp_antisymmetric_right=ComplexAmplitude(g * first.A_a_right),
        amp_doubly_excited_2L=ComplexAmplitude(g * g * 2 * math.sqrt(2) * phase2 * ll),
        amp_doubly_excited_2R=ComplexAmplitude(g * g * 2 * math.sqrt(2) * (phase2 * ll).conjugate()),
        amp_doubly_excited_RL=ComplexAmplitude(g * g * (rl + rl.conjugate()) * math.cos(dp.kd)),
    )
