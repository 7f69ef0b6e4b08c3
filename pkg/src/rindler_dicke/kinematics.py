"""Uniform-acceleration kinematics and the dimensionless groups of the model.

Two identical atoms ride hyperbolae with the same proper acceleration
``a``, offset along z by ``d1`` and ``d2``.  All normalized results depend
only on

    xi    = omega c / a      (transition frequency in units of a/c)
    kappa = nu c / a         (field-mode frequency in units of a/c)
    kd    = (nu / c)(d2 - d1)

and an effective coupling ``g = chi W c / a`` that sets the absolute
scale of the probabilities.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

# exact SI values
C_LIGHT = 299792458.0
H_PLANCK = 6.62607015e-34
HBAR = H_PLANCK / (2 * math.pi)
K_BOLTZMANN = 1.380649e-23


@dataclass(frozen=True)
class PhysicalParams:
    """SI inputs.  ``omega``, ``nu`` and ``chi`` are angular (rad/s)."""

    a: float
    omega: float
    nu: float
    chi: float = 0.0
    d1: float = 0.0
    d2: float = 0.0
    c: float = C_LIGHT
    hbar: float = HBAR
    kB: float = K_BOLTZMANN

    def __post_init__(self):
        for name in ("a", "omega", "nu", "c", "hbar", "kB"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")
        if not (math.isfinite(self.chi) and self.chi >= 0):
            raise DomainError(f"chi must be >= 0, got {self.chi}")
        if not (math.isfinite(self.d1) and math.isfinite(self.d2)):
            raise DomainError("d1 and d2 must be finite")

    @property
    def d(self):
        return self.d2 - self.d1

    @property
    def k(self):
        return self.nu / self.c

    @property
    def wavelength(self):
        return 2 * math.pi * self.c / self.nu


@dataclass(frozen=True)
class DimensionlessParams:
    """xi, kappa, kd plus the atom count, first-atom phase and coupling g."""

    xi: float
    kappa: float
    kd: float = 0.0
    n_atoms: int = 2
    kd1: float = 0.0
    coupling: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.xi) and self.xi > 0):
            raise DomainError(f"xi must be positive, got {self.xi}")
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        if not (math.isfinite(self.kd) and math.isfinite(self.kd1)):
            raise DomainError("kd and kd1 must be finite")
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise DomainError(f"n_atoms must be a positive integer, got {self.n_atoms}")
        if not (math.isfinite(self.coupling) and self.coupling >= 0):
            raise DomainError(f"coupling must be >= 0, got {self.coupling}")


def rindler_trajectory(tau, p, atom_index):
    """Coordinate time and position (t, z) of atom 1 or 2 at proper time tau."""
    if atom_index not in (1, 2):
        raise DomainError("atom_index must be 1 or 2")
    offset = p.d1 if atom_index == 1 else p.d2
    u = np.asarray(tau) * (p.a / p.c)
    t = (p.c / p.a) * np.sinh(u)
    z = (p.c * p.c / p.a) * np.cosh(u) + offset
    return t, z


def mode_norm_W(p):
    """Field-mode normalization sqrt(hbar / (4 pi c nu))."""
    return math.sqrt(p.hbar / (4 * math.pi * p.c * p.nu))


def to_dimensionless(p, n_atoms=2):
    if not (p.a > 0 and p.omega > 0 and p.nu > 0):
        raise DomainError("a, omega and nu must be positive")
    k = p.nu / p.c
    return DimensionlessParams(
        xi=p.omega * p.c / p.a,
        kappa=p.nu * p.c / p.a,
        kd=k * (p.d2 - p.d1),
        n_atoms=n_atoms,
        kd1=k * p.d1,
        coupling=p.chi * mode_norm_W(p) * p.c / p.a,
    )


def theta_phase(dp):
    return -dp.xi * math.log(dp.kappa)


def unruh_temperature(p):
    return p.hbar * p.a / (2 * math.pi * p.c * p.kB)


def planck_factor(xi):
    """Thermal occupation 1/(exp(2 pi xi) - 1).

    Evaluated as exp(-x)/(1 - exp(-x)) with expm1, which is accurate for
    tiny xi (where it tends to 1/(2 pi xi)) and does not overflow for large xi.
    """
    x = 2 * np.pi * np.asarray(xi, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("planck_factor needs xi > 0")
    out = np.exp(-x) / -np.expm1(-x)
    return float(out) if out.ndim == 0 else out
