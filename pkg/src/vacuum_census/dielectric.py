"""Complex Lorentz dielectric model and the spectral densities derived from it.

Everything is expressed in natural units: c = hbar = 1, all inputs are angular
frequencies in one common arbitrary unit, and wavevectors always enter as the
product c*k. Operations accept scalars or numpy arrays (broadcast) unless
stated otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDensityError, DomainError, PoleProximityError

#: Largest matter linewidth for which the resonance keeps a real part:
#: beyond gamma_L = 2*omega0 the oscillator is overdamped and the model
#: stops being physically meaningful.
GAMMA_MAX_FACTOR = 2.0

#: |den(z)| below this multiple of omega0^2 counts as a pole hit
#: (near the double-precision floor, so genuine hits are separated
#: from roundoff).
POLE_PROXIMITY_FACTOR = 1e-14


@dataclass(frozen=True)
class LorentzMedium:
    """Single dispersionless optically active resonance.

    Parameters
    ----------
    omega0 : bare resonance frequency (> 0, the unit of the problem)
    omega_c : light-matter coupling strength (>= 0)
    gamma_L : matter linewidth, 0 <= gamma_L <= 2*omega0
    """

    omega0: float
    omega_c: float
    gamma_L: float = 0.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if self.omega_c < 0:
            raise DomainError(f"omega_c must be >= 0, got {self.omega_c}")
        if self.gamma_L < 0:
            raise DomainError(f"gamma_L must be >= 0, got {self.gamma_L}")
        if self.gamma_L > GAMMA_MAX_FACTOR * self.omega0:
            raise DomainError(
                f"gamma_L = {self.gamma_L} exceeds the overdamped bound "
                f"2*omega0 = {GAMMA_MAX_FACTOR * self.omega0}")

    def matter_poles(self):
        """Complex frequencies of the bare lossy resonance (lower half plane)."""
        root = np.sqrt(complex(4 * self.omega0**2 - self.gamma_L**2))
        return ((-1j * self.gamma_L + root) / 2, (-1j * self.gamma_L - root) / 2)


@dataclass(frozen=True)
class MicroscopicCoupling:
    """Bath-coupling parameters behind a Lorentz linewidth.

    The flat microscopic coupling |V(w)|^2 = w * tilde_omega0 / (q + omega_M)
    renormalises the bare resonance to tilde_omega0 and, for omega_M -> inf,
    produces a Lorentz lineshape of width pi*omega0^2/(2 q).
    """

    omega0: float
    q: float
    omega_M: float
    tilde_omega0: float

    def __post_init__(self):
        if not self.q > 0:
            raise DomainError(f"q must be positive, got {self.q}")
        expected = self.omega0**2 * (self.q + self.omega_M) / self.q
        if abs(self.tilde_omega0**2 - expected) > 1e-12 * expected:
            raise DomainError(
                "tilde_omega0^2 != omega0^2 (q + omega_M)/q within 1e-12")

    @classmethod
    def from_bare(cls, omega0, q, omega_M):
        if not q > 0:
            raise DomainError(f"q must be positive, got {q}")
        tilde = omega0 * np.sqrt((q + omega_M) / q)
        return cls(omega0=omega0, q=q, omega_M=omega_M, tilde_omega0=tilde)


def eval_eps(medium: LorentzMedium, z):
    """Dielectric function 1 + omega_c^2 / (omega0^2 - z^2 - i*gamma_L*z).

    The same rational expression is used verbatim for complex z (analytic
    continuation off the real axis). Raises PoleProximityError when z falls
    on a matter pole.
    """
    z = np.asarray(z, dtype=complex)
    den = medium.omega0**2 - z * z - 1j * medium.gamma_L * z
    if np.any(np.abs(den) < POLE_PROXIMITY_FACTOR * medium.omega0**2):
        raise PoleProximityError(
            f"eval_eps at z={z}: |denominator| below "
            f"{POLE_PROXIMITY_FACTOR} * omega0^2")
    out = 1.0 + medium.omega_c**2 / den
    return out if out.ndim else complex(out)


def eval_eps_z2_derivative(medium: LorentzMedium, z):
    """Closed-form d/dz [eps(z) * z^2], the quantity whose zeros' implicit
    derivatives give the branch group velocities."""
    z = np.asarray(z, dtype=complex)
    den = medium.omega0**2 - z * z - 1j * medium.gamma_L * z
    if np.any(np.abs(den) < POLE_PROXIMITY_FACTOR * medium.omega0**2):
        raise PoleProximityError(
            f"eval_eps_z2_derivative at z={z}: denominator too small")
    out = 2 * z + medium.omega_c**2 * z * (
        2 * medium.omega0**2 - 1j * medium.gamma_L * z) / (den * den)
    return out if out.ndim else complex(out)


def lorentz_line(omega, center, width):
    """(2*width/pi) * omega^2 / ((center^2 - omega^2)^2 + width^2 omega^2).

    Shared Lorentzian building block: equals |zeta|^2 / omega for the matter
    continuum and omega * |chi_k|^2 for the photon continuum. Normalised to
    unit integral over (0, inf).
    """
    omega = np.asarray(omega, dtype=float)
    return (2 * width / np.pi) * omega**2 / (
        (center**2 - omega**2) ** 2 + width**2 * omega**2)


def zeta_density(medium: LorentzMedium, omega):
    """|zeta(omega)|^2, the matter continuum weight behind Im eps.

    Satisfies integral_0^inf |zeta|^2 / omega domega = 1 and
    Im eps(omega) = omega_c^2 pi |zeta|^2 / (2 omega^2) on the real axis.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError("zeta_density requires omega > 0")
    if medium.gamma_L == 0:
        raise DegenerateDensityError(
            "gamma_L = 0: the matter density degenerates to a delta "
            "distribution; use the lossless diagonalization instead")
    out = omega * lorentz_line(omega, medium.omega0, medium.gamma_L)
    return out if out.ndim else float(out)


def chi_density(k_c, gamma_P, omega):
    """|chi_k(omega)|^2, the leaky-photon continuum weight.

    Satisfies integral_0^inf omega |chi_k|^2 domega = 1.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError("chi_density requires omega > 0")
    if gamma_P <= 0:
        raise DegenerateDensityError(
            "gamma_P = 0: the photon density degenerates to a delta "
            "distribution")
    out = lorentz_line(omega, k_c, gamma_P) / omega
    return out if out.ndim else float(out)


def gamma_from_microscopic(omega0, q):
    """Lorentz linewidth produced by the flat bath coupling constant q."""
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    return np.pi * omega0**2 / (2 * q)


def q_from_gamma(omega0, gamma_L):
    """Inverse of gamma_from_microscopic."""
    if not gamma_L > 0:
        raise DomainError(f"gamma_L must be positive, got {gamma_L}")
    return np.pi * omega0**2 / (2 * gamma_L)
