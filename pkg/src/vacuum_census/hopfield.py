"""Lossless polariton diagonalization used as a cross-check oracle.

The quadratic light-matter Hamiltonian with both resonant and antiresonant
terms plus the diamagnetic self-interaction is diagonalised by a four-component
Bogoliubov transformation. The anomalous photon coefficient y gives the
ground-state virtual-photon population without any bath.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dielectric import LorentzMedium
from .errors import DecoupledInputError, DomainError

_BRANCHES = ("lower", "upper")


@dataclass(frozen=True)
class HopfieldMode:
    """One polariton branch: eigenfrequency and Bogoliubov coefficients.

    The coefficients satisfy |w|^2 + |x|^2 - |y|^2 - |z|^2 = 1.
    """

    branch: str
    omega: float
    w: complex
    x: complex
    y: complex
    z: complex

    def bosonic_norm(self):
        return (abs(self.w) ** 2 + abs(self.x) ** 2
                - abs(self.y) ** 2 - abs(self.z) ** 2)


def eigenfrequencies(medium: LorentzMedium, k_c):
    """Both lossless polariton frequencies (omega_minus, omega_plus).

    The lower branch is computed from the product identity
    omega_minus * omega_plus = c k * omega0, which avoids the catastrophic
    cancellation of the direct closed form at small and large k.
    """
    if not k_c > 0:
        raise DomainError(f"k_c must be positive, got {k_c}")
    w0, wc = medium.omega0, medium.omega_c
    s = w0**2 + wc**2 + k_c**2
    # factored discriminant (ck - w0)^2 + wc^2 avoids the cancellation of
    # s^2 - 4 c^2 k^2 w0^2 near resonance at small coupling
    d = np.sqrt(((k_c - w0) ** 2 + wc**2) * (s + 2 * k_c * w0))
    omega_plus = np.sqrt((s + d) / 2)
    omega_minus = k_c * w0 / omega_plus
    return omega_minus, omega_plus


def branch_derivative(medium: LorentzMedium, k_c, omega):
    """d omega / dk of a branch, by implicit differentiation of the quartic
    omega^4 - omega^2 (omega0^2 + omega_c^2 + c^2 k^2) + c^2 k^2 omega0^2 = 0.

    Stable near resonance where the explicit closed-form derivative loses
    digits in the discriminant.
    """
    w0, wc = medium.omega0, medium.omega_c
    s = w0**2 + wc**2 + k_c**2
    return (2 * k_c * omega**2 - 2 * k_c * w0**2) / (4 * omega**3 - 2 * omega * s)


def coefficients(medium: LorentzMedium, k_c, branch) -> HopfieldMode:
    """Bogoliubov coefficient vector (w, x, y, z) of one branch."""
    if branch not in _BRANCHES:
        raise DomainError(f"branch must be one of {_BRANCHES}, got {branch!r}")
    if medium.omega_c == 0:
        raise DecoupledInputError(
            "omega_c = 0: the matter-branch normalization degenerates; "
            "the photon branch is trivially (1, 0, 0, 0)")
    w0, wc = medium.omega0, medium.omega_c
    wm, wp = eigenfrequencies(medium, k_c)
    omega = wp if branch == "upper" else wm
    sign = 1.0 if branch == "upper" else -1.0
    norm = (omega / w0 * ((1 - omega**2 / w0**2) ** 2 + wc**2 / w0**2)) ** -0.5
    ratio = omega**2 / w0**2 - 1
    root = np.sqrt(w0 / k_c)
    wv = ratio * (omega + k_c) / (2 * w0) * root
    xv = 1j * wc / (2 * w0) * (1 + omega / w0)
    yv = ratio * (omega - k_c) / (2 * w0) * root
    zv = 1j * wc / (2 * w0) * (1 - omega / w0)
    pref = sign * norm
    return HopfieldMode(branch=branch, omega=float(omega),
                        w=complex(pref * wv), x=complex(pref * xv),
                        y=complex(pref * yv), z=complex(pref * zv))


def nk_lossless(medium: LorentzMedium, k_c):
    """Ground-state photon number without dissipation: sum over branches of
    the squared anomalous coefficient |y|^2. Returns 0 for omega_c = 0."""
    if medium.omega_c == 0:
        return 0.0
    total = 0.0
    for branch in _BRANCHES:
        total += abs(coefficients(medium, k_c, branch).y) ** 2
    return total


def nk_lossless_group_velocity(medium: LorentzMedium, k_c):
    """Independent route to the lossless population,
    sum_j (omega_j - ck)^2 (domega_j/dk) / (4 c^3 k^2).

    Used to cross-validate the coefficient route; the two must agree to
    better than 1e-8 relative everywhere.
    """
    if medium.omega_c == 0:
        return 0.0
    total = 0.0
    for omega in eigenfrequencies(medium, k_c):
        total += ((omega - k_c) ** 2 * branch_derivative(medium, k_c, omega)
                  / (4 * k_c**2))
    return total
