"""Independent closed-form oracles used only by the tests.

The principal-value transforms of the Lorentzian densities have residue
closed forms (derived by contour integration over the upper half plane; the
two real simple poles at +/-omega contribute cancelling half-residues).
These never run in the package itself: they exist to check the numerical
principal-value path against an algebraically independent route.
"""
import numpy as np


def j_residue(w, center, width):
    """P int_0^inf x^2 / (((center^2-x^2)^2 + width^2 x^2)(w^2 - x^2)) dx.

    Contour result: pi * i * sum of residues of
    -x^2 / (L(x) (x - w)(x + w)) over the upper-half-plane zeros of
    L(x) = (center^2 - x^2)^2 + width^2 x^2. Covers the critically damped
    case width = 2*center through the double-pole residue.
    """
    disc = 4 * center**2 - width**2
    if abs(disc) > 1e-9 * center**2:
        root = np.sqrt(complex(disc))
        poles = ((1j * width + root) / 2, (1j * width - root) / 2)

        def l_prime(z):
            return -4 * z * (center**2 - z * z) + 2 * width**2 * z

        total = sum(-p * p / (l_prime(p) * (p * p - w * w)) for p in poles)
    else:
        # width = 2*center: L = (x^2 + center^2)^2, double pole at i*center
        p = 1j * center

        def h_prime(x):
            num = -x * x
            den = (x + 1j * center) ** 2 * (x * x - w * w)
            dnum = -2 * x
            dden = (2 * (x + 1j * center) * (x * x - w * w)
                    + (x + 1j * center) ** 2 * 2 * x)
            return (dnum * den - num * dden) / (den * den)

        total = h_prime(p)
    return float((np.pi * 1j * total).real)


def w_residue(w, k_c, gamma_P):
    """Closed form of the photon-density transform W."""
    return (2 * gamma_P / np.pi) * j_residue(w, k_c, gamma_P)


def z_residue(w, omega0, gamma_L):
    """Closed form of the matter-density transform Z."""
    return w * w * (2 * gamma_L / np.pi) * j_residue(w, omega0, gamma_L)


def j_scale(w, center, width):
    """Magnitude proxy for J used to scale near-zero comparisons."""
    return (np.pi / (2 * width)) / (center**2 + w**2)
