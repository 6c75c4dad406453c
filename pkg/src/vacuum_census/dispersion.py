"""Complex polariton eigenfrequencies of the lossy dispersion relation.

The dispersion condition eps(w) w^2 = c^2 k^2 with a Lorentz dielectric is
exactly a degree-4 complex polynomial. Its four roots lie in the lower half
plane (retarded response) and pair up under reflection about the imaginary
axis; conjugating the two Re >= 0 roots gives the first-quadrant
representatives that the contour form of the population sum runs over.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dielectric import LorentzMedium, eval_eps_z2_derivative
from .errors import (DecoupledInputError, DomainError, ResidualError,
                     RootCountError, SweepPointError)

#: Relative residual bound every polished root must satisfy.
RESIDUAL_BOUND = 1e-10

#: Representatives closer than this (times the frequency scale) are flagged
#: as an exceptional-point degeneracy. A double root is only determined to
#: ~sqrt(eps) in double precision, so the flag cannot meaningfully fire
#: below a few 1e-8.
DEGENERACY_TOL = 5e-8

#: Coupling threshold omega_c / omega0 above which the system counts as
#: ultrastrongly coupled.
ULTRASTRONG_THRESHOLD = 0.2

_NEWTON_STEPS = 2
_MAX_NEWTON_STEPS = 6


class RegimeClassification(NamedTuple):
    regime: str           # "weak" or "strong"
    ultrastrong: bool


@dataclass(frozen=True)
class DispersionRoots:
    """First-quadrant dispersion roots at one wavevector.

    roots : the two representatives, sorted by ascending real part
    derivs : branch derivatives dOmega/dk (units of c); unreliable when
        degenerate is set (the derivative has a branch point there)
    degenerate : True at an exceptional point where the representatives
        coincide within DEGENERACY_TOL
    """

    k_c: float
    roots: tuple
    derivs: tuple
    regime: str
    ultrastrong: bool
    degenerate: bool = False

    def sum_rule_value(self):
        """sum_j Re[(Omega_j / k) dOmega_j/dk]; equals c^2 = 1 off degeneracy."""
        return sum((z * d).real for z, d in zip(self.roots, self.derivs)) / self.k_c


def classify_regime(medium: LorentzMedium) -> RegimeClassification:
    """Weak/strong splitting resolvability plus the ultrastrong flag.

    Strong coupling iff gamma_L < 2 omega_c; the tie gamma_L = 2 omega_c is
    labeled weak by convention. Ultrastrong iff omega_c >= 0.2 omega0.
    """
    strong = medium.gamma_L < 2 * medium.omega_c
    ultra = medium.omega_c >= ULTRASTRONG_THRESHOLD * medium.omega0
    return RegimeClassification("strong" if strong else "weak", ultra)


def _quartic_coeffs(medium, k_c):
    w0, wc, gl = medium.omega0, medium.omega_c, medium.gamma_L
    return np.array([1.0, 1j * gl, -(w0**2 + k_c**2 + wc**2),
                     -1j * gl * k_c**2, w0**2 * k_c**2], dtype=complex)


def _quartic_roots(medium, k_c):
    """All four roots of the cleared-denominator dispersion polynomial."""
    return np.roots(_quartic_coeffs(medium, k_c))


def _horner(coeffs, z):
    """Polynomial value and the roundoff magnitude sum_i |c_i| |z|^i."""
    val = coeffs[0]
    mag = abs(coeffs[0])
    az = abs(z)
    for c in coeffs[1:]:
        val = val * z + c
        mag = mag * az + abs(c)
    return val, mag


def residual_with_floor(medium: LorentzMedium, k_c, z):
    """Dispersion residual |eps(Omega) Omega^2 - c^2 k^2| at a root, plus the
    noise floor of its double-precision evaluation.

    The residual is computed on the lower-half-plane side (the conjugate of a
    first-quadrant representative), where the retarded dielectric function
    vanishes on the dispersion roots. When a root sits close to a matter pole
    the rational form loses |den|^-1 digits; no double-precision solver can
    certify the residual below that floor, so honest checks compare against
    max(bound, floor).
    """
    raw = np.conj(z) if z.imag > 0 else complex(z)
    den = medium.omega0**2 - raw * raw - 1j * medium.gamma_L * raw
    resid = abs((1.0 + medium.omega_c**2 / den) * raw * raw - k_c**2)
    _, qmag = _horner(_quartic_coeffs(medium, k_c), raw)
    floor = float(np.finfo(float).eps * qmag / max(abs(den), 1e-300))
    return float(resid), floor


def find_roots(medium: LorentzMedium, k_c) -> DispersionRoots:
    """Solve the dispersion relation at one wavevector.

    Companion-matrix roots of the quartic, two Newton polishing steps on
    eps(w) w^2 - c^2 k^2 (more only if the residual bound is still violated),
    then conjugation of any Re >= 0 root with negative imaginary part into
    the first quadrant. Derivatives follow from the implicit-function rule
    dOmega/dk = 2 c^2 k / (d/dOmega [eps(Omega) Omega^2]), evaluated on the
    pre-conjugation root and conjugated along with it.
    """
    if not k_c > 0:
        raise DomainError(f"k_c must be positive, got {k_c}")
    if medium.omega_c == 0:
        raise DecoupledInputError(
            "omega_c = 0: dispersion degenerates to the bare photon root "
            "Omega = c k; use that analytically")
    coeffs = _quartic_coeffs(medium, k_c)
    raw = sorted(np.roots(coeffs), key=lambda z: z.real)
    # reflection symmetry pairs the roots as {z, -conj(z)}; the two largest
    # real parts pick one representative per pair even when a pair sits on
    # the imaginary axis
    keep, drop = list(raw[2:]), raw[:2]
    scale2 = max(abs(z) for z in raw) ** 2 + medium.omega0**2
    for z in keep:
        if min(abs(d + np.conj(z)) for d in drop) > 1e-6 * np.sqrt(scale2):
            raise RootCountError(
                f"discarded roots are not the reflections of the kept ones; "
                f"raw roots {raw}")

    bound = RESIDUAL_BOUND * medium.omega0**2
    deriv_coeffs = np.polyder(coeffs)
    eps = np.finfo(float).eps
    polished = []
    for z in keep:
        for step in range(_MAX_NEWTON_STEPS):
            qv, qmag = _horner(coeffs, z)
            # at the evaluation floor further steps only wander (and would
            # bias the midpoint of a near-double pair)
            if abs(qv) <= 4 * eps * qmag:
                break
            qd, _ = _horner(deriv_coeffs, z)
            if step >= _NEWTON_STEPS and abs(qv) <= 1e-15 * abs(qd) * abs(z):
                break
            if qd == 0:
                break
            z = z - qv / qd
        resid, floor = residual_with_floor(medium, k_c, z)
        if resid > max(bound, 8 * floor):
            raise ResidualError(
                f"root {z} residual {resid:.3e} exceeds "
                f"{max(bound, 8 * floor):.3e}")
        if medium.gamma_L == 0 and abs(z.imag) < 1e-12 * medium.omega0:
            z = complex(z.real, 0.0)
        polished.append(complex(z))

    reps = []
    derivs = []
    for z in polished:
        d = 2 * k_c / eval_eps_z2_derivative(medium, z)
        if z.imag < 0:
            z, d = np.conj(z), np.conj(d)
        reps.append(complex(z))
        derivs.append(complex(d))

    order = np.argsort([z.real for z in reps], kind="stable")
    reps = tuple(reps[i] for i in order)
    derivs = tuple(derivs[i] for i in order)
    freq_scale = max(abs(reps[0]), abs(reps[1]), medium.omega0)
    degenerate = abs(reps[0] - reps[1]) < DEGENERACY_TOL * freq_scale
    regime = classify_regime(medium)
    return DispersionRoots(k_c=float(k_c), roots=reps, derivs=derivs,
                           regime=regime.regime, ultrastrong=regime.ultrastrong,
                           degenerate=degenerate)


def _match_branches(prev: DispersionRoots, cur: DispersionRoots):
    """Reorder cur's roots for continuity against prev (nearest neighbor;
    derivative-direction prediction breaks exact ties)."""
    a, b = cur.roots
    pa, pb = prev.roots
    straight = abs(a - pa) + abs(b - pb)
    swapped = abs(b - pa) + abs(a - pb)
    if abs(straight - swapped) < 1e-12 * max(straight, swapped, 1e-300):
        dk = cur.k_c - prev.k_c
        guess_a = pa + prev.derivs[0] * dk
        guess_b = pb + prev.derivs[1] * dk
        straight = abs(a - guess_a) + abs(b - guess_b)
        swapped = abs(b - guess_a) + abs(a - guess_b)
    if swapped < straight:
        return DispersionRoots(
            k_c=cur.k_c, roots=(b, a), derivs=(cur.derivs[1], cur.derivs[0]),
            regime=cur.regime, ultrastrong=cur.ultrastrong,
            degenerate=cur.degenerate)
    return cur


def trajectory_sweep(medium: LorentzMedium, k_c, vary, grid):
    """Roots along a one-parameter family, with branch continuity.

    vary : one of "gamma_l", "omega_c", "k_c"; grid supplies that parameter.
    medium provides every fixed parameter (its own value of the swept field
    is ignored); k_c is the fixed wavevector for the non-k sweeps.

    Consecutive grid points are matched by nearest-neighbor assignment in the
    complex plane, so the branch order follows the trajectory rather than
    the ascending-Re convention of find_roots.
    """
    if vary not in ("gamma_l", "omega_c", "k_c"):
        raise DomainError(f"unknown sweep variable {vary!r}")
    out = []
    for idx, g in enumerate(grid):
        try:
            if vary == "gamma_l":
                m = LorentzMedium(medium.omega0, medium.omega_c, float(g))
                point = find_roots(m, k_c)
            elif vary == "omega_c":
                m = LorentzMedium(medium.omega0, float(g), medium.gamma_L)
                point = find_roots(m, k_c)
            else:
                point = find_roots(medium, float(g))
        except Exception as exc:
            raise SweepPointError(
                f"sweep point {idx} ({vary} = {g}) failed: {exc}", idx) from exc
        if out:
            point = _match_branches(out[-1], point)
        out.append(point)
    return out
