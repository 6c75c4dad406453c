"""Virtual photons with simultaneous matter and photon losses.

Both the optically active transition (linewidth gamma_L) and the photon mode
(linewidth gamma_P) are continua here, so the diagonalization couples two
continua instead of a discrete mode and one continuum. The gauge-fixed
algebraic solution for the mode functions reduces the population to a double
integral over the two continuum frequencies, evaluated by nested adaptive
quadrature.

The hot path runs through the compiled kernels in _kernels; set
VACUUM_CENSUS_BACKEND=numpy (or run without numba installed) to use the
pure-numpy fallback built on the generic quadrature engine instead.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .dielectric import (GAMMA_MAX_FACTOR, LorentzMedium, chi_density,
                         lorentz_line, zeta_density)
from .dispersion import find_roots
from .errors import (DomainError, NegativeCoefficientError,
                     NonConvergenceError, SingularSystemError)
from .population import PopulationResult
from .quadrature import (IntegrationSpec, integrate_adaptive,
                         integrate_principal_value, integrate_semi_infinite)

_PI = np.pi


def _backend_choice():
    return os.environ.get("VACUUM_CENSUS_BACKEND", "").strip().lower()


def _load_kernels():
    choice = _backend_choice()
    if choice == "numpy":
        return None
    try:
        from . import _kernels
        return _kernels
    except ImportError:
        if choice == "numba":
            raise
        return None


_KERNELS = _load_kernels()


def active_backend():
    """Which implementation nk_dual_loss dispatches to."""
    return "numba" if _KERNELS is not None else "numpy"


@dataclass(frozen=True)
class DualLossProblem:
    """Medium plus photonic broadening at one wavevector.

    gamma_P is capped at 2*omega0 like the matter linewidth (same overdamping
    argument applied to the photon resonance); the gamma_P -> 0 limit is
    served by the single-loss routes in population. gamma_L must be positive
    because the matter continuum degenerates otherwise.
    """

    medium: LorentzMedium
    gamma_P: float
    k_c: float

    def __post_init__(self):
        if not self.gamma_P > 0:
            raise DomainError(f"gamma_P must be positive, got {self.gamma_P}")
        if self.gamma_P > GAMMA_MAX_FACTOR * self.medium.omega0:
            raise DomainError(
                f"gamma_P = {self.gamma_P} exceeds 2*omega0 "
                f"= {GAMMA_MAX_FACTOR * self.medium.omega0}")
        if not self.k_c > 0:
            raise DomainError(f"k_c must be positive, got {self.k_c}")
        if self.medium.omega_c > 0 and not self.medium.gamma_L > 0:
            raise DomainError(
                "dual-loss problems need gamma_L > 0; use the single-loss "
                "routes for an undamped matter resonance")


@dataclass(frozen=True)
class ModeFunctionSolution:
    """Gauge-fixed algebraic solution of the coupled-continua system at one
    frequency. s_w_plus is identically zero in this gauge."""

    omega: float
    s_x_plus: float
    s_x_minus: float
    s_w_minus: float
    K_plus_sq: float
    K_minus_sq: float
    F_plus: float
    F_minus: float
    G_plus: float
    G_minus: float


def _pv_core(w, center, width, spec_tols):
    """P int_0^inf line(x)/(w^2 - x^2) dx for a unit-normalised Lorentzian
    line, via the generic engine: excised principal value plus mapped tail."""
    rel_tol, abs_tol = spec_tols

    def f(x):
        return lorentz_line(x, center, width) / ((w - x) * (w + x))

    cut = max(10.0 * center, 10.0 * width, 2.0 * w)
    breaks = tuple(sorted(p for p in (
        center - 5 * width, center - width, center, center + width,
        center + 5 * width) if 0 < p < cut and abs(p - w) > 1e-9 * cut))
    spec = IntegrationSpec(breakpoints=breaks, tail_cut=cut,
                           rel_tol=rel_tol, abs_tol=abs_tol)
    pv, err_pv = integrate_principal_value(f, w, 0.0, cut, spec)

    def tail(x):
        return lorentz_line(x, center, width) / ((w - x) * (w + x))

    def mapped(t):
        x = cut / t
        return tail(x) * cut / t**2

    tv, err_t = integrate_adaptive(mapped, 0.0, 1.0, spec)
    return pv + tv, err_pv + err_t


def pv_W(problem: DualLossProblem, omega):
    """Principal-value transform of the photon density,
    P int_0^inf x |chi_k(x)|^2 / (omega^2 - x^2) dx.

    Positive sum-rule tail: omega^2 * W -> +1 as omega -> inf.
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    scale = _PI / (2 * problem.gamma_P) / (problem.k_c**2 + omega**2)
    value, _ = _pv_core(float(omega), problem.k_c, problem.gamma_P,
                        (1e-10, 1e-11 * scale))
    return value


def pv_Z(medium: LorentzMedium, omega):
    """Principal-value transform of the matter density,
    P int_0^inf omega^2 |zeta(x)|^2 / (x (omega^2 - x^2)) dx."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    zeta_density(medium, omega)   # validates gamma_L > 0
    scale = _PI / (2 * medium.gamma_L) / (medium.omega0**2 + omega**2)
    value, _ = _pv_core(float(omega), medium.omega0, medium.gamma_L,
                        (1e-10, 1e-11 * scale))
    return float(omega) ** 2 * value


def mode_weight_from_parts(a, b, z, w, g):
    """sum_j F_j^2 K_j^2 from the densities a = |zeta|^2, b = |chi_k|^2 and
    the transforms z = Z(omega), w = W(omega), with g = omega_c^2.

    Written without dividing by W or by the minus-branch denominator, so both
    gauge poles cancel; accepts scalars or arrays.
    """
    pi2 = _PI * _PI
    gw = g * w
    m1 = 1.0 - gw * z
    fkp = 1.0 / (g * (g * b * pi2 + a * pi2 * gw * gw + (4.0 / a) * m1 * m1))
    num = (4.0 * z / a) * m1 - a * pi2 * gw
    den = g * b * pi2 + (4.0 / a) * m1
    dm2 = (g * b * pi2 * num * num
           + (4.0 * g / b) * (den / g - w * num) ** 2
           + a * pi2 * den * den + (4.0 / a) * (num - z * den) ** 2)
    return fkp + num * num / (g * dm2)


def solve_mode_functions(problem: DualLossProblem, omega) -> ModeFunctionSolution:
    """Explicit gauge-fixed mode functions at one frequency.

    Raises SingularSystemError at the measure-zero frequencies where the
    chosen gauge degenerates: W(omega) = 0 (plus-branch pole), a vanishing
    cross-orthogonality denominator (rank deficiency), or F_minus = 0
    (minus-branch pole). The population integrand itself stays finite
    through all three; see mode_weight_from_parts.
    """
    omega = float(omega)
    medium = problem.medium
    if medium.omega_c == 0:
        raise DomainError("solve_mode_functions needs omega_c > 0")
    a = zeta_density(medium, omega)
    b = chi_density(problem.k_c, problem.gamma_P, omega)
    z = pv_Z(medium, omega)
    w = pv_W(problem, omega)
    g = medium.omega_c**2
    pi2 = _PI * _PI

    # W is resolved by the PV quadrature only down to ~1e-10 of its natural
    # magnitude; below that the gauge choice cannot be certified nonsingular
    w_scale = _PI / (2 * problem.gamma_P) / (problem.k_c**2 + omega**2)
    if abs(w) < 1e-10 * w_scale:
        raise SingularSystemError(
            f"gauge pole: W({omega}) = {w:.3e} is consistent with zero")
    f_plus = 1.0 / (g * w)
    s_x_plus = 2.0 * (f_plus - z) / a

    m1 = 1.0 - g * w * z
    num = (4.0 * z / a) * m1 - a * pi2 * g * w
    den = g * b * pi2 + (4.0 / a) * m1
    den_scale = g * b * pi2 + (4.0 / a) * (abs(m1) + 1e-300)
    if abs(den) < 1e-10 * den_scale:
        raise SingularSystemError(
            f"cross-orthogonality equation is rank deficient at omega={omega}")
    num_scale = (4.0 * abs(z) / a) * abs(m1) + a * pi2 * abs(g * w) + 1e-300
    f_minus = num / den
    if abs(num) < 1e-12 * num_scale:
        raise SingularSystemError(
            f"minus-branch gauge pole: F_minus({omega}) = 0")
    s_x_minus = 2.0 * (f_minus - z) / a
    g_minus = 1.0 / (g * f_minus)
    s_w_minus = 2.0 * (g_minus - w) / b

    k_plus_sq = 1.0 / (g * (g * b * pi2 * f_plus**2 + a * (pi2 + s_x_plus**2)))
    k_minus_sq = 1.0 / (g * (g * b * (pi2 + s_w_minus**2) * f_minus**2
                             + a * (pi2 + s_x_minus**2)))
    if k_plus_sq < 0 or k_minus_sq < 0:
        raise NegativeCoefficientError(
            f"negative K^2 at omega={omega}: {k_plus_sq}, {k_minus_sq}")
    return ModeFunctionSolution(
        omega=omega, s_x_plus=s_x_plus, s_x_minus=s_x_minus,
        s_w_minus=s_w_minus, K_plus_sq=k_plus_sq, K_minus_sq=k_minus_sq,
        F_plus=f_plus, F_minus=f_minus, G_plus=w, G_minus=g_minus)


def _outer_breakpoints(problem):
    medium, k_c = problem.medium, problem.k_c
    pts = {medium.omega0, k_c,
           medium.omega0 - 5 * medium.gamma_L, medium.omega0 + 5 * medium.gamma_L,
           k_c - 5 * problem.gamma_P, k_c - problem.gamma_P,
           k_c + problem.gamma_P, k_c + 5 * problem.gamma_P}
    if medium.omega_c > 0:
        disp = find_roots(medium, k_c)
        for root in disp.roots:
            pts.add(root.real)
            pts.add(root.real - root.imag)
            pts.add(root.real + root.imag)
    return sorted(p for p in pts if p > 0)


def _jpv_python(w, center, width, rtol):
    """Pure-numpy twin of _kernels.jpv (pole-excised Lorentzian transform)."""
    from .quadrature import _gk15_batch

    def q_over(x):
        d = center * center - x * x
        q = x * x / (d * d + width * width * x * x)
        return q / ((w - x) * (w + x))

    def folded(t):
        return q_over(w + t) + q_over(w - t)

    dist = abs(w - center)
    if dist <= 3.0 * width:
        h = 0.5 * width
    else:
        h = max(0.5 * (dist - 3.0 * width), 0.25 * width)
    h = min(0.25 * w, h)
    cut = max(10.0 * center, 10.0 * width, 1.5 * (w + h))
    atol = rtol * (_PI / (2 * width)) / (center * center + w * w)
    breaks = tuple(sorted(p for p in (
        center - 5 * width, center - width, center, center + width,
        center + 5 * width) if p > 0))
    spec = IntegrationSpec(breakpoints=breaks, tail_cut=cut,
                           rel_tol=rtol, abs_tol=atol)
    total = 0.0
    if w - h > 0:
        total += integrate_adaptive(q_over, 0.0, w - h, spec)[0]
    total += integrate_adaptive(q_over, w + h, cut, spec)[0]
    edges = np.array([0.0, h / 4, h / 2, h])
    total += float(_gk15_batch(folded, edges[:-1], edges[1:])[0].sum())

    def mapped(t):
        x = cut / t
        return q_over(x) * cut / t**2

    nospec = IntegrationSpec(tail_cut=cut, rel_tol=rtol, abs_tol=atol)
    total += integrate_adaptive(mapped, 0.0, 1.0, nospec)[0]
    return total


def _nk_dual_numpy(problem, tol):
    """Fallback evaluation of the dual-loss double integral on the generic
    vectorized engine (same nesting and breakpoints as the compiled path)."""
    medium, k_c, gp = problem.medium, problem.k_c, problem.gamma_P
    w0, gl = medium.omega0, medium.gamma_L
    g = medium.omega_c**2
    in_rtol = max(tol * 1e-2, 1e-11)
    cut = 10.0 * max(w0, k_c)

    inner_breaks = tuple(sorted(p for p in (
        k_c - 5 * gp, k_c - gp, k_c, k_c + gp, k_c + 5 * gp) if p > 0))
    inner_spec = IntegrationSpec(breakpoints=inner_breaks,
                                 tail_cut=max(10 * k_c, 10 * gp, 10.0),
                                 rel_tol=in_rtol, abs_tol=1e-18)

    def outer_scalar(w):
        a = w * lorentz_line(w, w0, gl)
        b = lorentz_line(w, k_c, gp) / w
        z = w * w * (2 * gl / _PI) * _jpv_python(w, w0, gl, in_rtol)
        wv = (2 * gp / _PI) * _jpv_python(w, k_c, gp, in_rtol)
        s = mode_weight_from_parts(a, b, z, wv, g)

        def chi_weight(x):
            return chi_density(k_c, gp, x) / (w + x) ** 2

        i_w, _ = integrate_semi_infinite(chi_weight, 0.0, inner_spec)
        return g * g * s * i_w

    def outer(ws):
        return np.array([outer_scalar(float(w)) for w in np.atleast_1d(ws)])

    outer_spec = IntegrationSpec(
        breakpoints=tuple(_outer_breakpoints(problem)),
        tail_cut=cut, rel_tol=0.5 * tol, abs_tol=1e-15)
    v1, e1 = integrate_adaptive(outer, 0.0, cut, outer_spec)

    def mapped(ts):
        ts = np.atleast_1d(ts)
        return np.array([outer_scalar(cut / float(t)) * cut / float(t) ** 2
                         for t in ts])

    tail_spec = IntegrationSpec(tail_cut=cut, rel_tol=0.5 * tol,
                                abs_tol=1e-15)
    v2, e2 = integrate_adaptive(mapped, 0.0, 1.0, tail_spec)
    value = v1 + v2
    return value, e1 + e2 + 3.0 * in_rtol * abs(value)


def nk_dual_loss(problem: DualLossProblem, tol=1e-4) -> PopulationResult:
    """Ground-state photon number with both loss channels active.

    est_error <= tol * n_k on success; NonConvergenceError otherwise.
    """
    if not 1e-8 <= tol <= 1e-3:
        raise DomainError(f"tol must lie in [1e-8, 1e-3], got {tol}")
    if problem.medium.omega_c == 0:
        return PopulationResult(k_c=problem.k_c, n_k=0.0, method="dual_loss",
                                est_error=0.0)
    if _KERNELS is not None:
        breaks = np.array(_outer_breakpoints(problem), dtype=float)
        value, est = _KERNELS.nk_dual_point(
            problem.medium.omega0, problem.medium.omega_c,
            problem.medium.gamma_L, problem.gamma_P, problem.k_c,
            tol, breaks)
    else:
        value, est = _nk_dual_numpy(problem, tol)
    if not np.isfinite(value) or est > tol * max(abs(value), 1e-300):
        raise NonConvergenceError(
            f"dual-loss quadrature reached estimate {est:.3e} for value "
            f"{value:.6e} (target {tol:.1e} relative)",
            value=value, estimate=est)
    return PopulationResult(k_c=float(problem.k_c), n_k=max(value, 0.0),
                            method="dual_loss", est_error=float(est))
