"""Compiled scalar kernels for the dual-loss double integral.

This module is the hot path: evaluating the two-continua population needs a
principal-value transform of each Lorentzian density at every outer
quadrature node, which is far too slow in interpreted code. Everything here
is nopython-compiled; importing this module requires numba. The package
falls back to a pure-numpy implementation (see dual_loss) when numba is
unavailable or VACUUM_CENSUS_BACKEND=numpy is set.

The integration scheme mirrors the generic engine: Gauss-Kronrod 7/15 panels
with worst-first bisection, a 1/t tail map, and symmetric pole excision with
a folded window for principal values.
"""
import numpy as np
from numba import njit

from .quadrature import _WG, _WGK, _XGK

_jit = njit(cache=True, nogil=True, error_model="numpy")

_MAXP = 1024
_PI = np.pi

# leaf integrand selectors
_J_PLAIN = 0
_J_FOLDED = 1
_J_TAIL = 2
_I_PLAIN = 3
_I_TAIL = 4


@_jit
def _lorentz_q(x, center, width):
    """x^2 / ((center^2 - x^2)^2 + width^2 x^2), the Lorentzian line core."""
    d = center * center - x * x
    return x * x / (d * d + width * width * x * x)


@_jit
def _leaf_f(which, x, p1, p2, p3, p4):
    """Leaf integrands. p1=center, p2=width, p3=pole/outer frequency,
    p4=tail cut for the mapped variants."""
    if which == _J_PLAIN:
        return _lorentz_q(x, p1, p2) / ((p3 - x) * (p3 + x))
    if which == _J_FOLDED:
        up = _lorentz_q(p3 + x, p1, p2) / ((-x) * (2 * p3 + x))
        dn = _lorentz_q(p3 - x, p1, p2) / (x * (2 * p3 - x))
        return up + dn
    if which == _J_TAIL:
        u = p4 / x
        return (_lorentz_q(u, p1, p2) / ((p3 - u) * (p3 + u))) * p4 / (x * x)
    if which == _I_PLAIN:
        dens = (2 * p2 / _PI) * _lorentz_q(x, p1, p2) / x
        return dens / ((p3 + x) * (p3 + x))
    # _I_TAIL
    u = p4 / x
    dens = (2 * p2 / _PI) * _lorentz_q(u, p1, p2) / u
    return (dens / ((p3 + u) * (p3 + u))) * p4 / (x * x)


@_jit
def _gk15_leaf(which, a, b, p1, p2, p3, p4):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    k15 = 0.0
    g7 = 0.0
    resasc = 0.0
    fv = np.empty(15)
    for i in range(15):
        fv[i] = _leaf_f(which, mid + half * _XGK[i], p1, p2, p3, p4)
        k15 += _WGK[i] * fv[i]
    for i in range(7):
        g7 += _WG[i] * fv[2 * i + 1]
    k15 *= half
    g7 *= half
    mean = k15 / (b - a)
    for i in range(15):
        resasc += _WGK[i] * abs(fv[i] - mean)
    resasc *= half
    rough = abs(k15 - g7)
    if resasc > 0.0:
        scaled = (200.0 * rough / resasc) ** 1.5
        err = resasc * (scaled if scaled < 1.0 else 1.0)
    else:
        err = rough
    floor = 50 * 2.220446049250313e-16 * abs(k15)
    if err < floor:
        err = floor
    return k15, err


@_jit
def _adapt_leaf(which, a, b, p1, p2, p3, p4, breaks, rtol, atol):
    """Adaptive GK15 over (a, b) with initial edges at the given interior
    breakpoints. Returns (value, error_estimate); best effort within the
    panel budget."""
    lo = np.empty(_MAXP)
    hi = np.empty(_MAXP)
    val = np.empty(_MAXP)
    err = np.empty(_MAXP)
    n = 0
    prev = a
    for i in range(breaks.shape[0]):
        bp = breaks[i]
        if prev < bp < b:
            lo[n], hi[n] = prev, bp
            n += 1
            prev = bp
    lo[n], hi[n] = prev, b
    n += 1
    total = 0.0
    esum = 0.0
    for i in range(n):
        val[i], err[i] = _gk15_leaf(which, lo[i], hi[i], p1, p2, p3, p4)
        total += val[i]
        esum += err[i]
    while esum > max(rtol * abs(total), atol) and n + 1 < _MAXP:
        worst = 0
        for i in range(1, n):
            if err[i] > err[worst]:
                worst = i
        wlo, whi = lo[worst], hi[worst]
        if whi - wlo < 1e-15 * (abs(whi) + abs(wlo) + 1e-300):
            break
        wmid = 0.5 * (wlo + whi)
        total -= val[worst]
        esum -= err[worst]
        v1, e1 = _gk15_leaf(which, wlo, wmid, p1, p2, p3, p4)
        v2, e2 = _gk15_leaf(which, wmid, whi, p1, p2, p3, p4)
        lo[worst], hi[worst], val[worst], err[worst] = wlo, wmid, v1, e1
        lo[n], hi[n], val[n], err[n] = wmid, whi, v2, e2
        n += 1
        total += v1 + v2
        esum += e1 + e2
    return total, esum


@_jit
def _excision_radius(w, center, width):
    """Excision radius that keeps the folded window clear of the Lorentzian
    peak (structure scale ~ width around the center) and inside (0, 2w)."""
    dist = abs(w - center)
    if dist <= 3.0 * width:
        h = 0.5 * width
    else:
        h = max(0.5 * (dist - 3.0 * width), 0.25 * width)
    return min(0.25 * w, h)


@_jit
def jpv(w, center, width, rtol):
    """P int_0^inf x^2 / (((center^2-x^2)^2 + width^2 x^2) (w^2-x^2)) dx.

    Symmetric excision around the pole at x=w with a folded fixed-panel
    window (refining toward t=0 would only chase cancellation noise),
    peak-aware breakpoints, 1/t-mapped tail.
    """
    h = _excision_radius(w, center, width)
    cut = max(10.0 * center, 10.0 * width, 1.5 * (w + h))
    breaks = np.empty(6)
    breaks[0] = center - 5 * width
    breaks[1] = center - width
    breaks[2] = center
    breaks[3] = center + width
    breaks[4] = center + 5 * width
    breaks[5] = 0.0
    breaks = np.sort(breaks)
    # absolute floor keyed to the transform's natural magnitude, so the
    # engine does not grind panels near the zero crossings of the value
    atol = rtol * (_PI / (2 * width)) / (center * center + w * w)
    total = 0.0
    esum = 0.0
    if w - h > 0.0:
        v, e = _adapt_leaf(_J_PLAIN, 0.0, w - h, center, width, w, 0.0,
                           breaks, rtol, atol)
        total += v
        esum += e
    v, e = _adapt_leaf(_J_PLAIN, w + h, cut, center, width, w, 0.0,
                       breaks, rtol, atol)
    total += v
    esum += e
    v, e = _gk15_leaf(_J_FOLDED, 0.0, 0.25 * h, center, width, w, 0.0)
    total += v
    v, e = _gk15_leaf(_J_FOLDED, 0.25 * h, 0.5 * h, center, width, w, 0.0)
    total += v
    v, e = _gk15_leaf(_J_FOLDED, 0.5 * h, h, center, width, w, 0.0)
    total += v
    v, e = _adapt_leaf(_J_TAIL, 0.0, 1.0, center, width, w, cut,
                       breaks[:0], rtol, atol)
    total += v
    esum += e
    return total


@_jit
def inner_chi_weight(w, k_c, gamma_P, rtol):
    """int_0^inf |chi_k(x)|^2 / (w + x)^2 dx."""
    cut = max(10.0 * k_c, 10.0 * gamma_P, 10.0)
    breaks = np.empty(5)
    breaks[0] = k_c - 5 * gamma_P
    breaks[1] = k_c - gamma_P
    breaks[2] = k_c
    breaks[3] = k_c + gamma_P
    breaks[4] = k_c + 5 * gamma_P
    breaks = np.sort(breaks)
    atol = 1e-18
    v1, _ = _adapt_leaf(_I_PLAIN, 0.0, cut, k_c, gamma_P, w, 0.0,
                        breaks, rtol, atol)
    v2, _ = _adapt_leaf(_I_TAIL, 0.0, 1.0, k_c, gamma_P, w, cut,
                        breaks[:0], rtol, atol)
    return v1 + v2


@_jit
def mode_weight(w, omega0, wc2, gamma_L, gamma_P, k_c, rtol):
    """sum_j F_j(w)^2 K_j(w)^2 for the two continuum branches.

    Algebra arranged so both gauge poles cancel exactly: the plus branch
    uses only the products g*W and g*W*Z (never 1/W), and the minus branch
    is kept as a numerator/denominator pair so F_minus -> inf points stay
    finite. Scalar twin of dual_loss.mode_weight_from_parts.
    """
    a = w * (2 * gamma_L / _PI) * _lorentz_q(w, omega0, gamma_L)
    b = (2 * gamma_P / _PI) * _lorentz_q(w, k_c, gamma_P) / w
    zv = w * w * (2 * gamma_L / _PI) * jpv(w, omega0, gamma_L, rtol)
    wv = (2 * gamma_P / _PI) * jpv(w, k_c, gamma_P, rtol)
    g = wc2
    gw = g * wv
    m1 = 1.0 - gw * zv
    pi2 = _PI * _PI
    fkp = 1.0 / (g * (g * b * pi2 + a * pi2 * gw * gw + (4.0 / a) * m1 * m1))
    num = (4.0 * zv / a) * m1 - a * pi2 * gw
    den = g * b * pi2 + (4.0 / a) * m1
    dm2 = (g * b * pi2 * num * num
           + (4.0 * g / b) * (den / g - wv * num) ** 2
           + a * pi2 * den * den + (4.0 / a) * (num - zv * den) ** 2)
    fkm = num * num / (g * dm2)
    return fkp + fkm


@_jit
def _outer_f(x, tail_cut, omega0, wc2, gamma_L, gamma_P, k_c, in_rtol):
    if tail_cut > 0.0:
        w = tail_cut / x
        jac = tail_cut / (x * x)
    else:
        w = x
        jac = 1.0
    s = mode_weight(w, omega0, wc2, gamma_L, gamma_P, k_c, in_rtol)
    i = inner_chi_weight(w, k_c, gamma_P, in_rtol)
    return wc2 * wc2 * s * i * jac


@_jit
def _gk15_outer(a, b, tail_cut, omega0, wc2, gamma_L, gamma_P, k_c, in_rtol):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    k15 = 0.0
    g7 = 0.0
    resasc = 0.0
    fv = np.empty(15)
    for i in range(15):
        fv[i] = _outer_f(mid + half * _XGK[i], tail_cut, omega0, wc2,
                         gamma_L, gamma_P, k_c, in_rtol)
        k15 += _WGK[i] * fv[i]
    for i in range(7):
        g7 += _WG[i] * fv[2 * i + 1]
    k15 *= half
    g7 *= half
    mean = k15 / (b - a)
    for i in range(15):
        resasc += _WGK[i] * abs(fv[i] - mean)
    resasc *= half
    rough = abs(k15 - g7)
    if resasc > 0.0:
        scaled = (200.0 * rough / resasc) ** 1.5
        err = resasc * (scaled if scaled < 1.0 else 1.0)
    else:
        err = rough
    floor = 50 * 2.220446049250313e-16 * abs(k15)
    if err < floor:
        err = floor
    return k15, err


@_jit
def _adapt_outer(a, b, tail_cut, omega0, wc2, gamma_L, gamma_P, k_c,
                 breaks, rtol, atol, in_rtol):
    lo = np.empty(_MAXP)
    hi = np.empty(_MAXP)
    val = np.empty(_MAXP)
    err = np.empty(_MAXP)
    n = 0
    prev = a
    for i in range(breaks.shape[0]):
        bp = breaks[i]
        if prev < bp < b:
            lo[n], hi[n] = prev, bp
            n += 1
            prev = bp
    lo[n], hi[n] = prev, b
    n += 1
    total = 0.0
    esum = 0.0
    for i in range(n):
        val[i], err[i] = _gk15_outer(lo[i], hi[i], tail_cut, omega0, wc2,
                                     gamma_L, gamma_P, k_c, in_rtol)
        total += val[i]
        esum += err[i]
    while esum > max(rtol * abs(total), atol) and n + 1 < _MAXP:
        worst = 0
        for i in range(1, n):
            if err[i] > err[worst]:
                worst = i
        wlo, whi = lo[worst], hi[worst]
        if whi - wlo < 1e-15 * (abs(whi) + abs(wlo) + 1e-300):
            break
        wmid = 0.5 * (wlo + whi)
        total -= val[worst]
        esum -= err[worst]
        v1, e1 = _gk15_outer(wlo, wmid, tail_cut, omega0, wc2, gamma_L,
                             gamma_P, k_c, in_rtol)
        v2, e2 = _gk15_outer(wmid, whi, tail_cut, omega0, wc2, gamma_L,
                             gamma_P, k_c, in_rtol)
        lo[worst], hi[worst], val[worst], err[worst] = wlo, wmid, v1, e1
        lo[n], hi[n], val[n], err[n] = wmid, whi, v2, e2
        n += 1
        total += v1 + v2
        esum += e1 + e2
    return total, esum


@_jit
def nk_dual_point(omega0, omega_c, gamma_L, gamma_P, k_c, tol,
                  extra_breaks):
    """Dual-loss virtual-photon number by nested adaptive quadrature.

    extra_breaks: additional outer breakpoints (dispersion-root real parts),
    on top of the structural resonance edges added here. Returns
    (value, error_estimate); the estimate covers the outer adaptivity plus
    the leaf-tolerance margin.
    """
    wc2 = omega_c * omega_c
    in_rtol = max(tol * 1e-2, 1e-11)
    cut = 10.0 * max(omega0, k_c)
    nb = extra_breaks.shape[0]
    breaks = np.empty(nb + 8)
    for i in range(nb):
        breaks[i] = extra_breaks[i]
    breaks[nb] = omega0 - 5 * gamma_L
    breaks[nb + 1] = omega0
    breaks[nb + 2] = omega0 + 5 * gamma_L
    breaks[nb + 3] = k_c - 5 * gamma_P
    breaks[nb + 4] = k_c - gamma_P
    breaks[nb + 5] = k_c
    breaks[nb + 6] = k_c + gamma_P
    breaks[nb + 7] = k_c + 5 * gamma_P
    breaks = np.sort(breaks)
    v1, e1 = _adapt_outer(0.0, cut, 0.0, omega0, wc2, gamma_L, gamma_P,
                          k_c, breaks, 0.5 * tol, 1e-15, in_rtol)
    v2, e2 = _adapt_outer(0.0, 1.0, cut, omega0, wc2, gamma_L, gamma_P,
                          k_c, breaks[:0], 0.5 * tol, 1e-15, in_rtol)
    value = v1 + v2
    est = e1 + e2 + 3.0 * in_rtol * abs(value)
    return value, est
