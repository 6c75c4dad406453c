"""Complex dispersion roots, derivatives, regimes, and sweeps."""
import numpy as np
import pytest

from vacuum_census.dielectric import LorentzMedium
from vacuum_census.dispersion import (classify_regime, find_roots,
                                      residual_with_floor, trajectory_sweep)
from vacuum_census.errors import (DecoupledInputError, DomainError,
                                  SweepPointError)
from vacuum_census.hopfield import eigenfrequencies


def residual_ok(medium, k_c, z, bound=1e-10):
    """Residual check with the double-precision evaluation floor that kicks
    in when a root sits next to a matter pole (see residual_with_floor)."""
    resid, floor = residual_with_floor(medium, k_c, z)
    return resid <= max(bound, 8 * floor)


class TestFindRoots:
    def test_lossless_resonant_split(self):
        disp = find_roots(LorentzMedium(1.0, 0.5, 0.0), 1.0)
        assert disp.roots[0].imag == 0.0
        assert disp.roots[1].imag == 0.0
        assert disp.roots[0].real == pytest.approx(0.7807764, abs=1e-7)
        assert disp.roots[1].real == pytest.approx(1.2807764, abs=1e-7)
        split = disp.roots[1].real - disp.roots[0].real
        assert split**2 == pytest.approx(0.25, rel=1e-10)

    def test_lossless_matches_closed_form(self):
        for wc, ck in ((0.3, 0.4), (1.2, 2.7), (0.05, 1.0)):
            medium = LorentzMedium(1.0, wc, 0.0)
            disp = find_roots(medium, ck)
            wm, wp = eigenfrequencies(medium, ck)
            assert disp.roots[0].real == pytest.approx(wm, rel=1e-12)
            assert disp.roots[1].real == pytest.approx(wp, rel=1e-12)

    def test_lossy_roots_first_quadrant(self):
        disp = find_roots(LorentzMedium(1.0, 0.5, 1.0), 1.0)
        for z in disp.roots:
            assert z.real >= 0
            assert z.imag >= 0
            assert residual_ok(LorentzMedium(1.0, 0.5, 1.0), 1.0, z)

    def test_residual_bound_bulk(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            medium = LorentzMedium(1.0, rng.uniform(0.05, 2.0),
                                   rng.uniform(0.0, 2.0))
            k_c = 10 ** rng.uniform(-1.5, 1.5)
            disp = find_roots(medium, k_c)
            for z in disp.roots:
                assert residual_ok(medium, k_c, z)

    def test_sum_rule_bulk(self):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            medium = LorentzMedium(1.0, rng.uniform(0.05, 2.0),
                                   rng.uniform(0.0, 2.0))
            k_c = 10 ** rng.uniform(-1.5, 1.5)
            disp = find_roots(medium, k_c)
            if disp.degenerate:
                continue
            assert disp.sum_rule_value() == pytest.approx(1.0, rel=1e-10)

    def test_quadruple_closure(self):
        from vacuum_census.dispersion import _quartic_roots
        medium = LorentzMedium(1.0, 0.5, 0.8)
        disp = find_roots(medium, 1.3)
        raw = _quartic_roots(medium, 1.3)
        expected = set()
        for z in disp.roots:
            expected.add(np.conj(z))       # raw lower-plane root
            expected.add(-z)               # its reflection
        for r in raw:
            assert min(abs(r - e) for e in expected) <= 1e-10

    def test_derivatives_match_finite_difference(self):
        medium = LorentzMedium(1.0, 0.5, 0.0)
        k, h = 1.0, 1e-6
        disp = find_roots(medium, k)
        plus = find_roots(medium, k + h)
        minus = find_roots(medium, k - h)
        for i in range(2):
            fd = (plus.roots[i] - minus.roots[i]) / (2 * h)
            assert abs(disp.derivs[i] - fd) <= 1e-6 * abs(fd)

    def test_derivatives_match_finite_difference_lossy(self):
        medium = LorentzMedium(1.0, 0.7, 1.3)
        k, h = 0.8, 1e-6
        disp = find_roots(medium, k)
        plus = find_roots(medium, k + h)
        minus = find_roots(medium, k - h)
        for i in range(2):
            fd = (plus.roots[i] - minus.roots[i]) / (2 * h)
            assert abs(disp.derivs[i] - fd) <= 1e-6 * abs(fd)

    def test_exceptional_point_flagged(self):
        # gamma_L = 2 omega_c at resonance collapses the representatives
        disp = find_roots(LorentzMedium(1.0, 0.5, 1.0), 1.0)
        assert disp.degenerate
        assert abs(disp.roots[0] - disp.roots[1]) <= 1e-7

    def test_zero_coupling_rejected(self):
        with pytest.raises(DecoupledInputError):
            find_roots(LorentzMedium(1.0, 0.0, 0.5), 1.0)

    def test_nonpositive_k_rejected(self):
        with pytest.raises(DomainError):
            find_roots(LorentzMedium(1.0, 0.5, 0.5), -1.0)

    def test_near_pole_corner(self):
        # tiny coupling at maximal damping parks a root next to the matter
        # pole, where the rational residual hits its evaluation noise floor
        disp = find_roots(LorentzMedium(1.0, 1e-3, 2.0), 1.0)
        assert disp.roots[0].real == pytest.approx(7.071e-4, rel=1e-3)


class TestRegime:
    def test_strong_ultrastrong(self):
        r = classify_regime(LorentzMedium(1.0, 0.5, 0.5))
        assert r.regime == "strong" and r.ultrastrong

    def test_weak_ultrastrong(self):
        r = classify_regime(LorentzMedium(1.0, 0.5, 2.0))
        assert r.regime == "weak" and r.ultrastrong

    def test_strong_not_ultrastrong(self):
        r = classify_regime(LorentzMedium(1.0, 0.1, 0.05))
        assert r.regime == "strong" and not r.ultrastrong

    def test_boundary_is_weak(self):
        assert classify_regime(LorentzMedium(1.0, 0.5, 1.0)).regime == "weak"


class TestTrajectorySweep:
    def test_gamma_sweep_marker_set(self):
        grid = [0.0, 0.5, 1.0, 1.5, 2.0]
        out = trajectory_sweep(LorentzMedium(1.0, 0.5, 0.0), 1.0, "gamma_l",
                               grid)
        assert len(out) == 5
        for point in out:
            assert len(point.roots) == 2

    def test_single_point_equals_find_roots(self):
        medium = LorentzMedium(1.0, 0.5, 0.8)
        out = trajectory_sweep(medium, 1.3, "gamma_l", [0.8])
        assert out[0].roots == find_roots(medium, 1.3).roots

    def test_branch_continuity_in_k(self):
        # the matched assignment minimises the total complex-plane movement
        # between consecutive grid points (per-root nearest matching is not
        # well defined where branches cross near the exceptional point)
        medium = LorentzMedium(1.0, 0.5, 1.0)
        grid = np.geomspace(0.1, 3.0, 120)
        out = trajectory_sweep(medium, None, "k_c", grid)
        for prev, cur in zip(out, out[1:]):
            kept = (abs(cur.roots[0] - prev.roots[0])
                    + abs(cur.roots[1] - prev.roots[1]))
            swapped = (abs(cur.roots[0] - prev.roots[1])
                       + abs(cur.roots[1] - prev.roots[0]))
            assert kept <= swapped + 1e-12

    def test_coupling_sweep_crosses_regimes(self):
        # at gamma_L = omega0 the two roots move from splitting mostly in
        # loss rate (small coupling) to splitting mostly in frequency
        medium = LorentzMedium(1.0, 0.5, 1.0)
        out = trajectory_sweep(medium, 1.0, "omega_c",
                               np.linspace(0.05, 1.0, 40))
        first, last = out[0], out[-1]
        assert (abs(first.roots[0].real - first.roots[1].real)
                < abs(first.roots[0].imag - first.roots[1].imag))
        assert (abs(last.roots[0].real - last.roots[1].real)
                > abs(last.roots[0].imag - last.roots[1].imag))

    def test_error_carries_grid_index(self):
        with pytest.raises(SweepPointError) as info:
            trajectory_sweep(LorentzMedium(1.0, 0.5, 0.0), 1.0, "omega_c",
                             [0.5, 0.0, 0.7])
        assert info.value.index == 1

    def test_unknown_variable_rejected(self):
        with pytest.raises(DomainError):
            trajectory_sweep(LorentzMedium(1.0, 0.5, 0.0), 1.0, "bogus", [1.0])
