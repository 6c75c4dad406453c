"""Two-continua machinery: PV transforms, mode functions, populations."""
import numpy as np
import pytest

from oracles import j_scale, w_residue, z_residue
from vacuum_census.dielectric import LorentzMedium, chi_density, zeta_density
from vacuum_census.dual_loss import (DualLossProblem, nk_dual_loss,
                                     mode_weight_from_parts, pv_W, pv_Z,
                                     solve_mode_functions)
from vacuum_census.errors import DomainError, SingularSystemError
from vacuum_census.hopfield import nk_lossless
from vacuum_census.population import nk_quadrature
from vacuum_census.quadrature import IntegrationSpec, integrate_semi_infinite


def problem(wc=0.5, gl=1.0, gp=0.5, ck=1.0):
    return DualLossProblem(LorentzMedium(1.0, wc, gl), gp, ck)


class TestProblemValidation:
    def test_rejects_zero_photon_width(self):
        with pytest.raises(DomainError):
            problem(gp=0.0)

    def test_rejects_overdamped_photon(self):
        with pytest.raises(DomainError):
            problem(gp=2.0 + 1e-9)

    def test_rejects_lossless_matter(self):
        with pytest.raises(DomainError):
            problem(gl=0.0)


class TestPVTransforms:
    @pytest.mark.parametrize("w", [0.3, 0.9, 1.3, 2.0, 5.0])
    def test_w_matches_residue_oracle(self, w):
        p = problem()
        ref = w_residue(w, p.k_c, p.gamma_P)
        scale = max(abs(ref),
                    (2 * p.gamma_P / np.pi) * j_scale(w, p.k_c, p.gamma_P))
        assert abs(pv_W(p, w) - ref) <= 1e-8 * scale

    @pytest.mark.parametrize("w", [0.3, 0.9, 1.0, 1.3, 2.7])
    def test_z_matches_residue_oracle(self, w):
        medium = LorentzMedium(1.0, 0.5, 0.5)
        ref = z_residue(w, 1.0, 0.5)
        scale = max(abs(ref),
                    w * w * j_scale(w, 1.0, 0.5) / np.pi)
        assert abs(pv_Z(medium, w) - ref) <= 1e-8 * scale

    def test_critically_damped_oracle(self):
        # width = 2 * center needs the double-pole residue on the oracle side
        p = problem(gp=2.0)
        for w in (0.4, 1.7, 3.0):
            ref = w_residue(w, 1.0, 2.0)
            scale = max(abs(ref), (4 / np.pi) * j_scale(w, 1.0, 2.0))
            assert abs(pv_W(p, w) - ref) <= 1e-8 * scale

    def test_w_tail_sum_rule(self):
        # 1/(w^2 - x^2) -> +1/w^2 under the integral: w^2 W -> +1, with the
        # finite-frequency correction shrinking as the evaluation point grows
        p = problem(gp=0.7)
        for w, tol in ((200.0, 1e-4), (2000.0, 1e-6)):
            assert w * w * pv_W(p, w) == pytest.approx(1.0, abs=tol)

    def test_w_dimensional_scaling(self):
        # W picks up 1/lambda^2 under a global frequency rescale
        lam = 2.0
        base = problem(gp=0.5, ck=1.0)
        scaled = DualLossProblem(LorentzMedium(lam, lam * 0.5, lam * 1.0),
                                 lam * 0.5, lam * 1.0)
        for w in (0.7, 1.6):
            assert pv_W(scaled, lam * w) == pytest.approx(
                pv_W(base, w) / lam**2, rel=1e-9)

    def test_z_small_frequency_prefactor(self):
        medium = LorentzMedium(1.0, 0.5, 0.5)
        assert abs(pv_Z(medium, 1e-4)) <= 1e-7

    def test_z_partial_fraction_identity(self):
        # Z(w) = 1 - P int x |zeta|^2 / (x^2 - w^2) dx, two quadrature routes
        medium = LorentzMedium(1.0, 0.5, 0.8)
        from vacuum_census.quadrature import (integrate_adaptive,
                                              integrate_principal_value)
        gl = medium.gamma_L
        for w in (0.6, 1.4):
            direct = pv_Z(medium, w)

            def f(x):
                return x * zeta_density(medium, x) / (x * x - w * w)

            cut = 40.0
            spec = IntegrationSpec(breakpoints=(0.5, 1.0, 1.5),
                                   tail_cut=cut, rel_tol=1e-11,
                                   abs_tol=1e-13)
            pv, _ = integrate_principal_value(f, w, 1e-12, cut, spec)

            def mapped(t):
                return f(cut / t) * cut / t**2

            tail, _ = integrate_adaptive(mapped, 0.0, 1.0, spec)
            assert direct == pytest.approx(1.0 - (pv + tail), abs=1e-8)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            pv_W(problem(), -1.0)
        with pytest.raises(Exception):
            pv_Z(LorentzMedium(1.0, 0.5, 0.0), 1.0)


class TestModeFunctions:
    def test_consistency_invariant(self):
        p = problem()
        rng = np.random.default_rng(11)
        g = p.medium.omega_c**2
        for w in rng.uniform(0.05, 5.0, 100):
            try:
                sol = solve_mode_functions(p, w)
            except SingularSystemError:
                continue
            assert g * sol.G_plus * sol.F_plus == pytest.approx(1.0, abs=1e-10)
            assert g * sol.G_minus * sol.F_minus == pytest.approx(1.0, abs=1e-10)

    def test_normalization_relations(self):
        p = problem(wc=0.4, gl=0.8, gp=1.2, ck=0.9)
        g = p.medium.omega_c**2
        pi2 = np.pi**2
        rng = np.random.default_rng(12)
        for w in rng.uniform(0.1, 4.0, 60):
            try:
                sol = solve_mode_functions(p, w)
            except SingularSystemError:
                continue
            a = zeta_density(p.medium, w)
            b = chi_density(p.k_c, p.gamma_P, w)
            diag_p = (g * b * pi2 * sol.F_plus**2
                      + a * (pi2 + sol.s_x_plus**2)) * g * sol.K_plus_sq
            diag_m = (g * b * (pi2 + sol.s_w_minus**2) * sol.F_minus**2
                      + a * (pi2 + sol.s_x_minus**2)) * g * sol.K_minus_sq
            cross = (g * b * pi2 * sol.F_plus * sol.F_minus
                     + a * (pi2 + sol.s_x_plus * sol.s_x_minus)) \
                * g * np.sqrt(sol.K_plus_sq * sol.K_minus_sq)
            assert diag_p == pytest.approx(1.0, abs=1e-8)
            assert diag_m == pytest.approx(1.0, abs=1e-8)
            assert abs(cross) <= 1e-8

    def test_k_squared_nonnegative(self):
        p = problem(wc=1.0, gl=1.5, gp=0.3, ck=1.4)
        rng = np.random.default_rng(13)
        for w in rng.uniform(0.05, 5.0, 50):
            try:
                sol = solve_mode_functions(p, w)
            except SingularSystemError:
                continue
            assert sol.K_plus_sq >= 0
            assert sol.K_minus_sq >= 0

    def test_gauge_pole_raises(self):
        # W vanishes at the photon resonance center by antisymmetry
        with pytest.raises(SingularSystemError):
            solve_mode_functions(problem(gp=0.5, ck=1.0), 1.0)

    def test_weight_finite_through_gauge_pole(self):
        # the population integrand built from stable algebra stays smooth
        # where the explicit solver is singular
        p = problem()
        g = p.medium.omega_c**2

        def weight(w):
            a = zeta_density(p.medium, w)
            b = chi_density(p.k_c, p.gamma_P, w)
            z = pv_Z(p.medium, w)
            wv = pv_W(p, w)
            return mode_weight_from_parts(a, b, z, wv, g)

        vals = [weight(w) for w in (0.98, 0.999, 1.0, 1.001, 1.02)]
        assert all(np.isfinite(v) and v > 0 for v in vals)
        spread = max(vals) / min(vals)
        assert spread < 1.5

    def test_weight_matches_solver(self):
        p = problem(wc=0.6, gl=1.1, gp=0.9, ck=1.2)
        g = p.medium.omega_c**2
        for w in (0.4, 0.8, 1.5, 2.5):
            sol = solve_mode_functions(p, w)
            direct = (sol.F_plus**2 * sol.K_plus_sq
                      + sol.F_minus**2 * sol.K_minus_sq)
            a = zeta_density(p.medium, w)
            b = chi_density(p.k_c, p.gamma_P, w)
            packed = mode_weight_from_parts(a, b, pv_Z(p.medium, w),
                                            pv_W(p, w), g)
            assert packed == pytest.approx(direct, rel=1e-9)


class TestPopulation:
    def test_vanishing_photon_loss_limit(self):
        res = nk_dual_loss(problem(gp=1e-4), tol=1e-5)
        single = nk_quadrature(LorentzMedium(1.0, 0.5, 1.0), 1.0, tol=1e-9)
        assert abs(res.n_k - single.n_k) <= 0.01 * single.n_k

    def test_both_channels_overdamped(self):
        res = nk_dual_loss(problem(gl=2.0, gp=2.0), tol=1e-4)
        lossless = nk_lossless(LorentzMedium(1.0, 0.5, 0.0), 1.0)
        assert 0.4 <= res.n_k / lossless <= 0.6

    def test_total_linewidth_collapse(self):
        vals = []
        for gl in (0.25, 0.5, 1.0, 1.5, 1.75):
            vals.append(nk_dual_loss(problem(gl=gl, gp=2.0 - gl),
                                     tol=1e-4).n_k)
        assert max(vals) / min(vals) <= 1.10

    def test_error_estimate_contract(self):
        res = nk_dual_loss(problem(), tol=1e-4)
        assert res.est_error <= 1e-4 * res.n_k
        assert res.method == "dual_loss"
        assert res.e_k == res.k_c * res.n_k

    def test_zero_coupling(self):
        p = DualLossProblem(LorentzMedium(1.0, 0.0, 1.0), 0.5, 1.0)
        assert nk_dual_loss(p, tol=1e-4).n_k == 0.0

    def test_tolerance_domain(self):
        with pytest.raises(DomainError):
            nk_dual_loss(problem(), tol=1e-2)

    def test_monotone_in_each_loss(self):
        # coarse corner of the loss plane; quadrature noise tolerance 1e-3
        gammas = (0.25, 0.75, 1.5, 2.0)
        table = {}
        for gl in gammas:
            for gp in gammas:
                table[gl, gp] = nk_dual_loss(problem(gl=gl, gp=gp),
                                             tol=1e-5).n_k
        for gl in gammas:
            for g1, g2 in zip(gammas, gammas[1:]):
                assert table[gl, g2] <= table[gl, g1] * (1 + 1e-3)
                assert table[g2, gl] <= table[g1, gl] * (1 + 1e-3)

    def test_determinism(self):
        a = nk_dual_loss(problem(), tol=1e-4)
        b = nk_dual_loss(problem(), tol=1e-4)
        assert a.n_k == b.n_k
