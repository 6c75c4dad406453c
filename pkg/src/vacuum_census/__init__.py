"""Ground-state virtual-photon populations of lossy ultrastrongly coupled
light-matter systems.

The package computes the photon number carried by the interacting ground
state of a Lorentz medium coupled to light, for arbitrary matter and photon
losses: complex dispersion roots and their contour-sum closed form, a direct
quadrature oracle, the lossless Bogoliubov cross-check, asymptotic laws, and
the two-continua machinery for simultaneous loss channels.

Units: c = hbar = 1; every frequency-like input shares one arbitrary unit
and wavevectors enter as c*k.
"""
from .dielectric import (LorentzMedium, MicroscopicCoupling, chi_density,
                         eval_eps, eval_eps_z2_derivative,
                         gamma_from_microscopic, q_from_gamma, zeta_density)
from .dispersion import (DispersionRoots, RegimeClassification,
                         classify_regime, find_roots, trajectory_sweep)
from .dual_loss import (DualLossProblem, ModeFunctionSolution, active_backend,
                        nk_dual_loss, pv_W, pv_Z, solve_mode_functions)
from .hopfield import (HopfieldMode, coefficients, eigenfrequencies,
                       nk_lossless)
from .population import (PopulationResult, e_max, nk_asymptote,
                         nk_closed_form, nk_quadrature,
                         validate_prefactor_sign)
from .quadrature import (IntegrationSpec, integrate_adaptive,
                         integrate_principal_value, integrate_semi_infinite)

__version__ = "0.1.0"

__all__ = [
    "LorentzMedium", "MicroscopicCoupling", "eval_eps",
    "eval_eps_z2_derivative", "zeta_density", "chi_density",
    "gamma_from_microscopic", "q_from_gamma",
    "DispersionRoots", "RegimeClassification", "find_roots",
    "classify_regime", "trajectory_sweep",
    "HopfieldMode", "eigenfrequencies", "coefficients", "nk_lossless",
    "PopulationResult", "nk_quadrature", "nk_closed_form", "nk_asymptote",
    "e_max", "validate_prefactor_sign",
    "DualLossProblem", "ModeFunctionSolution", "pv_W", "pv_Z",
    "solve_mode_functions", "nk_dual_loss", "active_backend",
    "IntegrationSpec", "integrate_adaptive", "integrate_semi_infinite",
    "integrate_principal_value",
    "__version__",
]
