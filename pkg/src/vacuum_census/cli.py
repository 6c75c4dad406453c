"""Batch command-line front end: point queries, sweeps, figure datasets.

All frequencies on the command line are in units of omega0 (the tool pins
omega0 = 1). CSV outputs are UTF-8 with '#'-prefixed metadata lines, one
column-name row, 17-significant-digit floats, complex values as _re/_im
column pairs, and companion status / est_error columns for every computed
quantity. Exit codes: 0 success, 2 usage or validation error, 3 computation
error (machine-readable JSON on stderr).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dielectric import LorentzMedium, eval_eps
from .dispersion import classify_regime, find_roots, trajectory_sweep
from .dual_loss import DualLossProblem, nk_dual_loss
from .errors import DomainError, VacuumCensusError
from .hopfield import nk_lossless
from .population import (PopulationResult, e_max, nk_asymptote,
                         nk_closed_form, nk_quadrature)

USAGE_EXIT = 2
COMPUTE_EXIT = 3

_FIGURES = ("fig1", "fig2", "fig3", "suppfig1")
_GAMMA_SET = (0.0, 0.5, 1.0, 1.5, 2.0)
_QUANTITIES = ("eps", "roots", "nk", "nk_dual", "ek")
_METHODS = ("auto", "closed_form", "quadrature", "hopfield", "dual_loss")
_AXIS_NAMES = ("omega_c", "gamma_L", "gamma_P", "ck", "omega")


def _fmt(x):
    return "%.17g" % float(x)


def write_csv(path, metadata, header, rows):
    """CSV with '#'-prefixed metadata, one header row, %.17g floats."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, val in metadata.items():
            fh.write(f"# {key} = {val}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [c if isinstance(c, str) else _fmt(c) for c in row]
            fh.write(",".join(cells) + "\n")


def _nk_point(omega_c, gamma_L, ck, gamma_P=None, method="auto", tol=None):
    """Dispatch one population evaluation; returns a PopulationResult."""
    if method == "auto":
        if gamma_P is not None:
            method = "dual_loss"
        elif gamma_L == 0 or omega_c == 0:
            method = "hopfield"
        else:
            method = "closed_form"
    if omega_c == 0:
        return PopulationResult(k_c=ck, n_k=0.0, method="hopfield_lossless",
                                est_error=0.0)
    medium = LorentzMedium(1.0, omega_c, gamma_L)
    if method == "hopfield":
        n = nk_lossless(medium, ck)
        return PopulationResult(k_c=ck, n_k=n, method="hopfield_lossless",
                                est_error=1e-10 * n)
    if method == "closed_form":
        return nk_closed_form(medium, ck)
    if method == "quadrature":
        return nk_quadrature(medium, ck, tol=tol or 1e-8)
    if method == "dual_loss":
        if gamma_P is None:
            raise DomainError("dual_loss needs --gp")
        problem = DualLossProblem(medium, gamma_P, ck)
        return nk_dual_loss(problem, tol=tol or 1e-4)
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------- sweeps

_AXIS_KEYS = {"name", "min", "max", "count", "scale"}
_SPEC_KEYS = {"quantity", "fixed", "axes", "method", "tol"}
_FIXED_KEYS = {"omega_c", "gamma_L", "gamma_P", "ck", "omega"}

_RANGES = {
    "omega_c": (0.0, np.inf, True),
    "gamma_L": (0.0, 2.0, True),
    "gamma_P": (0.0, 2.0, False),
    "ck": (0.0, np.inf, False),
    "omega": (0.0, np.inf, False),
}


class SpecError(DomainError):
    """Sweep-spec validation failure; message carries the field path."""


def _check_range(name, value, path):
    lo, hi, closed_lo = _RANGES[name]
    ok = (value >= lo if closed_lo else value > lo) and value <= hi
    if not ok:
        bracket = "[" if closed_lo else "("
        raise SpecError(f"{path}: {name} = {value} outside {bracket}{lo}, {hi}]")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    min: float
    max: float
    count: int
    scale: str = "linear"

    def values(self):
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Validated parameter-sweep description (parsed from JSON)."""

    quantity: str
    fixed: dict
    axes: tuple
    method: str = "auto"
    tol: float = None

    @classmethod
    def from_json(cls, payload):
        if not isinstance(payload, dict):
            raise SpecError("spec root must be an object")
        unknown = set(payload) - _SPEC_KEYS
        if unknown:
            raise SpecError(f"unknown keys {sorted(unknown)}")
        quantity = payload.get("quantity")
        if quantity not in _QUANTITIES:
            raise SpecError(f"quantity: must be one of {_QUANTITIES}")
        method = payload.get("method", "auto")
        if method not in _METHODS:
            raise SpecError(f"method: must be one of {_METHODS}")
        tol = payload.get("tol")
        if tol is not None and not (isinstance(tol, (int, float)) and tol > 0):
            raise SpecError(f"tol: must be a positive number, got {tol!r}")

        fixed = payload.get("fixed", {})
        if not isinstance(fixed, dict):
            raise SpecError("fixed: must be an object")
        for key, val in fixed.items():
            if key not in _FIXED_KEYS:
                raise SpecError(f"fixed.{key}: unknown parameter")
            if not isinstance(val, (int, float)):
                raise SpecError(f"fixed.{key}: must be a number")
            _check_range(key, float(val), f"fixed.{key}")

        raw_axes = payload.get("axes")
        if not isinstance(raw_axes, list) or not 1 <= len(raw_axes) <= 2:
            raise SpecError("axes: need a list of 1 or 2 axis objects")
        axes = []
        for i, ax in enumerate(raw_axes):
            path = f"axes[{i}]"
            if not isinstance(ax, dict):
                raise SpecError(f"{path}: must be an object")
            unknown = set(ax) - _AXIS_KEYS
            if unknown:
                raise SpecError(f"{path}: unknown keys {sorted(unknown)}")
            name = ax.get("name")
            if name not in _AXIS_NAMES:
                raise SpecError(f"{path}.name: must be one of {_AXIS_NAMES}")
            if name in fixed:
                raise SpecError(f"{path}.name: {name} is also in fixed")
            try:
                lo, hi = float(ax["min"]), float(ax["max"])
                count = int(ax["count"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecError(f"{path}: needs numeric min/max/count "
                                f"({exc})") from None
            scale = ax.get("scale", "linear")
            if scale not in ("linear", "log"):
                raise SpecError(f"{path}.scale: must be linear or log")
            if count < 2:
                raise SpecError(f"{path}.count: must be >= 2, got {count}")
            if not lo < hi:
                raise SpecError(f"{path}: need min < max")
            if scale == "log" and lo <= 0:
                raise SpecError(f"{path}: log scale needs min > 0")
            _check_range(name, lo, f"{path}.min")
            _check_range(name, hi, f"{path}.max")
            axes.append(SweepAxis(name, lo, hi, count, scale))

        spec = cls(quantity=quantity, fixed=dict(fixed), axes=tuple(axes),
                   method=method, tol=tol)
        spec._require_params()
        return spec

    def _require_params(self):
        have = set(self.fixed) | {ax.name for ax in self.axes}
        need = {"eps": {"omega_c", "gamma_L", "omega"},
                "roots": {"omega_c", "gamma_L", "ck"},
                "nk": {"omega_c", "gamma_L", "ck"},
                "ek": {"omega_c", "gamma_L", "ck"},
                "nk_dual": {"omega_c", "gamma_L", "gamma_P", "ck"}}[self.quantity]
        missing = need - have
        if missing:
            raise SpecError(f"quantity {self.quantity}: missing parameters "
                            f"{sorted(missing)}")
        extra = have - need
        if extra:
            raise SpecError(f"quantity {self.quantity}: parameters "
                            f"{sorted(extra)} are not used")


@dataclass
class SweepTable:
    """Assembled sweep output: metadata echo plus row-major result rows."""

    metadata: dict
    header: list
    rows: list = field(default_factory=list)

    def write(self, prefix):
        csv_path = prefix + ".csv"
        meta_path = prefix + ".meta.json"
        write_csv(csv_path, self.metadata, self.header, self.rows)
        with open(meta_path, "w", encoding="utf-8") as fh:
            json.dump({**self.metadata, "rows": len(self.rows),
                       "csv": os.path.basename(csv_path)}, fh, indent=2,
                      sort_keys=True)
            fh.write("\n")
        return csv_path, meta_path


def _sweep_row(spec: SweepSpec, params):
    """Evaluate one grid point; returns output cells (no input columns)."""
    p = dict(spec.fixed)
    p.update(params)
    if spec.quantity == "eps":
        medium = LorentzMedium(1.0, p["omega_c"], p["gamma_L"])
        val = eval_eps(medium, p["omega"])
        return [val.real, val.imag, 0.0, "ok"]
    if spec.quantity == "roots":
        medium = LorentzMedium(1.0, p["omega_c"], p["gamma_L"])
        disp = find_roots(medium, p["ck"])
        return [disp.roots[0].real, disp.roots[0].imag,
                disp.roots[1].real, disp.roots[1].imag,
                disp.derivs[0].real, disp.derivs[0].imag,
                disp.derivs[1].real, disp.derivs[1].imag,
                disp.regime, str(disp.ultrastrong).lower(),
                str(disp.degenerate).lower(), 0.0, "ok"]
    method = spec.method
    if spec.quantity == "nk_dual" and method == "auto":
        method = "dual_loss"
    gamma_P = p.get("gamma_P")
    res = _nk_point(p["omega_c"], p["gamma_L"], p["ck"], gamma_P=gamma_P,
                    method=method, tol=spec.tol)
    return [res.n_k, res.e_k, res.est_error, res.method, "ok"]


_ROW_HEADERS = {
    "eps": ["eps_re", "eps_im", "est_error", "status"],
    "roots": ["root1_re", "root1_im", "root2_re", "root2_im",
              "deriv1_re", "deriv1_im", "deriv2_re", "deriv2_im",
              "regime", "ultrastrong", "degenerate", "est_error", "status"],
    "nk": ["n_k", "e_k", "est_error", "method", "status"],
    "ek": ["n_k", "e_k", "est_error", "method", "status"],
    "nk_dual": ["n_k", "e_k", "est_error", "method", "status"],
}


def run_sweep(spec: SweepSpec, jobs=1) -> SweepTable:
    """Evaluate the grid row-major; failures become status rows, never aborts."""
    axes_values = [ax.values() for ax in spec.axes]
    if len(axes_values) == 1:
        grid = [(i,) for i in range(len(axes_values[0]))]
    else:
        grid = [(i, j) for i in range(len(axes_values[0]))
                for j in range(len(axes_values[1]))]

    out_header = _ROW_HEADERS[spec.quantity]
    pad = len(out_header)

    def one(point):
        params = {spec.axes[d].name: float(axes_values[d][point[d]])
                  for d in range(len(point))}
        inputs = [params[ax.name] for ax in spec.axes]
        try:
            cells = _sweep_row(spec, params)
        except VacuumCensusError as exc:
            cells = [""] * (pad - 1) + [f"error:{type(exc).__name__}"]
        return inputs + cells

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, grid))
    else:
        rows = [one(point) for point in grid]

    meta = {
        "tool": "vacuum-census",
        "version": __version__,
        "quantity": spec.quantity,
        "method": spec.method,
        "tol": spec.tol if spec.tol is not None else "default",
        "omega0": 1.0,
        "fixed": json.dumps(spec.fixed, sort_keys=True),
        "axes": json.dumps([ax.__dict__ for ax in spec.axes]),
    }
    header = [ax.name for ax in spec.axes] + out_header
    return SweepTable(metadata=meta, header=header, rows=rows)


# ---------------------------------------------------------------- figures

def _figure_meta(name, **extra):
    meta = {"tool": "vacuum-census", "version": __version__,
            "figure": name, "omega0": 1.0}
    meta.update(extra)
    return meta


def figure_fig1(outdir, n_disp=200, n_traj=201):
    """Polariton branch dispersions over ck in [0.1, 3] (log grid) for the
    five-linewidth set at omega_c = 0.5, plus the complex-plane trajectories
    against gamma_L at resonance ck = 1."""
    paths = []
    rows = []
    ck_grid = np.geomspace(0.1, 3.0, n_disp)
    for gl in _GAMMA_SET:
        medium = LorentzMedium(1.0, 0.5, gl)
        sweep = trajectory_sweep(medium, None, "k_c", ck_grid)
        for ck, disp in zip(ck_grid, sweep):
            rows.append([gl, ck,
                         disp.roots[0].real, disp.roots[0].imag,
                         disp.roots[1].real, disp.roots[1].imag,
                         0.0, "ok"])
    path = os.path.join(outdir, "fig1_dispersion.csv")
    write_csv(path, _figure_meta("fig1", panel="dispersion", omega_c=0.5,
                                 gamma_set=list(_GAMMA_SET),
                                 ck_grid=f"log[0.1,3]x{n_disp}"),
              ["gamma_L", "ck", "branch1_re", "branch1_im",
               "branch2_re", "branch2_im", "est_error", "status"], rows)
    paths.append(path)

    rows = []
    gl_grid = np.linspace(0.0, 2.0, n_traj)
    medium = LorentzMedium(1.0, 0.5, 0.0)
    sweep = trajectory_sweep(medium, 1.0, "gamma_l", gl_grid)
    for gl, disp in zip(gl_grid, sweep):
        marker = "marker" if min(abs(gl - m) for m in _GAMMA_SET) < 1e-12 else ""
        rows.append([gl,
                     disp.roots[0].real, disp.roots[0].imag,
                     disp.roots[1].real, disp.roots[1].imag,
                     marker, 0.0, "ok"])
    path = os.path.join(outdir, "fig1_trajectories.csv")
    write_csv(path, _figure_meta("fig1", panel="trajectories", omega_c=0.5,
                                 ck=1.0, gamma_grid=f"linear[0,2]x{n_traj}"),
              ["gamma_L", "branch1_re", "branch1_im", "branch2_re",
               "branch2_im", "marker", "est_error", "status"], rows)
    paths.append(path)
    return paths


def figure_fig2(outdir, n_pop=101, n_traj=201, jobs=1):
    """Population against coupling at resonance for the linewidth set, plus
    eigenfrequency trajectories against omega_c at gamma_L = 1."""
    paths = []
    wc_grid = np.linspace(0.0, 1.0, n_pop)

    def pop_row(args):
        gl, wc = args
        try:
            res = _nk_point(wc, gl, 1.0)
            return [gl, wc, res.n_k, res.est_error, res.method, "ok"]
        except VacuumCensusError as exc:
            return [gl, wc, "", "", "", f"error:{type(exc).__name__}"]

    tasks = [(gl, wc) for gl in _GAMMA_SET for wc in wc_grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(pop_row, tasks))
    else:
        rows = [pop_row(t) for t in tasks]
    path = os.path.join(outdir, "fig2_population.csv")
    write_csv(path, _figure_meta("fig2", panel="population", ck=1.0,
                                 gamma_set=list(_GAMMA_SET),
                                 omega_c_grid=f"linear[0,1]x{n_pop}"),
              ["gamma_L", "omega_c", "n_k", "est_error", "method", "status"],
              rows)
    paths.append(path)

    rows = []
    wc_traj = np.linspace(0.005, 1.0, n_traj)
    medium = LorentzMedium(1.0, 0.5, 1.0)
    sweep = trajectory_sweep(medium, 1.0, "omega_c", wc_traj)
    for wc, disp in zip(wc_traj, sweep):
        rows.append([wc,
                     disp.roots[0].real, disp.roots[0].imag,
                     disp.roots[1].real, disp.roots[1].imag,
                     0.0, "ok"])
    path = os.path.join(outdir, "fig2_trajectories.csv")
    write_csv(path, _figure_meta("fig2", panel="trajectories", ck=1.0,
                                 gamma_L=1.0,
                                 omega_c_grid=f"linear[0.005,1]x{n_traj}"),
              ["omega_c", "branch1_re", "branch1_im", "branch2_re",
               "branch2_im", "est_error", "status"], rows)
    paths.append(path)
    return paths


def figure_fig3(outdir, n_k=81, jobs=1):
    """Population and per-mode energy over four decades of ck for the
    linewidth set at omega_c = 0.5, plus both asymptotic laws."""
    paths = []
    ck_grid = np.geomspace(1e-2, 1e2, n_k)

    def pop_row(args):
        gl, ck = args
        try:
            res = _nk_point(0.5, gl, ck)
            return [gl, ck, res.n_k, res.e_k, res.est_error, res.method, "ok"]
        except VacuumCensusError as exc:
            return [gl, ck, "", "", "", "", f"error:{type(exc).__name__}"]

    tasks = [(gl, ck) for gl in _GAMMA_SET for ck in ck_grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(pop_row, tasks))
    else:
        rows = [pop_row(t) for t in tasks]
    path = os.path.join(outdir, "fig3_population.csv")
    write_csv(path, _figure_meta("fig3", panel="population", omega_c=0.5,
                                 gamma_set=list(_GAMMA_SET),
                                 ck_grid=f"log[1e-2,1e2]x{n_k}"),
              ["gamma_L", "ck", "n_k", "e_k", "est_error", "method",
               "status"], rows)
    paths.append(path)

    medium = LorentzMedium(1.0, 0.5, 0.0)
    rows = []
    for ck in ck_grid:
        small = nk_asymptote(medium, ck, "small_k")
        large = nk_asymptote(medium, ck, "large_k")
        rows.append([ck, small, large, ck * small, ck * large, 0.0, "ok"])
    path = os.path.join(outdir, "fig3_asymptotes.csv")
    write_csv(path, _figure_meta("fig3", panel="asymptotes", omega_c=0.5,
                                 e_max=e_max(medium),
                                 ck_grid=f"log[1e-2,1e2]x{n_k}"),
              ["ck", "nk_small_k", "nk_large_k", "ek_small_k", "ek_large_k",
               "est_error", "status"], rows)
    paths.append(path)
    return paths


def figure_suppfig1(outdir, grid_n=21, wc_values=(0.25, 0.5, 0.75, 1.0),
                    tol=1e-4, jobs=1):
    """Dual-loss population on the (gamma_L, gamma_P) plane at resonance for
    several couplings."""
    gammas = np.linspace(0.05, 2.0, grid_n)

    def one(args):
        wc, gl, gp = args
        try:
            problem = DualLossProblem(LorentzMedium(1.0, wc, gl), gp, 1.0)
            res = nk_dual_loss(problem, tol=tol)
            return [wc, gl, gp, res.n_k, res.est_error, "ok"]
        except VacuumCensusError as exc:
            return [wc, gl, gp, "", "", f"error:{type(exc).__name__}"]

    tasks = [(wc, gl, gp) for wc in wc_values for gl in gammas
             for gp in gammas]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, tasks))
    else:
        rows = [one(t) for t in tasks]
    path = os.path.join(outdir, "suppfig1_heatmap.csv")
    write_csv(path, _figure_meta("suppfig1", ck=1.0, tol=tol,
                                 omega_c_values=list(wc_values),
                                 gamma_grid=f"linear[0.05,2]x{grid_n}"),
              ["omega_c", "gamma_L", "gamma_P", "n_k", "est_error",
               "status"], rows)
    return [path]


# ---------------------------------------------------------------- commands

def _add_medium_args(p, gp=False):
    p.add_argument("--wc", type=float, required=True,
                   help="coupling omega_c / omega0")
    p.add_argument("--gl", type=float, required=True,
                   help="matter linewidth gamma_L / omega0")
    if gp:
        p.add_argument("--gp", type=float, default=None,
                       help="photon linewidth gamma_P / omega0")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vacuum-census",
        description="Ground-state virtual photons of a lossy coupled "
                    "light-matter system (omega0 = 1).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eps", help="evaluate the dielectric function")
    _add_medium_args(p)
    p.add_argument("--w", type=float, required=True, help="Re omega / omega0")
    p.add_argument("--wim", type=float, default=0.0, help="Im omega / omega0")

    p = sub.add_parser("roots", help="complex dispersion roots at one ck")
    _add_medium_args(p)
    p.add_argument("--ck", type=float, required=True)

    p = sub.add_parser("nk", help="ground-state virtual photon number")
    _add_medium_args(p, gp=True)
    p.add_argument("--ck", type=float, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--method", choices=_METHODS, default="auto")
    p.add_argument("--verify", action="store_true",
                   help="cross-check closed form against quadrature")

    p = sub.add_parser("sweep", help="run a JSON-specified parameter sweep")
    p.add_argument("--spec", required=True, help="sweep spec JSON file")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("figure", help="emit a figure dataset as CSV")
    p.add_argument("--name", choices=_FIGURES, required=True)
    p.add_argument("--outdir", required=True)
    p.add_argument("--tol", type=float, default=1e-4,
                   help="dual-loss tolerance (suppfig1)")
    p.add_argument("--jobs", type=int, default=None)
    return parser


def _default_jobs(requested):
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("VACUUM_CENSUS_JOBS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"VACUUM_CENSUS_JOBS = {env!r} is not an integer")
    return 1


def _validate_cli_params(parser, args):
    checks = [("wc", "omega_c", getattr(args, "wc", None)),
              ("gl", "gamma_L", getattr(args, "gl", None)),
              ("gp", "gamma_P", getattr(args, "gp", None)),
              ("ck", "ck", getattr(args, "ck", None))]
    for flag, name, value in checks:
        if value is None:
            continue
        try:
            _check_range(name, value, f"--{flag}")
        except SpecError as exc:
            parser.error(str(exc))


def cmd_eps(args):
    medium = LorentzMedium(1.0, args.wc, args.gl)
    z = complex(args.w, args.wim)
    val = eval_eps(medium, z)
    print(f"eps({z.real:g}{z.imag:+g}j) = {val.real:.17g} {val.imag:+.17g}j")
    return 0


def cmd_roots(args):
    medium = LorentzMedium(1.0, args.wc, args.gl)
    disp = find_roots(medium, args.ck)
    regime = classify_regime(medium)
    for i, (z, d) in enumerate(zip(disp.roots, disp.derivs), 1):
        print(f"root{i}  = {z.real:.17g} {z.imag:+.17g}j")
        print(f"deriv{i} = {d.real:.17g} {d.imag:+.17g}j")
    print(f"regime = {regime.regime}  ultrastrong = {regime.ultrastrong}  "
          f"degenerate = {disp.degenerate}")
    print(f"sum_rule = {disp.sum_rule_value():.17g}")
    return 0


def cmd_nk(args):
    res = _nk_point(args.wc, args.gl, args.ck, gamma_P=args.gp,
                    method=args.method, tol=args.tol)
    print(f"n_k = {res.n_k:.17g}")
    print(f"e_k = {res.e_k:.17g}")
    print(f"method = {res.method}  est_error = {res.est_error:.3g}")
    if args.verify:
        medium = LorentzMedium(1.0, args.wc, args.gl)
        closed = nk_closed_form(medium, args.ck)
        quad = nk_quadrature(medium, args.ck, tol=args.tol or 1e-8)
        rel = abs(closed.n_k - quad.n_k) / max(quad.n_k, 1e-300)
        print(f"verify: closed_form = {closed.n_k:.17g}")
        print(f"verify: quadrature  = {quad.n_k:.17g}")
        print(f"verify: rel_difference = {rel:.3e}")
        if rel > 1e-4:
            raise VacuumCensusError(
                f"closed form and quadrature disagree: rel = {rel:.3e}")
    return 0


def cmd_sweep(args):
    with open(args.spec, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    spec = SweepSpec.from_json(payload)
    table = run_sweep(spec, jobs=_default_jobs(args.jobs))
    csv_path, meta_path = table.write(args.out)
    print(f"wrote {csv_path} ({len(table.rows)} rows) and {meta_path}")
    return 0


def cmd_figure(args):
    os.makedirs(args.outdir, exist_ok=True)
    jobs = _default_jobs(args.jobs)
    if args.name == "fig1":
        paths = figure_fig1(args.outdir)
    elif args.name == "fig2":
        paths = figure_fig2(args.outdir, jobs=jobs)
    elif args.name == "fig3":
        paths = figure_fig3(args.outdir, jobs=jobs)
    else:
        paths = figure_suppfig1(args.outdir, tol=args.tol, jobs=jobs)
    for p in paths:
        print(f"wrote {p}")
    return 0


_COMMANDS = {"eps": cmd_eps, "roots": cmd_roots, "nk": cmd_nk,
             "sweep": cmd_sweep, "figure": cmd_figure}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("eps", "roots", "nk"):
        _validate_cli_params(parser, args)
    try:
        return _COMMANDS[args.command](args)
    except (SpecError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return USAGE_EXIT
    except (VacuumCensusError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return COMPUTE_EXIT


if __name__ == "__main__":
    sys.exit(main())
