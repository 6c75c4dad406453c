"""Render the four publication figures from vacuum-census CSV datasets.

Inputs must be the CSV files emitted by `vacuum-census figure` (metadata
header with a matching figure id). Rendering is display-only and
deterministic for identical inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FORMATS = ("png", "svg")
FIGURES = ("fig1", "fig2", "fig3", "suppfig1")

# linewidth set -> (color, linestyle, width), matching the reference scheme:
# thin blue, solid cyan, dash-dotted green, dashed magenta, dotted red
STYLE_BY_GAMMA = {
    0.0: ("tab:blue", "-", 0.9),
    0.5: ("c", "-", 1.6),
    1.0: ("g", "-.", 1.6),
    1.5: ("m", "--", 1.6),
    2.0: ("r", ":", 1.8),
}
FALLBACK_STYLE = ("0.4", "-", 1.0)


class ValidationError(Exception):
    """Input CSV does not match the expected figure schema."""


@dataclass(frozen=True)
class FigureJob:
    """One rendering task: figure id, input CSVs, output image path."""

    figure: str
    inputs: tuple
    output: str
    format: str = "png"

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValidationError(f"unknown figure id {self.figure!r}")
        if self.format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}")
        if not self.inputs:
            raise ValidationError("at least one input CSV is required")
        object.__setattr__(self, "inputs", tuple(self.inputs))


@dataclass
class Table:
    """Parsed CSV: metadata dict, column names, string cell rows."""

    path: str
    meta: dict
    header: list
    rows: list = field(default_factory=list)

    def column(self, name, numeric=True):
        if name not in self.header:
            raise ValidationError(f"{self.path}: missing column {name!r}")
        idx = self.header.index(name)
        cells = [row[idx] for row in self.rows]
        if not numeric:
            return cells
        return np.array([float(c) if c else np.nan for c in cells])


def load_table(path):
    meta = {}
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append(line.split(","))
    if header is None:
        raise ValidationError(f"{path}: no column header found")
    return Table(path=path, meta=meta, header=header, rows=rows)


def _check(table, figure, panel=None, columns=()):
    got = table.meta.get("figure")
    if got != figure:
        raise ValidationError(
            f"{table.path}: metadata figure id {got!r} does not match "
            f"requested {figure!r}")
    if panel is not None and table.meta.get("panel") != panel:
        raise ValidationError(
            f"{table.path}: expected panel {panel!r}, "
            f"got {table.meta.get('panel')!r}")
    for name in columns:
        if name not in table.header:
            raise ValidationError(f"{table.path}: missing column {name!r}")
    if not table.rows:
        raise ValidationError(f"{table.path}: no data rows")


def _find_panel(tables, figure, panel, columns):
    for table in tables:
        if table.meta.get("figure") == figure \
                and table.meta.get("panel") == panel:
            _check(table, figure, panel, columns)
            return table
    raise ValidationError(
        f"no input provides panel {panel!r} of {figure!r}")


def _style(gamma):
    return STYLE_BY_GAMMA.get(round(float(gamma), 6), FALLBACK_STYLE)


def _gamma_groups(table, key="gamma_L"):
    gammas = table.column(key)
    for g in sorted(set(np.round(gammas, 12))):
        yield g, gammas == g


def _render_fig1(tables, axes):
    disp = _find_panel(tables, "fig1", "dispersion",
                       ("gamma_L", "ck", "branch1_re", "branch2_re"))
    ck = disp.column("ck")
    b1 = disp.column("branch1_re")
    b2 = disp.column("branch2_re")
    ax = axes[0]
    for g, mask in _gamma_groups(disp):
        color, ls, lw = _style(g)
        ax.plot(ck[mask], b1[mask], color=color, ls=ls, lw=lw,
                label=f"$\\gamma_L = {g:g}\\,\\omega_0$")
        ax.plot(ck[mask], b2[mask], color=color, ls=ls, lw=lw)
    ax.plot(ck, ck, color="0.7", lw=0.6, zorder=0)
    ax.set_xlabel("$ck/\\omega_0$")
    ax.set_ylabel("$\\mathrm{Re}\\,\\Omega/\\omega_0$")
    ax.set_title("polariton branches")
    ax.legend(fontsize=7)

    traj = _find_panel(tables, "fig1", "trajectories",
                       ("gamma_L", "branch1_re", "branch1_im",
                        "branch2_re", "branch2_im", "marker"))
    ax = axes[1]
    for branch in ("branch1", "branch2"):
        ax.plot(traj.column(branch + "_re"), traj.column(branch + "_im"),
                color="k", lw=1.0)
    marker_rows = [i for i, m in enumerate(traj.column("marker",
                                                       numeric=False)) if m]
    for i in marker_rows:
        g = traj.column("gamma_L")[i]
        color, _, _ = _style(g)
        for branch in ("branch1", "branch2"):
            ax.plot(traj.column(branch + "_re")[i],
                    traj.column(branch + "_im")[i],
                    marker="o", ms=5, color=color)
    ax.set_xlabel("$\\mathrm{Re}\\,\\Omega/\\omega_0$")
    ax.set_ylabel("$\\mathrm{Im}\\,\\Omega/\\omega_0$")
    ax.set_title("trajectories vs $\\gamma_L$ at $ck=\\omega_0$")


def _render_fig2(tables, axes):
    pop = _find_panel(tables, "fig2", "population",
                      ("gamma_L", "omega_c", "n_k"))
    wc = pop.column("omega_c")
    nk = pop.column("n_k")
    ax = axes[0]
    for g, mask in _gamma_groups(pop):
        color, ls, lw = _style(g)
        ax.plot(wc[mask], nk[mask], color=color, ls=ls, lw=lw,
                label=f"$\\gamma_L = {g:g}\\,\\omega_0$")
    ax.set_xlabel("$\\omega_c/\\omega_0$")
    ax.set_ylabel("$N_k$")
    ax.set_title("population at $ck=\\omega_0$")
    ax.legend(fontsize=7)

    traj = _find_panel(tables, "fig2", "trajectories",
                       ("omega_c", "branch1_re", "branch1_im",
                        "branch2_re", "branch2_im"))
    ax = axes[1]
    for branch in ("branch1", "branch2"):
        ax.plot(traj.column(branch + "_re"), traj.column(branch + "_im"),
                color="k", lw=1.0)
    ax.set_xlabel("$\\mathrm{Re}\\,\\Omega/\\omega_0$")
    ax.set_ylabel("$\\mathrm{Im}\\,\\Omega/\\omega_0$")
    ax.set_title("trajectories vs $\\omega_c$ at $\\gamma_L=\\omega_0$")


def _render_fig3(tables, axes):
    pop = _find_panel(tables, "fig3", "population",
                      ("gamma_L", "ck", "n_k", "e_k"))
    asym = _find_panel(tables, "fig3", "asymptotes",
                       ("ck", "nk_small_k", "nk_large_k",
                        "ek_small_k", "ek_large_k"))
    ck = pop.column("ck")
    ck_a = asym.column("ck")
    for ax, col, acols, label in (
            (axes[0], "n_k", ("nk_small_k", "nk_large_k"), "$N_k$"),
            (axes[1], "e_k", ("ek_small_k", "ek_large_k"),
             "$E_k/\\hbar\\omega_0$")):
        vals = pop.column(col)
        for g, mask in _gamma_groups(pop):
            color, ls, lw = _style(g)
            ax.plot(ck[mask], vals[mask], color=color, ls=ls, lw=lw,
                    label=f"$\\gamma_L = {g:g}\\,\\omega_0$")
        ax.plot(ck_a, asym.column(acols[0]), "k--", lw=1.0)
        ax.plot(ck_a, asym.column(acols[1]), "k-.", lw=1.0)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_ylim(np.nanmin(vals) * 0.5, np.nanmax(vals) * 2)
        ax.set_xlabel("$ck/\\omega_0$")
        ax.set_ylabel(label)
    axes[0].legend(fontsize=7)
    axes[0].set_title("population")
    axes[1].set_title("energy per mode")


def _render_suppfig1(tables, axes):
    heat = _find_panel(tables, "suppfig1", None,
                       ("omega_c", "gamma_L", "gamma_P", "n_k"))
    wc_all = heat.column("omega_c")
    gl_all = heat.column("gamma_L")
    gp_all = heat.column("gamma_P")
    nk_all = heat.column("n_k")
    wc_values = sorted(set(np.round(wc_all, 12)))
    if len(wc_values) != len(axes):
        raise ValidationError(
            f"{heat.path}: expected {len(axes)} coupling values, "
            f"got {len(wc_values)}")
    for ax, wc in zip(axes, wc_values):
        mask = wc_all == wc
        gl = np.array(sorted(set(gl_all[mask])))
        gp = np.array(sorted(set(gp_all[mask])))
        grid = np.full((len(gp), len(gl)), np.nan)
        li = {v: i for i, v in enumerate(gl)}
        pi = {v: i for i, v in enumerate(gp)}
        for l_, p_, n_ in zip(gl_all[mask], gp_all[mask], nk_all[mask]):
            grid[pi[p_], li[l_]] = n_
        mesh = ax.pcolormesh(gl, gp, grid, shading="nearest",
                             cmap="viridis")
        ax.figure.colorbar(mesh, ax=ax, label="$N_k$")
        ax.set_xlabel("$\\gamma_L/\\omega_0$")
        ax.set_ylabel("$\\gamma_P/\\omega_0$")
        ax.set_title(f"$\\omega_c = {wc:g}\\,\\omega_0$")


def render(job: FigureJob):
    """Produce the figure image for a job. Raises ValidationError before
    any file is written when the inputs do not match the schema."""
    tables = [load_table(path) for path in job.inputs]
    for table in tables:
        _check(table, job.figure)

    if job.figure == "suppfig1":
        fig, axes = plt.subplots(2, 2, figsize=(9, 7.5))
        axes = axes.ravel()
        _render_suppfig1(tables, axes)
    else:
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
        if job.figure == "fig1":
            _render_fig1(tables, axes)
        elif job.figure == "fig2":
            _render_fig2(tables, axes)
        else:
            _render_fig3(tables, axes)
    fig.tight_layout()
    metadata = {"Date": None} if job.format == "svg" else {}
    try:
        fig.savefig(job.output, format=job.format, dpi=150,
                    metadata=metadata)
    finally:
        plt.close(fig)
    return job.output
