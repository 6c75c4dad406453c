"""Rendering from golden CSVs; schema violations must fail cleanly."""
import os
import shutil

import pytest

from vc_plots.cli import main
from vc_plots.figures import FigureJob, ValidationError, load_table, render

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "golden")

FIGURE_INPUTS = {
    "fig1": ("fig1_dispersion.csv", "fig1_trajectories.csv"),
    "fig2": ("fig2_population.csv", "fig2_trajectories.csv"),
    "fig3": ("fig3_population.csv", "fig3_asymptotes.csv"),
    "suppfig1": ("suppfig1_heatmap.csv",),
}


def golden(*names):
    return [os.path.join(GOLDEN, n) for n in names]


class TestRenderGolden:
    @pytest.mark.parametrize("figure", sorted(FIGURE_INPUTS))
    def test_png_from_golden(self, figure, tmp_path, capsys):
        out = tmp_path / f"{figure}.png"
        code = main(["--figure", figure,
                     "--in", *golden(*FIGURE_INPUTS[figure]),
                     "--out", str(out)])
        capsys.readouterr()
        assert code == 0
        assert out.exists() and out.stat().st_size > 5000

    def test_svg_format(self, tmp_path, capsys):
        out = tmp_path / "fig3.svg"
        code = main(["--figure", "fig3",
                     "--in", *golden(*FIGURE_INPUTS["fig3"]),
                     "--out", str(out), "--format", "svg"])
        capsys.readouterr()
        assert code == 0
        assert out.read_bytes().startswith(b"<?xml")

    def test_deterministic_png(self, tmp_path, capsys):
        outs = []
        for name in ("a.png", "b.png"):
            out = tmp_path / name
            main(["--figure", "fig2",
                  "--in", *golden(*FIGURE_INPUTS["fig2"]),
                  "--out", str(out)])
            capsys.readouterr()
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestValidation:
    def test_wrong_figure_id_exits_nonzero(self, tmp_path, capsys):
        out = tmp_path / "x.png"
        code = main(["--figure", "fig1",
                     "--in", *golden("fig2_population.csv",
                                     "fig2_trajectories.csv"),
                     "--out", str(out)])
        _, err = capsys.readouterr()
        assert code != 0
        assert not out.exists()
        assert "figure id" in err

    def test_missing_column_exits_nonzero(self, tmp_path, capsys):
        src = os.path.join(GOLDEN, "fig3_population.csv")
        broken = tmp_path / "broken.csv"
        lines = open(src).read().splitlines()
        header_idx = next(i for i, l in enumerate(lines)
                          if not l.startswith("#"))
        lines[header_idx] = lines[header_idx].replace("n_k", "n_q")
        broken.write_text("\n".join(lines) + "\n")
        out = tmp_path / "x.png"
        code = main(["--figure", "fig3",
                     "--in", str(broken),
                     os.path.join(GOLDEN, "fig3_asymptotes.csv"),
                     "--out", str(out)])
        _, err = capsys.readouterr()
        assert code != 0
        assert not out.exists()

    def test_empty_rows_exit_nonzero(self, tmp_path, capsys):
        src = os.path.join(GOLDEN, "suppfig1_heatmap.csv")
        empty = tmp_path / "empty.csv"
        lines = [l for l in open(src).read().splitlines()
                 if l.startswith("#")]
        header = next(l for l in open(src).read().splitlines()
                      if not l.startswith("#"))
        empty.write_text("\n".join(lines + [header]) + "\n")
        out = tmp_path / "x.png"
        code = main(["--figure", "suppfig1", "--in", str(empty),
                     "--out", str(out)])
        _, err = capsys.readouterr()
        assert code != 0
        assert not out.exists()
        assert "no data rows" in err

    def test_missing_panel_detected(self, tmp_path, capsys):
        out = tmp_path / "x.png"
        code = main(["--figure", "fig1",
                     "--in", *golden("fig1_dispersion.csv"),
                     "--out", str(out)])
        _, err = capsys.readouterr()
        assert code != 0
        assert "trajectories" in err

    def test_bad_path_exits_nonzero(self, tmp_path, capsys):
        code = main(["--figure", "fig1", "--in", "/nonexistent.csv",
                     "--out", str(tmp_path / "x.png")])
        capsys.readouterr()
        assert code != 0

    def test_job_type_validation(self):
        with pytest.raises(ValidationError):
            FigureJob(figure="fig9", inputs=("a.csv",), output="x.png")
        with pytest.raises(ValidationError):
            FigureJob(figure="fig1", inputs=(), output="x.png")
        with pytest.raises(ValidationError):
            FigureJob(figure="fig1", inputs=("a.csv",), output="x.png",
                      format="pdf")


class TestLoader:
    def test_metadata_parsed(self):
        table = load_table(os.path.join(GOLDEN, "fig3_population.csv"))
        assert table.meta["figure"] == "fig3"
        assert table.meta["panel"] == "population"
        assert len(table.rows) == 5 * 81

    def test_nonnumeric_column(self):
        table = load_table(os.path.join(GOLDEN, "fig3_population.csv"))
        methods = set(table.column("method", numeric=False))
        assert methods <= {"closed_form", "hopfield_lossless"}
