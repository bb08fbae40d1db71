import math

import numpy as np
import pytest

from absorbest.cli import main
from absorbest.config import (
    format_config,
    parse_config_text,
    resolve_simulate_config,
)

HERALDED_CFG = """\
kind = heralded
channel.a = 1.0
channel.length = 1.0
herald.rate = 14000
run.seed = 7
"""

SINGLE_ARM_CFG = """\
kind = single-arm
channel.a = 1.0
channel.length = 1.0
source.kind = coherent
source.mean = 7000
detector.dark_mean = 0
run.seed = 7
"""


@pytest.fixture()
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("ABSORBEST_OUTDIR", str(tmp_path))
    return tmp_path


def read_csv(path):
    comments, header, rows = [], None, []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return comments, header, rows


def column(rows, header, name):
    idx = header.index(name)
    return np.array([float(r[idx]) for r in rows])


class TestWVerb:
    def test_values(self, capsys):
        assert main(["w", "0"]) == 0
        assert float(capsys.readouterr().out) == 0.0
        assert main(["w", str(math.e)]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(1.0, abs=1e-14)
        # Bisection-oracle value at -2/e^2.
        assert main(["w", str(-2.0 / math.e**2)]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(
            -0.4063757399599599, abs=1e-12
        )

    def test_domain_error_exit_code(self, capsys):
        assert main(["w", "-1.0"]) == 3
        assert "branch point" in capsys.readouterr().err


class TestCurves:
    def test_fig2c_constant_ratio(self, outdir):
        assert main(["curves", "--kind", "fig2c", "--grid", "0.1:10:25",
                     "--out", "c.csv"]) == 0
        comments, header, rows = read_csv(outdir / "c.csv")
        q = column(rows, header, "Q")
        assert np.allclose(q, 1.1963070945062955, atol=1e-10)
        assert header == ["x", "F_classical", "F_quantum", "Q"]

    def test_fig2b_classical_peak(self, outdir):
        assert main(["curves", "--kind", "fig2b", "--a", "1",
                     "--grid", "0.5:4:8", "--out", "b.csv"]) == 0
        comments, header, rows = read_csv(outdir / "b.csv")
        xs = column(rows, header, "x")
        classical = column(rows, header, "F_classical")
        assert xs[int(np.argmax(classical))] == pytest.approx(2.0)

    def test_multipass_discrete_peaks(self, outdir):
        assert main(["curves", "--kind", "multipass", "--epsilon", "0.5",
                     "--grid", "1:8:8", "--out", "m.csv"]) == 0
        comments, header, rows = read_csv(outdir / "m.csv")
        xs = column(rows, header, "x")
        assert xs[int(np.argmax(column(rows, header, "F_quantum")))] == 2.0
        assert xs[int(np.argmax(column(rows, header, "F_classical")))] == 3.0

    def test_supB_monotone(self, outdir):
        assert main(["curves", "--kind", "supB", "--grid", "0.1:1:10",
                     "--out", "g.csv"]) == 0
        _, header, rows = read_csv(outdir / "g.csv")
        q = column(rows, header, "Q")
        assert np.all(np.diff(q) >= -1e-12)
        assert q[-1] == pytest.approx(1.1963070945062955, rel=1e-10)

    def test_bad_grid_is_config_error(self, outdir, capsys):
        assert main(["curves", "--kind", "fig2b", "--grid", "nope"]) == 2
        assert "grid" in capsys.readouterr().err

    def test_domain_error_names_grid_point(self, outdir, capsys):
        assert main(["curves", "--kind", "fig2b", "--grid", "0:2:3"]) == 3
        assert "grid value 0.0" in capsys.readouterr().err


class TestOptimal:
    def test_report_values(self, capsys):
        assert main(["optimal", "--a", "1"]) == 0
        out = capsys.readouterr().out
        assert "classical,2," in out
        assert "1.5936242600400401" in out
        assert "advantage_at_optimum: 1.1963070945062955" in out

    def test_fano_row(self, capsys):
        assert main(["optimal", "--a", "1", "--fano", "826"]) == 0
        out = capsys.readouterr().out
        assert "general(fano=826)" in out
        assert "6.017796" in out

    def test_table_format(self, capsys):
        assert main(["optimal", "--a", "1", "--format", "table"]) == 0
        out = capsys.readouterr().out
        assert "strategy" in out and "," not in out.split("\n")[-2]


class TestSimulate:
    def test_heralded_run_outputs(self, outdir, capsys):
        cfg = outdir / "h.cfg"
        cfg.write_text(HERALDED_CFG)
        assert main(["simulate", "--kind", "heralded", "--config", str(cfg),
                     "--out", "run.csv"]) == 0
        summary = capsys.readouterr().out
        assert "measured info/photon" in summary
        comments, header, rows = read_csv(outdir / "run.csv")
        assert header[:3] == ["window", "n_signal", "n_coincidence"]
        assert len(rows) == 500
        assert any("# run.seed = 7" == c for c in comments)
        assert any(c.startswith("# theory_info_per_photon:") for c in comments)
        gcomments, gheader, grows = read_csv(outdir / "run.groups.csv")
        assert gheader == ["group", "n_estimates", "variance", "info_per_photon"]
        assert len(grows) == 5

    def test_seed_repeat_is_byte_identical(self, outdir):
        cfg = outdir / "h.cfg"
        cfg.write_text(HERALDED_CFG)
        main(["simulate", "--kind", "heralded", "--config", str(cfg), "--out", "a.csv"])
        main(["simulate", "--kind", "heralded", "--config", str(cfg), "--out", "b.csv"])
        assert (outdir / "a.csv").read_bytes() == (outdir / "b.csv").read_bytes()

    def test_seed_override_changes_output(self, outdir):
        cfg = outdir / "h.cfg"
        cfg.write_text(HERALDED_CFG)
        main(["simulate", "--kind", "heralded", "--config", str(cfg), "--out", "a.csv"])
        main(["simulate", "--kind", "heralded", "--config", str(cfg),
              "--seed", "8", "--out", "c.csv"])
        a = (outdir / "a.csv").read_text()
        c = (outdir / "c.csv").read_text()
        assert a != c
        assert "# run.seed = 8" in c

    def test_single_arm_runs(self, outdir, capsys):
        cfg = outdir / "s.cfg"
        cfg.write_text(SINGLE_ARM_CFG)
        assert main(["simulate", "--kind", "single-arm", "--config", str(cfg),
                     "--out", "sa.csv"]) == 0
        assert "analytic" in capsys.readouterr().out

    def test_echoed_config_round_trips(self, outdir):
        cfg = outdir / "h.cfg"
        cfg.write_text(HERALDED_CFG)
        main(["simulate", "--kind", "heralded", "--config", str(cfg), "--out", "r.csv"])
        comments, _, _ = read_csv(outdir / "r.csv")
        echoed = "\n".join(
            c[2:] for c in comments if " = " in c
        )
        entries = parse_config_text(echoed)
        cfg2, resolved2 = resolve_simulate_config("heralded", entries)
        entries3 = parse_config_text(format_config(resolved2))
        cfg3, resolved3 = resolve_simulate_config("heralded", entries3)
        assert resolved2 == resolved3
        assert cfg2 == cfg3

    def test_unknown_key_is_config_error(self, outdir, capsys):
        cfg = outdir / "bad.cfg"
        cfg.write_text(HERALDED_CFG + "herald.rte = 10\n")
        assert main(["simulate", "--kind", "heralded", "--config", str(cfg)]) == 2
        err = capsys.readouterr().err
        assert "unknown key" in err and "herald.rte" in err and ":6" in err

    def test_misplaced_key_is_config_error(self, outdir, capsys):
        cfg = outdir / "bad.cfg"
        cfg.write_text(HERALDED_CFG + "detector.dark_mean = 10\n")
        assert main(["simulate", "--kind", "heralded", "--config", str(cfg)]) == 2

    def test_invalid_physics_is_config_error(self, outdir, capsys):
        cfg = outdir / "bad.cfg"
        cfg.write_text(HERALDED_CFG.replace("channel.a = 1.0", "channel.a = -1.0"))
        assert main(["simulate", "--kind", "heralded", "--config", str(cfg)]) == 2
        assert "absorbance" in capsys.readouterr().err

    def test_missing_config_file(self, outdir, capsys):
        assert main(["simulate", "--kind", "heralded", "--config",
                     str(outdir / "absent.cfg")]) == 2

    def test_rate_scaling_canonicalized(self, outdir):
        # Mean rate in s^-1, variance rate in s^-2; the 0.5 s window turns
        # them into per-window values which the echo then reports.
        cfg = outdir / "s.cfg"
        cfg.write_text(
            SINGLE_ARM_CFG.replace("detector.dark_mean = 0",
                                   "detector.dark_mean = 518\n"
                                   "detector.dark_var = 2072\n"
                                   "detector.rate_scaling = true")
        )
        entries = parse_config_text(cfg.read_text(), origin=str(cfg))
        resolved_cfg, resolved = resolve_simulate_config("single-arm", entries)
        assert resolved_cfg.detector.dark_mean == pytest.approx(259.0)
        assert resolved_cfg.detector.dark_var == pytest.approx(2072.0 * 0.25)
        assert resolved["detector.rate_scaling"] == "false"

    def test_rate_scaling_can_break_poisson_floor(self, outdir, capsys):
        # Scaling a mean rate by the window but a variance rate by the
        # window squared can demand sub-Poissonian darks; that surfaces as
        # a config error instead of silently running.
        cfg = outdir / "s.cfg"
        cfg.write_text(
            SINGLE_ARM_CFG.replace("detector.dark_mean = 0",
                                   "detector.dark_mean = 518\n"
                                   "detector.dark_var = 518\n"
                                   "detector.rate_scaling = true")
        )
        assert main(["simulate", "--kind", "single-arm", "--config", str(cfg)]) == 2
        assert "Poisson mixture" in capsys.readouterr().err


class TestOutputDir:
    def test_env_var_default_dir(self, outdir):
        assert main(["curves", "--kind", "fig2c", "--grid", "1:2:2"]) == 0
        assert (outdir / "curves_fig2c.csv").exists()

    def test_table_format_output(self, outdir):
        assert main(["curves", "--kind", "fig2c", "--grid", "1:2:2",
                     "--format", "table", "--out", "t.txt"]) == 0
        text = (outdir / "t.txt").read_text()
        data_lines = [l for l in text.splitlines() if not l.startswith("#")]
        assert "," not in data_lines[0]
        assert data_lines[0].split()[0] == "x"
