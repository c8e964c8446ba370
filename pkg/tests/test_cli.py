import csv
import io
import math

import numpy as np
import pytest

from arcsine_lab.analytic import arcsine_pdf, drift_params
from arcsine_lab.cli import density_rows, main
from arcsine_lab.samplers import occupation_counts


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(out):
    lines = out.splitlines()
    assert lines[0].startswith("# arcsine-lab ")
    return list(csv.reader(io.StringIO("\n".join(lines[1:]))))


class TestMoments:
    def test_closed_form_rows(self, capsys):
        code, out, _ = run(capsys, "moments", "--m-max", "3")
        assert code == 0
        rows = body(out)
        assert rows[0] == ["m", "value", "value_float", "closed_form"]
        assert [r[1] for r in rows[1:]] == ["1/2", "3/8", "5/16"]
        assert [r[3] for r in rows[1:]] == ["1/2", "3/8", "5/16"]

    def test_first_moment_decimal(self, capsys):
        _, out, _ = run(capsys, "moments", "--m-max", "1", "--mu", "0")
        assert body(out)[1][2] == "0.5"

    def test_drift_row_is_p(self, capsys):
        code, out, _ = run(capsys, "moments", "--m-max", "2", "--mu", "0.5")
        assert code == 0
        rows = body(out)
        assert rows[1][1] == f"{drift_params(0.5).p:.12g}" == "0.666666666667"
        assert rows[1][3] == ""

    def test_header_echoes_config(self, capsys):
        _, out, _ = run(capsys, "moments", "--m-max", "4", "--mu", "-1.5", "--seed", "3")
        header = out.splitlines()[0]
        for token in ("subcommand=moments", "m_max=4", "mu=-1.5", "seed=3", "format=csv"):
            assert token in header
        assert "workers" not in header

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "moments", "--m-max", "2", "--format", "table")
        assert code == 0
        lines = out.splitlines()
        assert lines[1].split() == ["m", "value", "value_float", "closed_form"]
        assert lines[3].split() == ["2", "3/8", "0.375", "3/8"]

    def test_plot_written(self, capsys, tmp_path):
        path = tmp_path / "moments.png"
        code, _, _ = run(capsys, "moments", "--m-max", "6", "--mu", "0.5", "--plot", str(path))
        assert code == 0 and path.stat().st_size > 1000


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["moments", "--m-max", "0"],
            ["moments"],
            ["moments", "--m-max", "2", "--mu", "nan"],
            ["verify", "--suite", "bogus"],
            ["density", "--bins", "1"],
            ["claim-check", "--seed", "-4"],
            ["claim-check", "--trials", "50"],
            ["frobnicate"],
            [],
        ],
    )
    def test_usage_errors_exit_2(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert err

    def test_failing_check_exits_1(self, capsys, monkeypatch):
        from arcsine_lab import cli
        from arcsine_lab.suites import Check

        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: iter([Check("fake", False, "1", "0")]))
        code, out, _ = run(capsys, "verify", "--suite", "exact")
        assert code == 1
        assert body(out)[1][:2] == ["fake", "fail"]

    def test_inconsistent_claim_check_exits_1(self, capsys, monkeypatch):
        from arcsine_lab import cli, stats

        real = stats.claim_check

        def skewed(*args, **kwargs):
            r = real(*args, **kwargs)
            return stats.ClaimCheckReport(**{**r.__dict__, "formula_value": r.formula_value + 0.1})

        monkeypatch.setattr(cli, "claim_check", skewed)
        code, out, _ = run(capsys, "claim-check", "--m", "1", "--trials", "100000")
        assert code == 1
        assert body(out)[-1][:2] == ["internal_consistency", "fail"]


class TestVerify:
    def test_exact_suite(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "exact")
        assert code == 0
        rows = body(out)
        assert rows[0] == ["check", "status", "measured", "expected", "tolerance"]
        assert all(r[1] == "pass" for r in rows[1:])
        assert "9/9 checks passed" in err

    def test_ballot_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "ballot")
        assert code == 0
        assert len(body(out)) == 5

    def test_mc_suite_small_and_worker_independent(self, capsys):
        _, out1, _ = run(capsys, "verify", "--suite", "mc", "--trials", "100000", "--seed", "5", "--workers", "1")
        _, out3, _ = run(capsys, "verify", "--suite", "mc", "--trials", "100000", "--seed", "5", "--workers", "3")
        assert out1 == out3


class TestClaimCheck:
    def test_no_drift_m1(self, capsys):
        code, out, _ = run(capsys, "claim-check", "--m", "1", "--mu", "0", "--trials", "200000")
        assert code == 0
        rows = {r[0]: r for r in body(out)[1:]}
        for key in ("laplace_estimate", "ballot_estimate", "uniform_estimate"):
            assert abs(float(rows[key][1]) - 0.5) < 4 * float(rows[key][2])
        assert float(rows["fixed_horizon_oracle"][1]) == pytest.approx(0.5, abs=1e-12)
        assert float(rows["exp_horizon_oracle"][1]) == pytest.approx(0.5, abs=1e-12)

    def test_m2_seeded(self, capsys):
        code, out, _ = run(capsys, "claim-check", "--m", "2", "--mu", "0", "--trials", "1000000", "--seed", "7")
        assert code == 0
        rows = {r[0]: r for r in body(out)[1:]}
        assert rows["formula_value"][1] == "0.375"
        assert "fixed_horizon_oracle" not in rows

    def test_drift_columns(self, capsys):
        code, out, _ = run(capsys, "claim-check", "--m", "1", "--mu", "0.5", "--trials", "200000")
        assert code == 0
        rows = {r[0]: r for r in body(out)[1:]}
        assert "fixed_horizon_oracle" in rows and "exp_horizon_oracle" in rows
        assert rows["uniform_estimate"][4] == "fixed_horizon_oracle"


class TestDensity:
    def test_midpoint_bin_and_symmetry(self, capsys, tmp_path):
        plot = tmp_path / "density.png"
        code, out, _ = run(
            capsys, "density", "--trials", "3000", "--steps", "200", "--bins", "5", "--plot", str(plot)
        )
        assert code == 0
        rows = body(out)
        assert rows[0] == ["bin_center", "empirical_density", "analytic_density"]
        analytic = [float(r[2]) for r in rows[1:]]
        assert analytic[2] == pytest.approx(2 / math.pi, abs=1e-11)
        assert analytic == pytest.approx(analytic[::-1], abs=1e-11)
        emp = [float(r[1]) for r in rows[1:]]
        assert sum(emp) / 5 == pytest.approx(1.0, abs=1e-12)
        assert plot.stat().st_size > 1000

    def test_full_scale_interior_bins(self, grid_counts):
        from conftest import GRID_STEPS

        centers, empirical, analytic = density_rows(grid_counts, GRID_STEPS, 20)
        gap = np.max(np.abs(empirical - np.array(analytic))[1:-1])
        assert gap < 0.05

    def test_binning_is_exact_on_edges(self):
        counts = np.array([0, 49, 50, 99, 100])
        centers, emp, _ = density_rows(counts, 100, 2)
        # 50/100 sits on the edge and belongs to the upper bin; 100/100 to the last
        assert list(emp * 5 / 2) == [2, 3]

    def test_output_reproducible(self, capsys):
        args = ["density", "--trials", "1000", "--steps", "100", "--bins", "4", "--seed", "9"]
        _, a, _ = run(capsys, *args, "--workers", "1")
        _, b, _ = run(capsys, *args, "--workers", "4")
        assert a == b
        counts = occupation_counts(0.0, 100, 1000, seed=9)
        _, emp, _ = density_rows(counts, 100, 4)
        assert [float(r[1]) for r in body(a)[1:]] == pytest.approx(list(emp), rel=1e-11)
        assert float(body(a)[1][2]) == pytest.approx(arcsine_pdf(0.125), rel=1e-11)
