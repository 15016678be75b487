import json

import pytest
from click.testing import CliRunner

from charged3body.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestRootsCommand:
    def test_anchor_json(self, runner):
        res = runner.invoke(main, ["roots", "--beta", "1,1"])
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["triple"] == [0, 0, 1]
        assert abs(data["roots"][0]["u"] - 1) < 1e-12
        assert data["roots"][0]["central_configuration"]["multiplier"] > 0

    def test_gravitational_unique_root(self, runner):
        res = runner.invoke(main, ["roots", "--gravitational", "--m", "1,1,1"])
        data = json.loads(res.output)
        assert data["triple"] == [0, 0, 1]
        assert abs(data["roots"][0]["u"] - 1) < 1e-12

    def test_all_zero_exit_code(self, runner):
        res = runner.invoke(main, ["roots", "--alpha", "0,0,0"])
        assert res.exit_code == 3

    def test_input_error_exit_code(self, runner):
        res = runner.invoke(main, ["roots", "--alpha", "1,2"])
        assert res.exit_code == 2
        res2 = runner.invoke(main, ["roots", "--alpha", "1,2,3", "--beta", "1,1"])
        assert res2.exit_code == 2
        res3 = runner.invoke(main, ["roots"])
        assert res3.exit_code == 2


class TestRegionsCommand:
    def test_csv_and_svg_outputs(self, runner, tmp_path):
        csv_path = tmp_path / "r.csv"
        svg_path = tmp_path / "r.svg"
        res = runner.invoke(
            main,
            ["regions", "--grid", "0.9:1.1:3,0.9:1.1:3", "--csv", str(csv_path), "--svg", str(svg_path)],
        )
        assert res.exit_code == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "beta1,beta2,n1,n2,n3,region,neg_u_count_i1,neg_u_count_i2,neg_u_count_i3"
        assert len(lines) == 10
        assert all(ln.split(",")[5] == "1" for ln in lines[1:])
        import xml.etree.ElementTree as ET

        ET.fromstring(svg_path.read_text())

    def test_byte_identical_reruns(self, runner, tmp_path):
        args = ["regions", "--grid", "-1:1:5,-1:1:5"]
        a = runner.invoke(main, args + ["--csv", str(tmp_path / "a.csv"), "--svg", str(tmp_path / "a.svg")])
        b = runner.invoke(main, args + ["--csv", str(tmp_path / "b.csv"), "--svg", str(tmp_path / "b.svg")])
        assert a.exit_code == 0 and b.exit_code == 0
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_seventeen_digit_serialization(self, runner, tmp_path):
        csv_path = tmp_path / "g.csv"
        res = runner.invoke(main, ["regions", "--grid", "0.1:0.1:1,2:2:1", "--csv", str(csv_path)])
        assert res.exit_code == 0
        row = csv_path.read_text().splitlines()[1].split(",")
        assert row[0] == "0.10000000000000001"

    def test_bad_grid_exit(self, runner):
        res = runner.invoke(main, ["regions", "--grid", "oops"])
        assert res.exit_code == 2


class TestCurveCommand:
    def test_csv_schema(self, runner, tmp_path):
        p = tmp_path / "c.csv"
        res = runner.invoke(main, ["curve", "--mu", "1", "--samples", "40", "--csv", str(p)])
        assert res.exit_code == 0
        lines = p.read_text().splitlines()
        assert lines[0] == "u,beta1,beta2,branch,at_infinity"
        assert any(ln.split(",")[4] == "1" for ln in lines[1:])
        branches = {ln.split(",")[3] for ln in lines[1:]}
        assert branches == {"1", "2", "3"}

    def test_requires_mass_choice(self, runner):
        assert runner.invoke(main, ["curve"]).exit_code == 2
        assert runner.invoke(main, ["curve", "--mu", "1", "--m", "1,1,1"]).exit_code == 2


class TestSpecialPointsCommand:
    def test_mu_one_values(self, runner):
        res = runner.invoke(main, ["special-points", "--mu", "1"])
        assert res.exit_code == 0
        d = json.loads(res.output)
        assert d["eta_plus"] == pytest.approx(-0.5)
        assert d["eta_minus"] == pytest.approx(-2.0)
        assert d["xi_plus"] == pytest.approx((-13 + 105**0.5) / 8)

    def test_mu_zero_rejected(self, runner):
        assert runner.invoke(main, ["special-points", "--mu", "0"]).exit_code == 2


class TestReleqCommand:
    def test_euler_point(self, runner):
        res = runner.invoke(main, ["releq", "--beta", "1,1", "--u", "1"])
        assert res.exit_code == 0
        d = json.loads(res.output)
        assert d["classification"] == "relative-equilibrium"
        assert d["rank_gap"] < 1e-9

    def test_lagrange(self, runner):
        res = runner.invoke(main, ["releq", "--gravitational", "--noncollinear"])
        assert res.exit_code == 0
        d = json.loads(res.output)
        assert d["classification"] == "relative-equilibrium"

    def test_repulsive_exit_three(self, runner):
        res = runner.invoke(main, ["releq", "--alpha", "-1,-1,-1", "--noncollinear"])
        assert res.exit_code == 3

    def test_no_such_root_exit_two(self, runner):
        res = runner.invoke(main, ["releq", "--beta", "1,1", "--u", "3.5"])
        assert res.exit_code == 2


class TestVerifyCommand:
    def test_passes(self, runner):
        res = runner.invoke(main, ["verify", "--seed", "3", "--iterations", "6"])
        assert res.exit_code == 0
        assert res.output.count("[PASS]") == 6

    def test_zero_iterations_vacuous(self, runner):
        res = runner.invoke(main, ["verify", "--iterations", "0"])
        assert res.exit_code == 0
        assert "[" not in res.output

    def test_fault_injection_fails_covariance(self, runner):
        from charged3body.verify import fault_injection_flip_f2

        with fault_injection_flip_f2():
            res = runner.invoke(main, ["verify", "--seed", "3", "--iterations", "6"])
        assert res.exit_code == 4
        assert "[FAIL] covariance" in res.output
