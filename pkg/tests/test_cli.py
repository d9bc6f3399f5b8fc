import csv
import io
import math

import pytest

from uncq import cli, entropy
from conftest import H


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def table(text):
    return dict(line.split(None, 1) for line in text.strip().splitlines())


MMM_EXAMPLE = "mmm:c1=0.5,c2=-0.2,c3=-0.3"


class TestFormatting:
    def test_fmt(self):
        assert cli.fmt(-0.0) == "0"
        assert cli.fmt(1 / 3) == "0.3333333333"
        assert cli.fmt("text") == "text"

    @pytest.mark.parametrize("text, expected", [("121x240", (121, 240)), ("3X4", (3, 4))])
    def test_grid(self, text, expected):
        assert cli.parse_grid(text) == expected


class TestBound:
    def test_mmm_table(self):
        code, text = run("bound", "--state", MMM_EXAMPLE, "--s", "x")
        assert code == 0
        t = table(text)
        assert float(t["lhs"]) == pytest.approx(H(0.65) + H(0.25), abs=1e-9)
        assert float(t["berta_rhs"]) == pytest.approx(1.5589, abs=1e-4)
        assert float(t["slack"]) > 0
        assert t["state"] == MMM_EXAMPLE

    def test_csv(self):
        code, text = run("bound", "--state", MMM_EXAMPLE, "--s", "x", "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0 and len(rows) == 2
        record = dict(zip(*rows))
        assert record["state"] == MMM_EXAMPLE
        assert float(record["c"]) == pytest.approx(0.5)

    def test_parallel_is_usage_error(self, capsys):
        code, _ = run("bound", "--state", "werner:p=0.5", "--s", "z")
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestFg:
    def test_fixed(self):
        code, text = run("fg", "--state", MMM_EXAMPLE)
        t = table(text)
        assert code == 0
        assert float(t["fg_bound"]) == pytest.approx(1.7454, abs=1e-4)
        assert float(t["p_extremal"]) == pytest.approx(0.25, abs=1e-9)
        assert t["mode"] == "fixed-r"

    def test_joint_werner(self):
        code, text = run("fg", "--state", "werner:p=0.4", "--joint")
        assert code == 0
        assert float(table(text)["fg_bound"]) == pytest.approx(2 * H(0.7), abs=1e-6)

    def test_custom_r_eps_and_grid(self):
        code, text = run("fg", "--state", MMM_EXAMPLE, "--r", "x", "--eps", "0.1", "--grid", "31x60")
        assert code == 0
        # optimum sits on the cap rim, tilted towards y: c2 = -0.2 eats less of c1 than c3 does
        q = max(abs(0.5 * math.cos(0.1) ** 2 + c * math.sin(0.1) ** 2) for c in (-0.2, -0.3))
        assert float(table(text)["p_extremal"]) == pytest.approx((1 - q) / 2, abs=1e-9)


class TestSweep:
    def test_columns_and_rows(self):
        code, text = run("sweep", "--state", "bell:phi+", "--steps", "5")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert code == 0
        assert list(rows[0]) == list(cli.SWEEP_COLUMNS)
        assert len(rows) == 5
        assert float(rows[-1]["theta_s"]) == pytest.approx(math.pi)

    def test_berta_curve(self):
        code, text = run("sweep", "--state", "bell:phi+", "--steps", "9", "--from", "0", "--to", "3.14159265358979")
        for row in csv.DictReader(io.StringIO(text)):
            th = float(row["theta_s"])
            expected = -1 + math.log2(1 / max(math.cos(th / 2) ** 2, math.sin(th / 2) ** 2))
            assert float(row["berta_rhs"]) == pytest.approx(expected, abs=1e-9)

    def test_soundness_per_row(self):
        code, text = run("sweep", "--state", MMM_EXAMPLE, "--steps", "37")
        for row in csv.DictReader(io.StringIO(text)):
            assert float(row["lhs_pair"]) >= float(row["berta_rhs"]) - 1e-9
            assert float(row["lhs_pair"]) >= float(row["fg_bound"]) - 1e-8

    def test_table_format(self):
        code, text = run("sweep", "--state", "werner:p=0.3", "--steps", "3", "--format", "table")
        assert code == 0
        assert text.splitlines()[0].split() == list(cli.SWEEP_COLUMNS)

    @pytest.mark.parametrize("argv", [
        ("--steps", "1"),
        ("--from", "2", "--to", "1"),
        ("--to", "4"),
    ])
    def test_bad_range(self, argv):
        assert run("sweep", "--state", MMM_EXAMPLE, *argv)[0] == 2


class TestGame:
    def test_optimize_singlet(self):
        code, text = run("game", "--state", "bell:psi-", "--optimize")
        assert code == 0
        assert float(table(text)["value"]) == pytest.approx(0.85355, abs=1e-4)

    def test_explicit_settings(self):
        code, text = run("game", "--state", "bell:psi-", "--alice", "z", "--bob", "z",
                         "--winning", "anticorrelate")
        assert code == 0
        assert float(table(text)["value"]) == pytest.approx(1)

    def test_needs_settings(self):
        assert run("game", "--state", "bell:psi-")[0] == 2


class TestKeyrate:
    def test_phi_plus(self):
        code, text = run("keyrate", "--state", "bell:phi+", "--s", "x")
        t = table(text)
        assert code == 0
        assert float(t["key_rate_berta"]) == pytest.approx(1, abs=1e-9)
        assert float(t["key_rate_fine_grained"]) == pytest.approx(1, abs=1e-9)


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("fg", "--state", "bogus:x=1"),
        ("fg", "--state", "werner:p=zz"),
        ("fg", "--state", MMM_EXAMPLE, "--grid", "7by8"),
        ("fg", "--state", MMM_EXAMPLE, "--r", "up"),
        ("fg",),
        ("teleport",),
        ("fg", "--state", MMM_EXAMPLE, "--eps", "2"),
        ("verify", "--trials", "0"),
    ])
    def test_usage(self, argv):
        assert run(*argv)[0] == 2

    @pytest.mark.parametrize("spec", ["mmm:c1=1,c2=1,c3=1", "werner:p=1.5", "belldiag:p=-0.5"])
    def test_unphysical(self, spec, capsys):
        code, out = run("fg", "--state", spec)
        assert code == 3
        assert out == ""
        assert "unphysical" in capsys.readouterr().err


class TestVerify:
    def test_passes(self):
        code, text = run("verify", "--trials", "20", "--seed", "3")
        assert code == 0
        assert text.strip().endswith("total failures: 0")
        assert "FAIL" not in text

    def test_detects_broken_entropy(self, monkeypatch):
        original = entropy.von_neumann
        monkeypatch.setattr(entropy, "von_neumann", lambda rho: -original(rho))
        code, text = run("verify", "--trials", "5")
        assert code == 1
        assert "FAIL" in text


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("fg", "--state", "random:seed=5", "--joint"),
        ("sweep", "--state", MMM_EXAMPLE, "--steps", "11"),
        ("game", "--state", "random:seed=2", "--optimize"),
    ])
    def test_repeatable(self, argv):
        assert run(*argv) == run(*argv)
