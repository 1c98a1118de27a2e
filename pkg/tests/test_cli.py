import csv
from decimal import Decimal
import io
import json
import os
import subprocess
import sys

import pytest

from uniasym.cli import EXIT_DOMAIN, EXIT_NONCONVERGENCE, EXIT_USAGE, main, sweep_grid
from uniasym.tables import format_coefficient, format_error

BASE = ["--a", "0.5", "--c", "2", "--eps", "2"]


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("UNIASYM_PRECISION", None)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "uniasym", *args], capture_output=True, text=True,
                          env=full_env)


def run_json(*args):
    proc = run(*args, "--output", "json")
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


class TestEval:
    def test_table2_cell(self):
        asym = run_json("eval", *BASE, "--lambda", "50", "--x", "0.3", "--m", "1", "--terms", "6")
        orac = run_json("eval", *BASE, "--lambda", "50", "--x", "0.3", "--method", "oracle")
        a, o = Decimal(asym["value"]["decimal"]), Decimal(orac["value"]["decimal"])
        assert abs(a - o) / o < Decimal("9.81e-14")
        assert asym["regime"] == "upper" and asym["method"] == "theorem1" and asym["terms_used"] == 6

    def test_json_keys(self):
        rec = run_json("eval", *BASE, "--lambda", "50", "--x", "0.3")
        assert set(rec) == {"value", "regime", "method", "terms_used", "last_term_magnitude", "inputs"}
        assert set(rec["value"]) == {"sign", "mantissa", "exponent", "decimal"}
        assert rec["inputs"] == {"a": "0.5", "c": "2", "eps": "2", "lambda": "50", "x": "0.3", "m": 1}

    def test_coalescent_dispatch(self):
        rec = run_json("eval", *BASE, "--lambda", "50", "--x", "0.5")
        assert rec["regime"] == "coalescent" and rec["method"] == "theorem2"

    def test_oracle_reports_tail_bound(self):
        rec = run_json("eval", *BASE, "--lambda", "50", "--x", "0.3", "--method", "oracle")
        assert rec["method"] == "oracle" and float(rec["tail_bound"]) > 0

    def test_json_round_trip(self):
        first = run_json("eval", *BASE, "--lambda", "100", "--x", "0.45", "--terms", "4")
        inp = first["inputs"]
        again = run_json("eval", "--a", inp["a"], "--c", inp["c"], "--eps", inp["eps"],
                         "--lambda", inp["lambda"], "--x", inp["x"], "--m", str(inp["m"]), "--terms", "4")
        assert again == first

    def test_higher_m(self):
        rec = run_json("eval", *BASE, "--lambda", "100", "--x", "0.3", "--m", "2")
        assert rec["method"] == "recurrence"
        ibp = run_json("eval", *BASE, "--lambda", "100", "--x", "0.3", "--m", "2", "--method", "ibp", "--terms", "4")
        assert ibp["method"] == "ibp"
        assert abs(float(rec["value"]["decimal"]) / float(ibp["value"]["decimal"]) - 1) < 1e-6

    def test_human_output(self):
        proc = run("eval", *BASE, "--lambda", "50", "--x", "0.3")
        assert proc.returncode == 0
        assert "value" in proc.stdout and "theorem1" in proc.stdout


class TestErrors:
    def test_usage_error(self):
        proc = run("eval", *BASE, "--lambda", "50")
        assert proc.returncode == EXIT_USAGE and "--x" in proc.stderr

    def test_bad_number(self):
        proc = run("eval", *BASE, "--lambda", "fifty", "--x", "0.3")
        assert proc.returncode == EXIT_USAGE

    @pytest.mark.parametrize("flag,value,needle", [
        ("--x", "1.3", "0 < x < 1"),
        ("--eps", "0.5", "eps > 1"),
        ("--terms", "9", "--terms"),
    ])
    def test_domain_errors(self, flag, value, needle):
        args = {"--a": "0.5", "--c": "2", "--eps": "2", "--lambda": "50", "--x": "0.3"}
        args[flag] = value
        proc = run("eval", *[t for kv in args.items() for t in kv])
        assert proc.returncode == EXIT_DOMAIN
        assert needle in proc.stderr

    def test_forced_method_off_regime(self):
        proc = run("eval", *BASE, "--lambda", "50", "--x", "0.3", "--method", "theorem2")
        assert proc.returncode == EXIT_DOMAIN and "|1/x - eps|" in proc.stderr

    def test_nonconvergence(self):
        proc = run("eval", *BASE, "--lambda", "50", "--x", "0.999999", "--method", "oracle")
        assert proc.returncode == EXIT_NONCONVERGENCE and "converge" in proc.stderr

    def test_bad_precision_env(self):
        proc = run("eval", *BASE, "--lambda", "50", "--x", "0.3", env={"UNIASYM_PRECISION": "-4"})
        assert proc.returncode == EXIT_DOMAIN and "UNIASYM_PRECISION" in proc.stderr

    def test_in_process_main(self, capsys):
        assert main(["eval", *BASE, "--lambda", "50", "--x", "0.3"]) == 0
        assert "theorem1" in capsys.readouterr().out
        assert main(["eval", *BASE, "--lambda", "50", "--x", "2"]) == EXIT_DOMAIN


class TestReproduce:
    def test_table1_first_row(self):
        proc = run("reproduce", "--table", "1")
        rows = list(csv.reader(io.StringIO(proc.stdout)))
        assert rows[0] == ["k", "x=0.30", "x=0.45", "x=0.55", "x=0.70"]
        assert rows[1] == ["0", "-0.94304503", "-1.03364259", "-1.08679035", "-1.16314077"]
        assert len(rows) == 7

    def test_table3(self):
        rows = list(csv.reader(io.StringIO(run("reproduce", "--table", "3").stdout)))
        assert [r[1] for r in rows[1:]] == ["0.75000000", "-0.15625000", "9.76562500e-03"]
        assert [r[2] for r in rows[1:]] == ["-1.06066017", "0.22097087", "-1.38106793e-02"]

    def test_table4_cell(self):
        rows = list(csv.reader(io.StringIO(run("reproduce", "--table", "4").stdout)))
        assert rows[0] == ["M", "lambda=50", "lambda=100", "lambda=150"]
        cell = float(rows[3][2])
        assert 3.182e-10 / 5 < cell < 3.182e-10 * 5

    def test_paper_style(self):
        out = run("reproduce", "--table", "2", "--paper-style").stdout
        assert "2.306(-03)" in out and "2.655(-13)" in out

    def test_formatters(self):
        assert format_error(2.306e-3) == "2.306e-03"
        assert format_error(2.306e-3, paper_style=True) == "2.306(-03)"
        assert format_coefficient(-0.943045031) == "-0.94304503"
        assert format_coefficient(2.22692591e-1, paper_style=True) == "+0.22269259"
        assert format_coefficient(-1.70235645e-2, paper_style=True) == "-1.70235645(-2)"


class TestSweep:
    ARGS = ("sweep", *BASE, "--lambda", "100", "--x-from", "0.4", "--x-to", "0.6", "--steps", "21",
            "--terms", "3")

    def test_sweep_bounded_across_coalescence(self):
        proc = run(*self.ARGS)
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.DictReader(io.StringIO(proc.stdout)))
        assert len(rows) == 21
        xs = [float(r["x"]) for r in rows]
        assert xs == sorted(xs)
        mid = [r for r in rows if r["x"] == "0.5"]
        assert mid and mid[0]["method"] == "theorem2" and mid[0]["regime"] == "coalescent"
        assert max(float(r["rel_error"]) for r in rows) <= 1e-7

    def test_deterministic(self):
        env = {"UNIASYM_PRECISION": "40"}
        assert run(*self.ARGS, env=env).stdout == run(*self.ARGS, env=env).stdout

    def test_nonconvergent_rows_marked(self):
        proc = run("sweep", *BASE, "--lambda", "2", "--x-from", "0.3", "--x-to", "0.9999999", "--steps", "2",
                   "--terms", "2")
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.DictReader(io.StringIO(proc.stdout)))
        assert rows[0]["oracle"] != "nonconvergent"
        assert rows[1]["oracle"] == "nonconvergent" and rows[1]["rel_error"] == ""

    def test_grid_is_exact(self):
        from fractions import Fraction as Q

        grid = sweep_grid(Q(2, 5), Q(3, 5), 21)
        assert Q(1, 2) in grid and grid[0] == Q(2, 5) and grid[-1] == Q(3, 5)

    def test_bad_range(self):
        proc = run("sweep", *BASE, "--lambda", "100", "--x-from", "0.6", "--x-to", "0.4", "--steps", "3")
        assert proc.returncode == EXIT_DOMAIN


class TestCoeffsAndCompare:
    def test_coeffs_csv(self):
        rows = list(csv.reader(io.StringIO(run("coeffs", *BASE, "--x", "0.3", "--output", "csv").stdout)))
        assert rows[0] == ["k", "C_2k", "b_2k", "d_2k"]
        assert float(rows[1][3]) == pytest.approx(-0.94304503, abs=5e-9)

    def test_coeffs_coalescent(self):
        data = run_json("coeffs", *BASE, "--x", "0.5", "--terms", "3")
        assert data["regime"] == "coalescent"
        assert float(data["coefficients"][0]["D_2k"]) == pytest.approx(0.75)

    def test_compare(self):
        rec = run_json("compare", *BASE, "--lambda", "100", "--x", "0.7", "--terms", "1")
        assert 1.451e-12 / 5 < float(rec["rel_error"]) < 1.451e-12 * 5
