import csv
import io
import json
import math
import subprocess
import sys

import pytest

from walksearch import cli

SIMULATE_EXAMPLES = [
    "simulate --walk qw-discrete --n 4 --marked 2 --t-max 3 --mode full",
    "simulate --walk rw-continuous --n 4 --marked 2 --t-max 4 --dt 4 --mode closed",
    "simulate --walk qw-continuous --n 4 --t-max 3.14159 --mode closed",
]


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def invoke(args):
    return subprocess.run(
        [sys.executable, "-m", "walksearch", *args.split()],
        capture_output=True, text=True, check=False,
    )


class TestSimulate:
    def test_table_series(self):
        out = rows(cli.run(SIMULATE_EXAMPLES[0].split()))
        assert [float(r["t"]) for r in out] == [0, 1, 2, 3]
        success = [float(r["success"]) for r in out]
        assert success == pytest.approx([0.25, 0.25, 0.694444, 0.003086], abs=1e-6)
        assert all(float(r["conserved"]) == 1.0 for r in out)

    def test_continuous_random(self):
        out = rows(cli.run(SIMULATE_EXAMPLES[1].split()))
        assert [float(r["t"]) for r in out] == [0, 4]
        assert float(out[-1]["success"]) == pytest.approx(0.724091, abs=1e-6)

    def test_continuous_quantum(self):
        out = rows(cli.run(SIMULATE_EXAMPLES[2].split()))
        assert float(out[-1]["t"]) == 3.14159
        assert float(out[-1]["success"]) >= 0.999999

    @pytest.mark.parametrize("walk, t_max", [
        ("rw-discrete", "12"), ("rw-continuous", "9.5"),
        ("qw-discrete", "12"), ("qw-continuous", "7.3"),
    ])
    def test_modes_agree(self, walk, t_max):
        base = f"simulate --walk {walk} --n 7 --marked 3 --t-max {t_max} --dt 0.5".split()
        if walk.endswith("discrete"):
            base = base[:-2]
        series = {}
        for mode in cli.MODES:
            out = rows(cli.run(base + ["--mode", mode]))
            series[mode] = [float(r["success"]) for r in out]
            assert all(abs(float(r["conserved"]) - 1) <= 1e-9 for r in out)
        assert series["full"] == pytest.approx(series["subspace"], abs=1e-10)
        assert series["full"] == pytest.approx(series["closed"], abs=1e-10)

    def test_header_and_line_endings(self):
        text = cli.run(SIMULATE_EXAMPLES[0].split())
        assert text.startswith("t,success,conserved\n")
        assert "\r" not in text

    def test_json_schema(self):
        payload = json.loads(cli.run(SIMULATE_EXAMPLES[0].split() + ["--format", "json"]))
        assert set(payload) == {"config", "samples"}
        assert payload["config"]["walk"] == "qw-discrete"
        assert payload["config"]["marked"] == 2
        assert payload["samples"][2] == [2, 0.694444444444, 1]

    def test_twelve_significant_digits(self):
        out = cli.run("simulate --walk rw-continuous --n 3 --t-max 1 --dt 1 --mode closed".split())
        value = out.strip().splitlines()[-1].split(",")[1]
        assert value == format(1 - (2 / 3) * math.exp(-1 / 3), ".12g")

    def test_non_critical_gamma_note(self, capsys):
        code = cli.main("simulate --walk qw-continuous --n 9 --t-max 2 --gamma 0.3 --format json".split())
        captured = capsys.readouterr()
        assert code == 0
        assert "not the critical value" in captured.err
        assert json.loads(captured.out)["config"]["gamma_critical"] is False

    def test_default_gamma_is_critical(self):
        payload = json.loads(cli.run("simulate --walk qw-continuous --n 9 --t-max 2 --format json".split()))
        assert payload["config"]["gamma_critical"] is True

    def test_output_file(self, tmp_path):
        target = tmp_path / "series.csv"
        code = cli.main(SIMULATE_EXAMPLES[1].split() + ["--output", str(target)])
        assert code == 0
        assert target.read_text() == cli.run(SIMULATE_EXAMPLES[1].split())


class TestRuntime:
    def test_rw_discrete(self):
        (rec,) = rows(cli.run("runtime --walk rw-discrete --n 4 --epsilon 0.1".split()))
        assert abs(float(rec["t"]) - 4.969) <= 0.001
        assert int(rec["steps"]) == 5
        assert float(rec["success_at_steps"]) >= 0.9

    def test_qw_discrete(self):
        (rec,) = rows(cli.run("runtime --walk qw-discrete --n 100".split()))
        assert int(rec["t"]) == 12
        assert abs(float(rec["success"]) - 0.59) <= 0.01

    def test_qw_discrete_repetition(self):
        (rec,) = rows(cli.run("runtime --walk qw-discrete --n 100 --epsilon 0.25".split()))
        assert int(rec["runs"]) == 2 and float(rec["total_steps"]) == 24

    def test_qw_continuous(self):
        (rec,) = rows(cli.run("runtime --walk qw-continuous --n 100".split()))
        assert float(rec["t"]) == pytest.approx(15.70796, abs=1e-5)
        assert float(rec["success"]) == pytest.approx(1.0, abs=1e-12)

    def test_repeated_n(self):
        out = rows(cli.run("runtime --walk rw-continuous --n 4 --n 16 --n 64 --epsilon 0.1".split()))
        assert [int(r["n"]) for r in out] == [4, 16, 64]
        assert all(float(r["success"]) == pytest.approx(0.9, abs=1e-11) for r in out)


class TestTable:
    def test_n4_json(self):
        payload = json.loads(cli.run("table --n 4 --epsilon 0.1 --format json".split()))
        table = payload["table"]
        overall = [table["Overall Runtime"][w] for w in cli.WALKS]
        assert overall == ["O(N)", "O(N)", "O(sqrt(N))", "O(sqrt(N))"]
        assert table["Probability and Runtime"]["qw-continuous"]["runtime"] == pytest.approx(math.pi, abs=1e-11)

    def test_n2_marker(self):
        payload = json.loads(cli.run("table --n 2 --format json".split()))
        assert payload["table"]["Notes"]["qw-discrete"] == ["requires N >= 3"]
        assert payload["config"]["epsilon"] == 0.1
        assert payload["table"]["Asymptotic Prob. and Runtime"]["rw-discrete"]["runtime"] is not None

    def test_n100_probability(self):
        out = rows(cli.run("table --n 100 --epsilon 0.1".split()))
        cell = next(r for r in out if r["property"] == "Probability and Runtime: probability")
        assert abs(float(cell["qw-discrete"]) - 0.59) <= 0.01

    def test_csv_columns(self):
        text = cli.run("table --n 8".split())
        assert text.splitlines()[0] == "property,rw-discrete,rw-continuous,qw-discrete,qw-continuous"


class TestDelta:
    def test_decreasing(self):
        out = rows(cli.run("delta --n 4 --n 20 --n 40".split()))
        values = [float(r["delta_max"]) for r in out]
        assert values[0] > values[1] > values[2]
        assert values[0] == pytest.approx(0.176, abs=5e-4)

    def test_asymptote_column(self):
        for r in rows(cli.run("delta --n 4 --n 20 --n 40".split())):
            n = int(r["n"])
            assert r["asymptote"] == format(3 / (2 * math.e * n), ".12g")


class TestSample:
    def test_seeded(self):
        args = "sample --walk qw-continuous --n 16 --t-max 6.283 --seed 7 --shots 25".split()
        a, b = cli.run(args), cli.run(args)
        assert a == b
        shots = rows(a)
        assert len(shots) == 25 and all(1 <= int(r["vertex"]) <= 16 for r in shots)

    def test_peak_finds_marked(self):
        out = rows(cli.run("sample --walk qw-continuous --n 16 --marked 5 --t-max 6.283185307179586 --seed 1 --shots 10".split()))
        assert {int(r["vertex"]) for r in out} == {5}


class TestErrors:
    @pytest.mark.parametrize("args, needle", [
        ("simulate --walk qw-discrete --n 2 --t-max 3", "n >= 3"),
        ("simulate --walk rw-discrete --n 4 --t-max 2.5", "integer"),
        ("simulate --walk rw-continuous --n 4 --t-max 1 --dt 0", "dt"),
        ("simulate --walk rw-discrete --n 4 --marked 9 --t-max 2", "marked"),
        ("runtime --walk rw-discrete --n 4", "--epsilon"),
        ("runtime --walk rw-discrete --n 4 --epsilon 0.9", "eps"),
        ("runtime --walk rw-discrete --n 2 --epsilon 0.1", "one step"),
        ("simulate --walk qw-continuous --n 4 --t-max 1 --gamma 0.3 --mode closed", "critical"),
        ("delta --n 2", "n >= 3"),
        ("table --n 4 --n 5", "exactly one"),
        ("bogus", "invalid choice"),
        ("", "subcommand"),
        ("simulate --n 4 --t-max 1", "--walk"),
    ])
    def test_one_line_diagnostic(self, args, needle, capsys):
        code = cli.main(args.split())
        err = capsys.readouterr().err
        assert code != 0
        assert err.count("\n") == 1 and err.startswith("walksearch: error:")
        assert needle in err

    def test_subprocess_exit_code(self):
        proc = invoke("simulate --walk qw-discrete --n 2 --t-max 3")
        assert proc.returncode == 2
        assert proc.stdout == ""
        assert len(proc.stderr.strip().splitlines()) == 1


class TestDeterminism:
    @pytest.mark.parametrize("args", SIMULATE_EXAMPLES + [
        "table --n 16 --format json",
        "delta --n 4 --n 20 --format json",
        "sample --walk rw-discrete --n 9 --t-max 4 --seed 11 --shots 30",
    ])
    def test_byte_identical(self, args):
        first, second = invoke(args), invoke(args)
        assert first.returncode == 0
        assert first.stdout.encode() == second.stdout.encode()
