import csv
import io
import json
import subprocess
import sys

import pytest

from conftest import run_cli, validate
from minorbranch.branching import multiplicity_pattern

JSON_COMMANDS = [
    (["branch", "--alpha", "2,1,0"], "branching_table.schema.json"),
    (["branch", "--alpha", "6,4,3,0", "--check"], "branching_table.schema.json"),
    (["dim", "--alpha", "6,4,3,0"], "weight_query.schema.json"),
    (["gt-count", "--alpha", "2,1", "--dynkin"], "weight_query.schema.json"),
    (["maxmult", "--alpha", "6,4,3,0"], "weight_query.schema.json"),
    (["count", "--alpha", "6,4,3,0"], "weight_query.schema.json"),
    (["support", "--alpha", "4,1,0"], "support.schema.json"),
    (["support", "--alpha", "4,1,0", "--gamma", "2,0"], "support.schema.json"),
    (["minor-test", "--alpha", "4,1,0", "--samples", "20000"], "density_report.schema.json"),
    (["verify", "oracles", "--max-weight", "6", "--n", "3"], "verify_report.schema.json"),
    (["verify", "kirillov", "--trials", "10"], "verify_report.schema.json"),
    (["verify", "kirillov", "--trials", "5", "--alpha", "3,1,0"], "verify_report.schema.json"),
    (["verify", "lattice-sum", "--n", "3", "--cutoff", "50"], "verify_report.schema.json"),
    (["verify", "lattice-sum", "--n", "4", "--cutoff", "20"], "verify_report.schema.json"),
    (["verify", "minor", "--samples", "20000"], "verify_report.schema.json"),
]

CSV_COMMANDS = [
    ["branch", "--alpha", "6,4,3,0", "--format", "csv"],
    ["kbar", "--alpha", "5,3,1,0", "--step", "0.5"],
    ["kbar", "--alpha", "4,1,0", "--step", "0.5", "--signed"],
    ["kbar", "--alpha", "4,1,0", "--gamma", "2,0"],
    ["stretch", "--alpha", "2,1,0", "--gamma", "1,0", "--s-max", "10"],
    ["pattern", "--alpha", "6,4,3,0", "--s", "3"],
    ["fig1"],
    ["fig2"],
    ["fig3"],
    ["fig4"],
    ["fig", "fig1", "--step", "0.5"],
    ["minor-sample", "--alpha", "4,1,0", "--samples", "500", "--seed", "42"],
]


def rows(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize("argv, schema", JSON_COMMANDS, ids=lambda v: " ".join(v) if isinstance(v, list) else v)
def test_json_outputs_validate(argv, schema):
    code, out, _ = run_cli(*argv)
    assert code == 0
    validate(json.loads(out), schema)


@pytest.mark.parametrize("argv", CSV_COMMANDS, ids=" ".join)
def test_csv_outputs_have_headers(argv):
    code, out, _ = run_cli(*argv)
    assert code == 0
    table = rows(out)
    assert table[0] and all(not c.replace(".", "").replace("-", "").isdigit() for c in table[0])
    assert len(table) > 1
    assert all(len(r) == len(table[0]) for r in table)


@pytest.mark.parametrize("argv", [a for a, _ in JSON_COMMANDS] + CSV_COMMANDS, ids=lambda v: " ".join(v))
def test_byte_determinism(argv):
    assert run_cli(*argv) == run_cli(*argv)


@pytest.mark.parametrize(
    "argv",
    [
        ["minor-sample", "--alpha", "4,1,0", "--samples", "10000", "--seed", "3"],
        ["minor-test", "--alpha", "4,1,0", "--samples", "10000", "--seed", "3"],
        ["verify", "oracles", "--max-weight", "5"],
        ["verify", "minor", "--samples", "10000"],
    ],
    ids=lambda v: v[0] + " " + v[1],
)
def test_parallelism_does_not_change_output(argv):
    assert run_cli(*argv, "--workers", "1") == run_cli(*argv, "--workers", "4")


def test_branch_su3_table():
    code, out, _ = run_cli("branch", "--alpha", "2,1,0")
    obj = json.loads(out)
    assert code == 0
    assert [(e["gamma"]["young"], e["mult"]) for e in obj["entries"]] == [([0, 0], 1), ([1, 0], 2), ([2, 0], 1)]


def test_branch_check_su4():
    code, out, _ = run_cli("branch", "--alpha", "6,4,3,0", "--check")
    obj = json.loads(out)
    assert code == 0 and len(obj["entries"]) == 18
    assert obj["oracles"] == {"gt": True, "schur": True}


def test_branch_trivial():
    code, out, _ = run_cli("branch", "--alpha", "0,0,0")
    assert code == 0
    assert json.loads(out)["entries"] == [{"gamma": {"young": [0, 0]}, "dynkin": [0], "mult": 1, "dim": 1}]


def test_branch_auto_normalizes_with_notice():
    code, out, err = run_cli("branch", "--alpha", "3,2,1")
    assert code == 0
    assert "normalized" in err
    assert json.loads(out)["alpha"] == {"young": [2, 1, 0]}


def test_branch_dynkin_input():
    assert run_cli("branch", "--alpha", "2,1,3", "--dynkin")[1] == run_cli("branch", "--alpha", "6,4,3,0")[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["branch"],
        ["branch", "--alpha", "x,1"],
        ["branch", "--alpha", "1,2,0"],
        ["fig", "fig9"],
        ["nope"],
        ["kbar", "--alpha", "4,1,0", "--gamma", "1,0,0"],
        ["kbar", "--alpha", "4,1,2"],
        ["support", "--alpha", "4,1,1"],
        ["minor-sample", "--alpha", "4,1,0", "--samples", "0"],
        ["minor-test", "--alpha", "4,1,1", "--samples", "100"],
        ["verify", "everything"],
        ["verify", "lattice-sum", "--n", "5"],
    ],
    ids=" ".join,
)
def test_usage_errors_exit_2(argv):
    code, out, err = run_cli(*argv)
    assert code == 2
    assert err


def test_failed_verification_exits_1():
    code, out, _ = run_cli("verify", "lattice-sum", "--n", "3", "--cutoff", "1")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_control_fails_with_exit_1():
    code, out, _ = run_cli("minor-test", "--alpha", "4,1,0", "--samples", "50000", "--control")
    assert code == 1
    assert json.loads(out)["passed"] is False


@pytest.mark.parametrize("cmd", ["branch", "dim", "gt-count", "kbar", "support", "maxmult", "count", "stretch",
                                 "pattern", "fig1", "fig2", "fig3", "fig4", "fig", "minor-sample", "minor-test", "verify"])
def test_help(cmd):
    code, out, _ = run_cli(cmd, "--help")
    assert code == 0
    assert "usage" in out


@pytest.mark.parametrize(
    "cmd, needles",
    [
        ("fig1", ["[4, 1, 0]", "5.0", "0.01"]),
        ("fig2", ["[5, 3, 1, 0]"]),
        ("fig3", ["[6, 4, 3, 0]", "[1, 2, 3]"]),
        ("fig4", ["[21, 14, 10, 0]"]),
    ],
)
def test_figure_help_shows_defaults(cmd, needles):
    out = run_cli(cmd, "--help")[1]
    for n in needles:
        assert n in out


def test_fig1_dataset():
    table = rows(run_cli("fig1")[1])
    assert table[0] == ["gamma_1", "kbar"]
    data = {r[0]: float(r[1]) for r in table[1:]}
    assert len(data) == 1001
    assert data["2"] == 1 and data["0"] == 0
    support = [float(g) for g, v in data.items() if v != 0]
    assert max(abs(g) for g in support) < 4
    assert data["3.99"] > 0 and data["4"] == 0 and data["-4"] == 0


def test_fig_alias_matches_direct():
    assert run_cli("fig", "fig2", "--step", "0.5") == run_cli("fig2", "--step", "0.5")


def test_fig2_max_is_one():
    table = rows(run_cli("fig2")[1])
    assert table[0] == ["gamma_1", "gamma_2", "kbar"]
    assert max(float(r[2]) for r in table[1:]) == 1


def test_fig3_matches_patterns():
    table = rows(run_cli("fig3")[1])
    assert table[0] == ["s", "gamma_dynkin_1", "gamma_dynkin_2", "mult"]
    for s in (1, 2, 3):
        got = [((int(r[1]), int(r[2])), int(r[3])) for r in table[1:] if r[0] == str(s)]
        assert got == multiplicity_pattern((6, 4, 3, 0), s)


def test_fig4_layers():
    table = rows(run_cli("fig4")[1])
    assert table[0] == ["gamma_dynkin_1", "gamma_dynkin_2", "kbar"]
    values = {(float(r[0]), float(r[1])): float(r[2]) for r in table[1:]}
    level4 = {p for p, v in values.items() if v >= 4}
    level3 = {p for p, v in values.items() if v >= 3}
    assert level4 and level4 <= level3
    assert max(values.values()) == 4
    # integer nodes reproduce the s = 3 multiplicity layers
    integer = {(int(a), int(b)): int(v) for (a, b), v in values.items() if a.is_integer() and b.is_integer() and v}
    assert integer == dict(multiplicity_pattern((6, 4, 3, 0), 3))


def test_stretch_csv():
    table = rows(run_cli("stretch", "--alpha", "2,1,0", "--gamma", "1,0", "--s-max", "50")[1])
    assert table[0] == ["s", "multiplicity"]
    assert [(int(a), int(b)) for a, b in table[1:]] == [(s, s + 1) for s in range(1, 51)]


def test_pattern_csv():
    table = rows(run_cli("pattern", "--alpha", "6,4,3,0", "--s", "1")[1])
    assert table[0] == ["gamma_dynkin_1", "gamma_dynkin_2", "mult"]
    assert len(table) == 19


def test_kbar_point_and_decimal_grid():
    table = rows(run_cli("kbar", "--alpha", "4,1,0", "--gamma", "2,0")[1])
    assert table == [["gamma_1", "gamma_2", "value"], ["2", "0", "1"]]
    grid = rows(run_cli("kbar", "--alpha", "4,1,0", "--step", "0.1")[1])
    assert grid[4][0] == "0.3"


def test_minor_sample_out_file(tmp_path):
    out = tmp_path / "betas.csv"
    code, stdout, _ = run_cli("minor-sample", "--alpha", "4,1,0", "--samples", "100", "--seed", "42", "--out", out)
    assert code == 0 and stdout == ""
    text = out.read_text()
    assert text == run_cli("minor-sample", "--alpha", "4,1,0", "--samples", "100", "--seed", "42")[1]
    assert text.splitlines()[0] == "beta_1,beta_2"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "minorbranch", "dim", "--alpha", "2,1,0"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["dim"] == 8
