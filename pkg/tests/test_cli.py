import json

import pytest

from probteam.cli import RunConfig, build_parser, main


@pytest.fixture
def files(tmp_path):
    paths = {
        "structure": {"domain_size": 2, "relations": {"P": [[1]]}},
        "team": {
            "variables": ["x"],
            "rows": [{"assignment": [0], "weight": "1"}, {"assignment": [1], "weight": "2"}],
        },
        "empty": {"variables": ["x"], "rows": []},
        "rstructure": {
            "domain_size": 2,
            "relations": {},
            "weight_fn": {
                "name": "f",
                "arity": 1,
                "rows": [{"tuple": [0], "weight": "1"}, {"tuple": [1], "weight": "2"}],
            },
        },
    }
    out = {}
    for name, data in paths.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_true(files, capsys):
    code, out, _ = run(capsys, "eval", "--structure", files["structure"], "--team", files["team"], "(x=0) <= (x=1)")
    assert (code, out) == (0, "true\n")


def test_eval_false_still_exits_zero(files, capsys):
    code, out, _ = run(capsys, "eval", "--structure", files["structure"], "--team", files["team"], "P(x)")
    assert (code, out) == (0, "false\n")


def test_malformed_formula(files, capsys):
    code, _, err = run(capsys, "eval", "--structure", files["structure"], "--team", files["team"], "(x=0 <=")
    assert code == 2
    assert "^" in err


def test_dialect_violation(files, capsys):
    code, _, err = run(
        capsys, "eval", "--structure", files["structure"], "--team", files["team"],
        "--dialect", "FOPT_leq", "ci(x=x; x=0; x=1)",
    )
    assert code == 2 and "error" in err


def test_empty_team(files, capsys):
    code, out, _ = run(capsys, "eval", "--structure", files["structure"], "--team", files["empty"], "!x=x")
    assert (code, out) == (0, "true\n")


def test_missing_file(files, capsys):
    code, _, _ = run(capsys, "eval", "--structure", "/nonexistent.json", "--team", files["team"], "x=x")
    assert code == 2


def test_eval_fot(files, capsys):
    code, out, _ = run(
        capsys, "eval", "--structure", files["structure"], "--team", files["team"], "--dialect", "FOT", "inc(x; x)"
    )
    assert (code, out) == (0, "true\n")


def test_eval_mf(files, capsys):
    sentence = "SUM{u | u=u}(f(u)) * SUM{u | u=u}(f(u)) <= SUM{x | x=x}(SUM{u | u=u}(f(u)))"
    code, out, _ = run(capsys, "eval-mf", "--rstructure", files["rstructure"], sentence)
    assert (code, out) == (0, "false\n")


def test_eval_ffp(files, capsys):
    code, out, _ = run(capsys, "eval-ffp", "--rstructure", files["rstructure"], "f(x) + f(x)", "--assign", "x=1")
    assert (code, out) == (0, "4\n")


def test_translate_metafinite(capsys):
    code, out, _ = run(capsys, "translate", "--to", "metafinite", "(x=0) <= (x=1)")
    assert (code, out) == (0, "SUM{u | u=#0}(f(u)) <= SUM{u | u=#1}(f(u))\n")


def test_translate_smt2(files, capsys):
    code, out, _ = run(capsys, "translate", "--to", "smt2", "--structure", files["structure"], "(x=0) <= (x=1)")
    assert code == 0 and out.startswith("(set-logic LRA)") and out.endswith("(check-sat)\n")


def test_translate_real_needs_structure(capsys):
    code, _, err = run(capsys, "translate", "--to", "real", "(x=0) <= (x=1)")
    assert code == 2 and "--structure" in err


def test_translate_to_fopt_outside_fragment(capsys):
    code, _, err = run(capsys, "translate", "--to", "fopt", "f(x) * f(y) <= f(x)")
    assert code == 2 and "SUM*" in err


def test_translate_back_to_team(capsys):
    code, out, _ = run(capsys, "translate", "--to", "fopt", "SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u))")
    assert (code, out) == (0, "(v1=#0) <= (v1=#1)\n")


def test_export_to_file(files, tmp_path, capsys):
    target = tmp_path / "out.smt2"
    code, _, _ = run(capsys, "export", "--structure", files["structure"], "-o", str(target), "(x=0) <= (x=1)")
    assert code == 0 and target.read_text().startswith("(set-logic LRA)")


def test_verify_reports_and_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "scaling", "--cases", "20", "--seed", "7")
    second = run(capsys, "verify", "--suite", "scaling", "--cases", "20", "--seed", "7")
    assert first == second
    assert first[0] == 0
    assert first[1] == "suite scaling (seed 7): 20/20 passed\n"


def test_verify_notransl(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "notransl", "--cases", "1")
    assert code == 0 and "1/1 passed" in out


def test_run_config_from_args():
    ns = build_parser().parse_args(["verify", "--suite", "toffp", "--seed", "3", "--cases", "5"])
    cfg = RunConfig.from_args(ns)
    assert (cfg.command, cfg.suite, cfg.seed, cfg.cases) == ("verify", "toffp", 3, 5)
