"""Command-line front end.

    probteam eval --structure A.json --team X.json "(x=0) <= (x=1)"
    probteam eval-mf --rstructure R.json "SUM{u | u=u}(f(u)) <= SUM{u | !u=u}(f(u))"
    probteam eval-ffp --rstructure R.json "max{x}(f(x))"
    probteam translate --to metafinite "(x=0) <= (x=1)"
    probteam export --structure A.json "(x=0) <= (x=1)" -o out.smt2
    probteam verify --suite scaling --cases 200 --seed 7

Input errors (unreadable files, syntax errors, dialect violations) exit
with status 2; a failed verification exits with 1.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import DialectError, FormulaSyntaxError, ProbTeamError
from .evaluate import eval_fopt, eval_fot
from .ffp import UNDEF, FfpEvaluator
from .harness.generators import GenConfig
from .harness.suites import SUITES, run_suite
from .io import load_rstructure, load_structure, load_team
from .metafinite import eval_mf, in_sum_star
from .structures import Assignment, PlainTeam
from .syntax import Dialect, classify, parse, parse_ffp, parse_mf, to_text
from .translate import (
    cpi_to_ci_and_leq,
    export_smtlib,
    fopt_to_metafinite,
    fopt_to_real,
    fot_to_fopt,
    metafinite_to_fopt,
    mf_to_ffp,
    structure_to_algebra,
)

TARGETS = ("fopt", "real", "metafinite", "ffp", "smt2")


@dataclass(frozen=True)
class RunConfig:
    command: str
    formula: str | None = None
    structure: str | None = None
    team: str | None = None
    rstructure: str | None = None
    dialect: str | None = None
    target: str | None = None
    output: str | None = None
    assign: str | None = None
    suite: str | None = None
    seed: int = 0
    cases: int = 100
    max_domain: int = 3
    max_depth: int = 4

    @classmethod
    def from_args(cls, ns) -> RunConfig:
        fields = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(ns).items() if k in fields})


def _formula_text(cfg):
    if cfg.formula == "-":
        return sys.stdin.read().strip()
    return cfg.formula


def _constants(structure):
    return tuple(structure.constants) if structure is not None else ()


def _assignment(text):
    if not text:
        return Assignment()
    pairs = []
    for part in text.split(","):
        name, _, value = part.partition("=")
        pairs.append((name.strip(), int(value)))
    return Assignment(pairs)


def _parse_team_or_mf(text, constants):
    """Team formula if it parses as one, otherwise a metafinite sentence."""
    try:
        return "team", parse(text, constants=constants)
    except FormulaSyntaxError as team_err:
        try:
            return "mf", parse_mf(text, constants)
        except FormulaSyntaxError as mf_err:
            raise max(team_err, mf_err, key=lambda e: e.position) from None


def cmd_eval(cfg, out):
    A = load_structure(cfg.structure)
    X = load_team(cfg.team)
    phi = parse(_formula_text(cfg), cfg.dialect, _constants(A))
    if classify(phi) is Dialect.FOT or cfg.dialect in ("FOT", "FOTdown"):
        verdict = eval_fot(A, PlainTeam.from_support(X), phi)
    else:
        verdict = eval_fopt(A, X, phi)
    print("true" if verdict else "false", file=out)
    return 0


def cmd_eval_mf(cfg, out):
    rs = load_rstructure(cfg.rstructure)
    phi = parse_mf(_formula_text(cfg), _constants(rs.base))
    print("true" if eval_mf(rs, _assignment(cfg.assign), phi) else "false", file=out)
    return 0


def cmd_eval_ffp(cfg, out):
    rs = load_rstructure(cfg.rstructure)
    t = parse_ffp(_formula_text(cfg))
    ev = FfpEvaluator(structure_to_algebra(rs.base, rs))
    value = ev.evaluate(dict(_assignment(cfg.assign)), t)
    print("undef" if value is UNDEF else str(value), file=out)
    return 0


def _translate(cfg):
    A = load_structure(cfg.structure) if cfg.structure else None
    kind, phi = _parse_team_or_mf(_formula_text(cfg), _constants(A))
    target = cfg.target
    if kind == "mf":
        if target == "fopt":
            if not in_sum_star(phi):
                raise DialectError("only SUM* sentences translate back to team formulas")
            return to_text(metafinite_to_fopt(phi).formula) + "\n"
        if target == "ffp":
            return to_text(mf_to_ffp(phi)) + "\n"
        raise DialectError(f"no translation from metafinite formulas to {target}")
    dialect = classify(phi)
    if target == "fopt":
        if dialect is Dialect.FOPT_cpi:
            return to_text(cpi_to_ci_and_leq(phi)) + "\n"
        if dialect in (Dialect.FOT, Dialect.FOTdown):
            return to_text(fot_to_fopt(phi)) + "\n"
        raise DialectError(f"{dialect.value} formulas are already probabilistic team formulas")
    if dialect is Dialect.FOT:
        phi = fot_to_fopt(phi)
    if target == "metafinite":
        return to_text(fopt_to_metafinite(phi)) + "\n"
    if target == "ffp":
        return to_text(mf_to_ffp(fopt_to_metafinite(phi))) + "\n"
    if A is None:
        raise DialectError(f"--to {target} needs --structure")
    psi = fopt_to_real(A, phi)
    return export_smtlib(psi) if target == "smt2" else to_text(psi) + "\n"


def cmd_translate(cfg, out):
    out.write(_translate(cfg))
    return 0


def cmd_export(cfg, out):
    A = load_structure(cfg.structure)
    phi = parse(_formula_text(cfg), cfg.dialect, _constants(A))
    if classify(phi) is Dialect.FOT:
        phi = fot_to_fopt(phi)
    script = export_smtlib(fopt_to_real(A, phi))
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(script)
    else:
        out.write(script)
    return 0


def cmd_verify(cfg, out):
    gen = GenConfig(max_domain=cfg.max_domain, max_depth=cfg.max_depth)
    names = sorted(SUITES) if cfg.suite == "all" else [cfg.suite]
    status = 0
    for name in names:
        report = run_suite(name, cfg.seed, cfg.cases, gen)
        for line in report.lines():
            print(line, file=out)
        if not report.ok:
            status = 1
    return status


COMMANDS = {
    "eval": cmd_eval,
    "eval-mf": cmd_eval_mf,
    "eval-ffp": cmd_eval_ffp,
    "translate": cmd_translate,
    "export": cmd_export,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="probteam", description="Probabilistic team semantics toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    dialects = [d.value for d in Dialect]

    e = sub.add_parser("eval", help="evaluate a team formula on a probabilistic team")
    e.add_argument("--structure", required=True)
    e.add_argument("--team", required=True)
    e.add_argument("--dialect", choices=dialects)
    e.add_argument("formula", help="formula text, or - to read standard input")

    m = sub.add_parser("eval-mf", help="evaluate a metafinite formula on a weighted structure")
    m.add_argument("--rstructure", required=True)
    m.add_argument("--assign", help="free variable values, e.g. x=0,y=1")
    m.add_argument("formula")

    f = sub.add_parser("eval-ffp", help="evaluate a fixed-point term")
    f.add_argument("--rstructure", required=True)
    f.add_argument("--assign")
    f.add_argument("formula")

    t = sub.add_parser("translate", help="translate a formula into another logic")
    t.add_argument("--to", dest="target", choices=TARGETS, required=True)
    t.add_argument("--structure", help="needed for --to real and --to smt2")
    t.add_argument("formula")

    x = sub.add_parser("export", help="write the real-arithmetic sentence as SMT-LIB")
    x.add_argument("--structure", required=True)
    x.add_argument("--dialect", choices=dialects)
    x.add_argument("-o", "--output")
    x.add_argument("formula")

    v = sub.add_parser("verify", help="run a randomised property suite")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--max-domain", type=int, default=3, choices=(1, 2, 3))
    v.add_argument("--max-depth", type=int, default=4, choices=(1, 2, 3, 4))
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg, sys.stdout)
    except FormulaSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        print(err.caret(), file=sys.stderr)
        return 2
    except (ProbTeamError, OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
