"""JSON reading and writing for structures, teams and weighted structures.

Weights are written as exact strings (``"2"``, ``"1/3"``) and read from
integers or such strings; decimal notation is rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .metafinite import RStructure
from .structures import ProbTeam, Structure, as_weight


def _load(source):
    if isinstance(source, dict):
        return source
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return json.loads(source)
    if isinstance(source, (str, Path)):
        return json.loads(Path(source).read_text())
    return json.load(source)


def _weight(value):
    if isinstance(value, float):
        raise ValueError(f"weight {value!r} must be an integer or a 'p/q' string")
    return as_weight(value)


def structure_from_json(data) -> Structure:
    relations = {}
    for name, spec in data.get("relations", {}).items():
        if isinstance(spec, dict):
            relations[name] = (int(spec["arity"]), [tuple(t) for t in spec.get("tuples", [])])
        else:
            tuples = [tuple(t) for t in spec]
            if not tuples:
                raise ValueError(f"relation {name} is empty; give it as {{arity, tuples}}")
            relations[name] = (len(tuples[0]), tuples)
    return Structure(int(data["domain_size"]), relations, dict(data.get("constants", {})))


def structure_to_json(A: Structure) -> dict:
    rels = {}
    for name in sorted(A.relations):
        arity, tuples = A.relations[name]
        rows = [list(t) for t in sorted(tuples)]
        rels[name] = rows if rows else {"arity": arity, "tuples": []}
    out = {"domain_size": A.domain_size, "relations": rels}
    if A.constants:
        out["constants"] = dict(sorted(A.constants.items()))
    return out


def team_from_json(data) -> ProbTeam:
    variables = list(data["variables"])
    rows = [(tuple(r["assignment"]), _weight(r["weight"])) for r in data.get("rows", [])]
    for vals, _ in rows:
        if len(vals) != len(variables):
            raise ValueError(f"row {list(vals)} does not match variables {variables}")
    return ProbTeam.from_rows(variables, rows)


def team_to_json(team: ProbTeam, variables=None) -> dict:
    order = list(variables) if variables is not None else sorted(team.variables)
    return {
        "variables": order,
        "rows": [
            {"assignment": list(s.values_for(order)), "weight": str(w)} for s, w in team.items()
        ],
    }


def rstructure_from_json(data) -> RStructure:
    base = structure_from_json(data)
    fn = data.get("weight_fn") or {"name": "f", "arity": 0, "rows": []}
    weights = {tuple(r["tuple"]): _weight(r["weight"]) for r in fn.get("rows", [])}
    return RStructure(base, fn.get("name", "f"), int(fn["arity"]), weights)


def rstructure_to_json(rs: RStructure) -> dict:
    out = structure_to_json(rs.base)
    out["weight_fn"] = {
        "name": rs.fname,
        "arity": rs.arity,
        "rows": [{"tuple": list(k), "weight": str(w)} for k, w in sorted(rs.weights.items())],
    }
    return out


def load_structure(source) -> Structure:
    return structure_from_json(_load(source))


def load_team(source) -> ProbTeam:
    return team_from_json(_load(source))


def load_rstructure(source) -> RStructure:
    return rstructure_from_json(_load(source))


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"
