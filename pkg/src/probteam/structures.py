"""Finite structures, assignments, plain teams and probabilistic teams.

Domain elements are the integers ``0..n-1``. Weights are exact
:class:`fractions.Fraction` values; floats never enter the arithmetic.
Probabilistic teams are semantically maximal over their variable set but
stored sparsely: an assignment missing from the weight map has weight 0.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Union

from .errors import NonemptyRequired, VarsNotInDomain

Weight = Fraction
WeightLike = Union[int, str, Fraction]


def as_weight(value: WeightLike) -> Fraction:
    """Coerce an int, ``"p/q"`` string or Fraction into a nonnegative weight."""
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, float):
        raise TypeError("floating point weights are not accepted; use 'p/q'")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"weight {value!r} must be an integer or p/q")
        w = Fraction(text)
    else:
        w = Fraction(value)
    if w < 0:
        raise ValueError(f"weight {value!r} is negative")
    return w


@dataclass(frozen=True)
class Structure:
    domain_size: int
    relations: Mapping[str, tuple[int, frozenset]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("domain_size must be at least 1")
        rels = {}
        for name, (arity, tuples) in dict(self.relations).items():
            if name == "=":
                raise ValueError("equality is implicit and cannot be stored")
            tuples = frozenset(tuple(t) for t in tuples)
            for t in tuples:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} in {name} does not have arity {arity}")
                if any(not 0 <= a < self.domain_size for a in t):
                    raise ValueError(f"tuple {t} in {name} leaves the domain")
            rels[name] = (arity, tuples)
        for name, a in dict(self.constants).items():
            if not 0 <= a < self.domain_size:
                raise ValueError(f"constant {name}={a} leaves the domain")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "constants", dict(self.constants))

    @classmethod
    def build(cls, domain_size, relations=None, constants=None):
        """Build from ``{name: iterable of tuples}``; arity is read off the tuples.

        An empty relation must be given as ``(arity, [])``.
        """
        rels = {}
        for name, spec in (relations or {}).items():
            if isinstance(spec, tuple) and len(spec) == 2 and isinstance(spec[0], int):
                rels[name] = (spec[0], spec[1])
                continue
            tuples = [tuple(t) if not isinstance(t, int) else (t,) for t in spec]
            if not tuples:
                raise ValueError(f"cannot infer the arity of empty relation {name}")
            rels[name] = (len(tuples[0]), tuples)
        return cls(domain_size, rels, dict(constants or {}))

    @property
    def domain(self) -> range:
        return range(self.domain_size)

    def arity(self, name: str) -> int:
        return self.relations[name][0]

    def holds(self, name: str, args: tuple) -> bool:
        return tuple(args) in self.relations[name][1]


class Assignment(Mapping):
    """An immutable map from variable names to domain elements.

    Two assignments are equal when they bind the same variables to the same
    values; ordering and hashing go through the sorted (variable, value) pairs.
    """

    __slots__ = ("_pairs", "_map", "_hash")

    def __init__(self, bindings: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        self._map = dict(items)
        self._pairs = tuple(sorted(self._map.items()))
        self._hash = hash(self._pairs)

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self):
        return iter(v for v, _ in self._pairs)

    def __len__(self):
        return len(self._pairs)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self._pairs == other._pairs
        return NotImplemented

    def __lt__(self, other):
        return self._pairs < other._pairs

    def __repr__(self):
        inner = ", ".join(f"{v}={a}" for v, a in self._pairs)
        return f"Assignment({inner})"

    @property
    def pairs(self):
        return self._pairs

    @property
    def variables(self) -> frozenset:
        return frozenset(self._map)

    def values_for(self, variables: Iterable[str]) -> tuple:
        return tuple(self._map[v] for v in variables)

    def extend(self, var: str, value: int) -> Assignment:
        """``s(a/x)``: bind (or rebind) ``var`` to ``value``."""
        m = dict(self._map)
        m[var] = value
        return Assignment(m)

    def restrict(self, variables: Iterable[str]) -> Assignment:
        keep = set(variables)
        return Assignment((v, a) for v, a in self._pairs if v in keep)


def all_assignments(variables: Iterable[str], domain_size: int) -> Iterator[Assignment]:
    """Every assignment over ``variables``, in lexicographic order of values."""
    vs = tuple(sorted(variables))
    for values in product(range(domain_size), repeat=len(vs)):
        yield Assignment(zip(vs, values))


@dataclass(frozen=True)
class PlainTeam:
    variables: frozenset
    members: frozenset

    def __init__(self, variables: Iterable[str], members: Iterable[Mapping] = ()):
        vs = frozenset(variables)
        ms = frozenset(m if isinstance(m, Assignment) else Assignment(m) for m in members)
        for m in ms:
            if m.variables != vs:
                raise ValueError(f"{m} is not an assignment over {sorted(vs)}")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "members", ms)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __bool__(self):
        return bool(self.members)

    @classmethod
    def from_support(cls, team: ProbTeam) -> PlainTeam:
        return cls(team.variables, team.support())

    def extend(self, value: int, var: str) -> PlainTeam:
        """``X(a/x)``."""
        return PlainTeam(self.variables | {var}, (s.extend(var, value) for s in self.members))


class ProbTeam:
    """A finite map from assignments over ``variables`` to nonnegative weights."""

    __slots__ = ("variables", "_weights")

    def __init__(self, variables: Iterable[str], weights: Mapping | Iterable = ()):
        vs = frozenset(variables)
        items = weights.items() if isinstance(weights, Mapping) else weights
        table: dict[Assignment, Fraction] = {}
        for s, w in items:
            s = s if isinstance(s, Assignment) else Assignment(s)
            if s.variables != vs:
                raise ValueError(f"{s} is not an assignment over {sorted(vs)}")
            w = as_weight(w)
            if w:
                table[s] = table.get(s, Fraction(0)) + w
        self.variables = vs
        self._weights = table

    @classmethod
    def from_rows(cls, variables, rows: Iterable[tuple[tuple, WeightLike]]) -> ProbTeam:
        """``rows`` pairs value tuples (in the order of ``variables``) with weights."""
        order = tuple(variables)
        if len(set(order)) != len(order):
            raise ValueError("duplicate variable in team header")
        return cls(order, ((Assignment(zip(order, vals)), w) for vals, w in rows))

    @classmethod
    def uniform(cls, variables, domain_size, weight: WeightLike = 1) -> ProbTeam:
        return cls(variables, ((s, weight) for s in all_assignments(variables, domain_size)))

    def __getitem__(self, s: Mapping) -> Fraction:
        s = s if isinstance(s, Assignment) else Assignment(s)
        return self._weights.get(s, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, ProbTeam):
            return NotImplemented
        return self.variables == other.variables and self._weights == other._weights

    def __hash__(self):
        return hash((self.variables, frozenset(self._weights.items())))

    def __repr__(self):
        rows = ", ".join(f"{s!r}: {w}" for s, w in self.items())
        return f"ProbTeam({sorted(self.variables)}, {{{rows}}})"

    def items(self):
        """Nonzero (assignment, weight) pairs in canonical order."""
        return sorted(self._weights.items())

    @property
    def weights(self) -> dict:
        return dict(self._weights)

    def total(self) -> Fraction:
        return sum(self._weights.values(), Fraction(0))

    def support(self) -> frozenset:
        return frozenset(self._weights)

    def is_empty(self) -> bool:
        return not self._weights


def support(team: ProbTeam) -> frozenset:
    return team.support()


def distr(team: ProbTeam) -> ProbTeam:
    """Scale a nonempty team so its weights sum to exactly 1."""
    total = team.total()
    if total == 0:
        raise NonemptyRequired("distr of a team with empty support")
    return ProbTeam(team.variables, ((s, w / total) for s, w in team.items()))


def extend(team: ProbTeam, value: int, var: str) -> ProbTeam:
    """``X(a/x)``: the weight of ``s'`` is the total weight of all ``t`` with ``t(a/x) = s'``.

    For a fresh ``var`` every row keeps its weight and moves to ``var = value``;
    for a variable already in the domain rows that differ only at ``var`` collapse.
    """
    out: dict[Assignment, Fraction] = {}
    for s, w in team.items():
        t = s.extend(var, value)
        out[t] = out.get(t, Fraction(0)) + w
    return ProbTeam(team.variables | {var}, out)


def restrict(team: ProbTeam, variables: Iterable[str]) -> ProbTeam:
    """Marginalise onto ``variables``; each projection carries the sum of its extensions."""
    keep = frozenset(variables)
    if not keep <= team.variables:
        raise VarsNotInDomain(keep - team.variables, sorted(team.variables))
    out: dict[Assignment, Fraction] = {}
    for s, w in team.items():
        t = s.restrict(keep)
        out[t] = out.get(t, Fraction(0)) + w
    return ProbTeam(keep, out)


def rename_team(team: ProbTeam, mapping: Mapping[str, str]) -> ProbTeam:
    """Rename team variables, e.g. ``X_{x/w}``; the mapping must be injective."""
    targets = [mapping.get(v, v) for v in team.variables]
    if len(set(targets)) != len(targets):
        raise ValueError("renaming merges two team variables")
    return ProbTeam(
        targets,
        ((Assignment((mapping.get(v, v), a) for v, a in s.pairs), w) for s, w in team.items()),
    )
