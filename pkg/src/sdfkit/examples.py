"""Canonical worked instances.

Two hand-built two-scenario instances (the second with a random move on a
proper subdomain), their named choice families, information structures,
reference choices and adapted-choice tables, plus their action-path
encodings and the timing / up-and-out generator instances used by the CLI
builtins.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .action_path import (
    ActionPathSdf,
    PathOutcomes,
    TimeAxis,
    ActionSpace,
    build_action_path_sdf,
    product_outcomes,
    timing_outcomes,
    up_and_out_outcomes,
)
from .choice import Choice, Rcs
from .sdf import RandomMove, ScenarioSpace, Sdf
from .set_forest import SetForest
from .sigma_info import Eis, SubSigma

SCENARIOS = (1, 2)
KM = (1, 2)

# All maps Ω -> {1,2}, as dictionaries, constants first.
MAPS = tuple(
    {1: a, 2: b} for a, b in ((1, 1), (2, 2), (1, 2), (2, 1))
)


def _space() -> ScenarioSpace:
    return ScenarioSpace.discrete(SCENARIOS)


def simple_universe() -> frozenset:
    return frozenset((w, k, m) for w in SCENARIOS for k in KM for m in KM)


def simple_moves() -> dict:
    x0 = RandomMove.of(
        {w: frozenset((w, k, m) for k in KM for m in KM) for w in SCENARIOS}
    )
    xs = {
        k: RandomMove.of(
            {w: frozenset((w, k, m) for m in KM) for w in SCENARIOS}
        )
        for k in KM
    }
    return {"x0": x0, "x1": xs[1], "x2": xs[2]}


def build_simple() -> Sdf:
    universe = simple_universe()
    moves = simple_moves()
    nodes = set()
    for m in moves.values():
        nodes |= set(m.image)
    nodes |= {frozenset([w]) for w in universe}
    forest = SetForest.of(universe, nodes)
    projection = {x: next(iter(x))[0] for x in nodes}
    return Sdf.of(forest, _space(), projection, frozenset(moves.values()))


def variant_universe() -> frozenset:
    out = set(simple_universe()) - {(1, 2, 1), (1, 2, 2)}
    out.add((1, 2))
    return frozenset(out)


def variant_moves() -> dict:
    universe = variant_universe()
    x0 = RandomMove.of(
        {w: frozenset(v for v in universe if v[0] == w) for w in SCENARIOS}
    )
    x1 = RandomMove.of(
        {w: frozenset((w, 1, m) for m in KM) for w in SCENARIOS}
    )
    x2 = RandomMove.of({2: frozenset((2, 2, m) for m in KM)})
    return {"x0": x0, "x1": x1, "x2": x2}


def build_variant() -> Sdf:
    universe = variant_universe()
    moves = variant_moves()
    nodes = set()
    for m in moves.values():
        nodes |= set(m.image)
    nodes |= {frozenset([w]) for w in universe}
    forest = SetForest.of(universe, nodes)
    projection = {x: next(iter(x))[0] for x in nodes}
    return Sdf.of(forest, _space(), projection, frozenset(moves.values()))


def _pattern_matches(pattern, scenario, value) -> bool:
    if pattern is None:
        return True
    if isinstance(pattern, dict):
        return value == pattern[scenario]
    return value == pattern


def simple_choice_outcomes(first=None, second=None) -> frozenset:
    """Choice families over the simple instance.

    `first`/`second` constrain the first- and second-stage coordinates; each
    is None (unconstrained), a constant, or a scenario-indexed map.
    """
    return frozenset(
        (w, k, m)
        for (w, k, m) in simple_universe()
        if _pattern_matches(first, w, k) and _pattern_matches(second, w, m)
    )


def variant_choice_outcomes(first=None, second=None) -> frozenset:
    """Primed choice families; the collapsed outcome joins only first-stage choices."""
    out = set()
    for v in variant_universe():
        if len(v) == 3:
            w, k, m = v
            if _pattern_matches(first, w, k) and _pattern_matches(second, w, m):
                out.add(v)
        else:
            w, k = v
            if second is None and _pattern_matches(first, w, k):
                out.add(v)
    return frozenset(out)


def canonical_rcs(s: Sdf, moves: dict, outcomes_fn) -> Rcs:
    per_move = {
        moves["x0"]: frozenset(
            Choice.of(s, outcomes_fn(first=k)) for k in KM
        ),
        moves["x1"]: frozenset(
            Choice.of(s, outcomes_fn(second=m)) for m in KM
        ),
        moves["x2"]: frozenset(
            Choice.of(s, outcomes_fn(second=m)) for m in KM
        ),
    }
    return Rcs.of(per_move)


def simple_rcs(s: Sdf | None = None) -> Rcs:
    s = s or build_simple()
    return canonical_rcs(s, simple_moves(), simple_choice_outcomes)


def variant_rcs(s: Sdf | None = None) -> Rcs:
    s = s or build_variant()
    return canonical_rcs(s, variant_moves(), variant_choice_outcomes)


def _sigma(space: ScenarioSpace, carrier, discrete: bool) -> SubSigma:
    carrier = frozenset(carrier)
    if discrete:
        return SubSigma.ambient_trace(space, carrier)
    return SubSigma.trivial(carrier)


def simple_eis_list() -> tuple:
    """The five information structures of the simple instance, in table order:
    trivial; trivial-then-(both, only-x1, only-x2 discrete); discrete."""
    space = _space()
    moves = simple_moves()
    omega = frozenset(SCENARIOS)
    patterns = [
        (False, False, False),
        (False, True, True),
        (False, True, False),
        (False, False, True),
        (True, True, True),
    ]
    out = []
    for p0, p1, p2 in patterns:
        out.append(
            Eis.of(
                {
                    moves["x0"]: _sigma(space, omega, p0),
                    moves["x1"]: _sigma(space, omega, p1),
                    moves["x2"]: _sigma(space, omega, p2),
                }
            )
        )
    return tuple(out)


def variant_eis_list() -> tuple:
    """The three information structures of the variant, in table order."""
    space = _space()
    moves = variant_moves()
    omega = frozenset(SCENARIOS)
    sub = SubSigma.trivial(frozenset([2]))
    patterns = [(False, False), (False, True), (True, True)]
    out = []
    for p0, p1 in patterns:
        out.append(
            Eis.of(
                {
                    moves["x0"]: _sigma(space, omega, p0),
                    moves["x1"]: _sigma(space, omega, p1),
                    moves["x2"]: sub,
                }
            )
        )
    return tuple(out)


def simple_adapted_table() -> tuple:
    """Per information structure: (first-period, second-period) adapted choices."""
    c = simple_choice_outcomes
    const_first = [c(first=k) for k in KM]
    rows = [
        (const_first, [c(first=k, second=m) for k in KM for m in KM]
         + [c(second=m) for m in KM]),
        (const_first, [c(first=k, second=g) for k in KM for g in MAPS]
         + [c(second=g) for g in MAPS]),
        (const_first, [c(first=1, second=g) for g in MAPS]
         + [c(first=2, second=m) for m in KM] + [c(second=m) for m in KM]),
        (const_first, [c(first=1, second=m) for m in KM]
         + [c(first=2, second=g) for g in MAPS] + [c(second=m) for m in KM]),
        ([c(first=f) for f in MAPS],
         [c(first=k, second=g) for k in KM for g in MAPS]
         + [c(second=g) for g in MAPS]),
    ]
    return tuple(
        (tuple(frozenset(x) for x in fst), tuple(frozenset(x) for x in snd))
        for fst, snd in rows
    )


def variant_adapted_table() -> tuple:
    c = variant_choice_outcomes
    const_first = [c(first=k) for k in KM]
    rows = [
        (const_first, [c(first=k, second=m) for k in KM for m in KM]
         + [c(second=m) for m in KM]),
        (const_first, [c(first=k, second=g) for k in KM for g in MAPS]
         + [c(second=g) for g in MAPS]),
        ([c(first=f) for f in MAPS],
         [c(first=k, second=g) for k in KM for g in MAPS]
         + [c(second=g) for g in MAPS]),
    ]
    return tuple(
        (tuple(frozenset(x) for x in fst), tuple(frozenset(x) for x in snd))
        for fst, snd in rows
    )


def encode_simple() -> PathOutcomes:
    """The simple instance as a two-period action path over actions {1, 2}."""
    return product_outcomes(
        _space(),
        TimeAxis.of([0, 1]),
        [1, 2],
        factorization={"1": {1: 1, 2: 2}},
    )


def encode_variant() -> PathOutcomes:
    """The variant as an action path; 0 stands in for inaction after the collapse."""
    space = ActionSpace.of([0, 1, 2])
    time = TimeAxis.of([0, 1])
    paths = []
    for v in variant_universe():
        if len(v) == 3:
            w, k, m = v
            paths.append((w, (k, m)))
        else:
            w, _ = v
            paths.append((w, (2, 0)))
    return PathOutcomes.of(time, space, _space(), paths)


def timing_instance(n_times: int = 3, agents=("1", "2")) -> ActionPathSdf:
    po = timing_outcomes(
        _space(), TimeAxis.of(range(n_times)), agents
    )
    return build_action_path_sdf(po, max_x_exhaustive=12)


def up_and_out_price_table() -> dict:
    """Two scenarios over three times; the second crosses the barrier at t = 2."""
    rows = {
        1: (Fraction(1), Fraction(3, 2), Fraction(7, 4)),
        2: (Fraction(1), Fraction(3, 2), Fraction(2)),
    }
    points = [Fraction(0), Fraction(1), Fraction(2)]
    return {(t, w): rows[w][i] for w in SCENARIOS for i, t in enumerate(points)}


def upandout_instance() -> ActionPathSdf:
    po = up_and_out_outcomes(
        _space(), TimeAxis.of([0, 1, 2]), up_and_out_price_table()
    )
    return build_action_path_sdf(po, max_x_exhaustive=12)


def simple_aps() -> ActionPathSdf:
    return build_action_path_sdf(encode_simple())


def variant_aps() -> ActionPathSdf:
    return build_action_path_sdf(encode_variant())


def _parse_slot(token: str):
    if token == "any":
        return None
    if len(token) == 1:
        return int(token)
    if len(token) == 2 and all(ch in "12" for ch in token):
        return {1: int(token[0]), 2: int(token[1])}
    raise ValueError(f"bad choice slot {token!r}")


def named_choice_outcomes(instance: str, name: str) -> frozenset:
    """Resolve CLI choice names like c_1_any, c_any_2, c_12_any, c_1_21."""
    parts = name.split("_")
    if len(parts) != 3 or parts[0] != "c":
        raise ValueError(f"bad choice name {name!r}; expected c_<first>_<second>")
    first, second = _parse_slot(parts[1]), _parse_slot(parts[2])
    if instance == "simple":
        return simple_choice_outcomes(first, second)
    if instance == "variant":
        return variant_choice_outcomes(first, second)
    raise ValueError(f"no named choices for instance {instance!r}")


def all_named_choices(instance: str) -> dict:
    slots = ["any", "1", "2"] + ["".join(p) for p in itertools.product("12", repeat=2)]
    out = {}
    for a, b in itertools.product(slots, repeat=2):
        if a == b == "any":
            continue
        name = f"c_{a}_{b}"
        try:
            outcomes = named_choice_outcomes(instance, name)
        except ValueError:
            continue
        if outcomes:
            out[name] = outcomes
    return out
