"""Small hand-built instances shared by several test modules."""

from __future__ import annotations

from sdfkit.sdf import RandomMove, ScenarioSpace, Sdf
from sdfkit.set_forest import SetForest


def one_scenario_instance() -> Sdf:
    universe = frozenset(["a", "b"])
    forest = SetForest.of(universe, [frozenset("ab"), frozenset("a"), frozenset("b")])
    space = ScenarioSpace.discrete([0])
    move = RandomMove.of({0: frozenset("ab")})
    return Sdf.of(forest, space, {x: 0 for x in forest.nodes}, [move])


def lone_terminal_instance() -> Sdf:
    """Scenario 1 carries a 2-outcome tree, scenario 2 a single terminal."""
    universe = frozenset(["a", "b", "z"])
    forest = SetForest.of(
        universe,
        [frozenset("ab"), frozenset("a"), frozenset("b"), frozenset("z")],
    )
    space = ScenarioSpace.discrete([1, 2])
    projection = {
        frozenset("ab"): 1,
        frozenset("a"): 1,
        frozenset("b"): 1,
        frozenset("z"): 2,
    }
    move = RandomMove.of({1: frozenset("ab")})
    return Sdf.of(forest, space, projection, [move])
