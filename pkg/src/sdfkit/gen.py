"""Seeded random instance generators for the property suites.

Generation reads SDF_SEED (verification itself is deterministic); every
generator takes an explicit `random.Random` so suites can fix their own
streams.
"""

from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction

from .action_path import PathOutcomes, TimeAxis, ActionSpace
from .order_core import Poset
from .sdf import ScenarioSpace
from .set_forest import SetForest


def rng_from_env(default_seed: int = 0) -> random.Random:
    seed = os.environ.get("SDF_SEED")
    return random.Random(int(seed) if seed is not None else default_seed)


def random_rooted_forest(rng: random.Random, max_nodes: int = 12) -> Poset:
    """Random rooted forest: each later element attaches below an earlier one or roots."""
    n = rng.randint(1, max_nodes)
    parent = {}
    for i in range(n):
        if i == 0 or rng.random() < 0.25:
            parent[i] = None
        else:
            parent[i] = rng.randrange(i)
    pairs = set()
    for i in range(n):
        j = i
        while j is not None:
            pairs.add((j, i))
            j = parent[j]
    return Poset.of(range(n), pairs)


def random_decision_tree_nodes(rng: random.Random, outcomes: list) -> set:
    """A laminar node family over the outcomes in which every move branches."""
    nodes = set()

    def split(block):
        block = list(block)
        nodes.add(frozenset(block))
        if len(block) == 1:
            return
        rng.shuffle(block)
        k = rng.randint(2, len(block))
        cuts = sorted(rng.sample(range(1, len(block)), k - 1))
        pieces = []
        last = 0
        for c in cuts + [len(block)]:
            pieces.append(block[last:c])
            last = c
        for piece in pieces:
            split(piece)

    split(outcomes)
    return nodes


def random_v_poset(rng: random.Random, max_outcomes: int = 6) -> SetForest:
    """Random rooted-forest node family, sometimes mutated away from validity.

    Mutations: dropping singletons (breaks path maximality), dropping both
    children of a move (leaves a non-singleton terminal), or overlapping the
    component roots (breaks the outcome partition). Dropping an inner node
    keeps validity; that case is generated too.
    """
    n_trees = rng.randint(1, 2)
    nodes: set = set()
    offset = 0
    roots = []
    for _ in range(n_trees):
        size = rng.randint(1, max_outcomes)
        outcomes = list(range(offset, offset + size))
        offset += size
        tree_nodes = random_decision_tree_nodes(rng, outcomes)
        roots.append(frozenset(outcomes))
        nodes |= tree_nodes
    universe = frozenset(range(offset))
    mutation = rng.random()
    node_list = sorted(nodes, key=len)
    if mutation < 0.30:
        pass
    elif mutation < 0.45:
        inner = [x for x in node_list if 1 < len(x) and x not in roots]
        if inner:
            nodes.discard(rng.choice(inner))
    elif mutation < 0.65:
        singles = [x for x in node_list if len(x) == 1]
        if singles:
            nodes.discard(rng.choice(singles))
    elif mutation < 0.80:
        parents = [x for x in node_list if len(x) == 2]
        if parents:
            victim = rng.choice(parents)
            for v in victim:
                nodes.discard(frozenset([v]))
    else:
        if len(roots) >= 2 and len(roots[0]) >= 1:
            stolen = next(iter(roots[0]))
            nodes.discard(roots[1])
            nodes.add(roots[1] | {stolen})
    nodes = {x for x in nodes if x}
    if not nodes:
        nodes = {universe}
    return SetForest.of(universe, nodes)


def random_scenario_space(rng: random.Random, max_scenarios: int = 3) -> ScenarioSpace:
    n = rng.randint(1, max_scenarios)
    scenarios = list(range(1, n + 1))
    if rng.random() < 0.7 or n == 1:
        return ScenarioSpace.discrete(scenarios)
    blocks = [[scenarios[0]]]
    for w in scenarios[1:]:
        if rng.random() < 0.5:
            rng.choice(blocks).append(w)
        else:
            blocks.append([w])
    return ScenarioSpace.of(scenarios, [frozenset(b) for b in blocks])


def random_filtration(rng: random.Random, space: ScenarioSpace, times) -> "Filtration":
    """Random increasing family of sub-σ-algebras of the ambient algebra."""
    from .sigma_info import Filtration, SubSigma

    atoms = sorted(space.algebra_atoms, key=lambda a: sorted(a))
    blocks = [list(range(len(atoms)))]
    per_time = {}
    for t in sorted(times):
        per_time[t] = SubSigma.of(
            space.scenarios,
            [frozenset().union(*(atoms[i] for i in b)) for b in blocks],
        )
        new_blocks = []
        for b in blocks:
            if len(b) > 1 and rng.random() < 0.5:
                cut = rng.randint(1, len(b) - 1)
                new_blocks.extend([b[:cut], b[cut:]])
            else:
                new_blocks.append(b)
        blocks = new_blocks
    return Filtration.of(per_time)


def random_observables(rng: random.Random, space: ScenarioSpace, moves) -> "ObservationFamily":
    """Random ambient-measurable finite-valued observables, one per random move."""
    from .sigma_info import ObservationFamily

    per_move = {}
    for m in moves:
        by_atom = {}
        for atom in space.algebra_atoms:
            value = rng.choice(["u", "v", "w"])
            for w in atom:
                by_atom[w] = value
        per_move[m] = by_atom
    return ObservationFamily.of(per_move)


def random_path_outcomes(
    rng: random.Random,
    max_scenarios: int = 3,
    max_times: int = 3,
    max_actions: int = 3,
) -> PathOutcomes:
    space = random_scenario_space(rng, max_scenarios)
    n_times = rng.randint(1, max_times)
    pool = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]
    points = [Fraction(0)] + rng.sample(pool[1:], n_times - 1)
    time = TimeAxis.of(points)
    n_actions = rng.randint(1, max_actions)
    actions = ["a", "b", "c"][:n_actions]
    full = list(itertools.product(actions, repeat=n_times))
    paths = []
    for w in space.scenarios:
        k = rng.randint(1, min(len(full), 5))
        for f in rng.sample(full, k):
            paths.append((w, f))
    return PathOutcomes.of(time, ActionSpace.of(actions), space, paths)
