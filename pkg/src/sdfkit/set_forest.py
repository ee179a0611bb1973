"""Decision forests over a finite outcome set.

A `SetForest` is a family of nonempty outcome-subsets ("nodes") ordered by
reverse inclusion. The defining property is self-representation by decision
paths: outcomes correspond bijectively to the maximal chains of the node
family, a node lying on a path iff the path's outcome lies in the node.
Node identity is the outcome-subset itself; duplicate subsets are
construction errors.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import order_core
from ._canon import canon_sorted, fmt
from .errors import InputError, StructureError
from .order_core import Poset
from .verdict import Verdict


@dataclass(frozen=True)
class OutcomeSet:
    outcomes: frozenset

    def __post_init__(self):
        if not self.outcomes:
            raise StructureError("outcome set must be nonempty")


@dataclass(frozen=True)
class SetForest:
    universe: frozenset
    nodes: frozenset

    @classmethod
    def of(cls, universe, nodes) -> "SetForest":
        """Validate and build; `nodes` is an iterable of outcome-subsets."""
        universe = frozenset(universe)
        node_list = [frozenset(n) for n in nodes]
        seen = set()
        for n in node_list:
            if n in seen:
                raise InputError(
                    f"duplicate node: {fmt(n)}", witness=n, code="duplicate-node"
                )
            seen.add(n)
            if not n:
                raise StructureError("empty node", witness=n)
            if not n <= universe:
                raise StructureError(
                    f"node {fmt(n)} not a subset of the universe", witness=n
                )
        if not universe:
            raise StructureError("universe must be nonempty")
        return cls(universe, frozenset(node_list))

    def canon_key(self):
        from ._canon import canon_key

        return ("set-forest", canon_key(self.universe), canon_key(self.nodes))

    def terminal_nodes(self) -> frozenset:
        return frozenset(
            x for x in self.nodes if not any(x > y for y in self.nodes)
        )

    def moves(self) -> frozenset:
        return self.nodes - self.terminal_nodes()


def induced_poset(sf: SetForest) -> Poset:
    """The poset of nodes under reverse inclusion (x >= y iff x ⊇ y)."""
    return Poset.from_order(sf.nodes, lambda x, y: x >= y)


def decision_paths(sf: SetForest) -> dict:
    """The candidate outcome -> chain map v ↦ ↑{v} = {x | v ∈ x}."""
    return {
        v: frozenset(x for x in sf.nodes if v in x) for v in sf.universe
    }


@dataclass(frozen=True)
class DecisionPathMap:
    """The verified bijection from outcomes to maximal chains of nodes.

    Satisfies y ∈ map(v) iff v ∈ y for every node y and outcome v; only
    obtainable from a forest that passes `verify_own_representation`.
    """

    entries: tuple  # ((outcome, chain), ...) in canonical outcome order

    @classmethod
    def of(cls, sf: SetForest) -> "DecisionPathMap":
        verdict = verify_own_representation(sf)
        if not verdict:
            raise StructureError(
                f"forest is not its own representation: {verdict.describe()}"
            )
        paths = decision_paths(sf)
        return cls(tuple((v, paths[v]) for v in canon_sorted(sf.universe)))

    def chain_of(self, outcome) -> frozenset:
        for v, chain in self.entries:
            if v == outcome:
                return chain
        raise InputError(f"unknown outcome {fmt(outcome)}", code="unknown-element")


def verify_own_representation(sf: SetForest) -> Verdict:
    """Check that v ↦ ↑{v} is a bijection onto the maximal chains matching W(y).

    The uniqueness of the representing bijection means no search over
    bijections is needed: only the canonical candidate can work. The verdict
    names the failing outcome, chain, or node. A non-singleton terminal node
    is reported as such rather than assumed away.
    """
    poset = induced_poset(sf)
    if not order_core.is_rooted_forest(poset):
        return Verdict.failed("not-rooted-forest", "node family is not a rooted forest")
    for x in canon_sorted(sf.terminal_nodes()):
        if len(x) != 1:
            return Verdict.failed(
                "non-singleton-terminal", f"terminal node {fmt(x)} has {len(x)} outcomes"
            )
    chains = order_core.maximal_chains(poset).chains
    f = decision_paths(sf)
    image = {}
    for v in canon_sorted(sf.universe):
        chain = f[v]
        if chain not in chains:
            return Verdict.failed(
                "path-not-maximal-chain",
                f"outcome {fmt(v)}: ↑{{v}} = {fmt(chain)} is not a maximal chain",
            )
        if chain in image:
            return Verdict.failed(
                "not-injective",
                f"outcomes {fmt(image[chain])} and {fmt(v)} share the chain {fmt(chain)}",
            )
        image[chain] = v
    for c in canon_sorted(chains):
        if c not in image:
            return Verdict.failed(
                "not-surjective", f"maximal chain {fmt(c)} hit by no outcome"
            )
    for y in canon_sorted(sf.nodes):
        lhs = frozenset(f[v] for v in y)
        rhs = frozenset(c for c in chains if y in c)
        if lhs != rhs:
            return Verdict.failed(
                "image-mismatch",
                f"node {fmt(y)}: (Pf)(y) = {fmt(lhs)} but W(y) = {fmt(rhs)}",
            )
    return Verdict.passed()


def representation_by_decision_paths(p: Poset) -> SetForest:
    """Represent a decision-forest poset over its own maximal chains.

    Outcomes are the maximal chains of `p`; the node for x is the set of
    chains through x. Requires every pair of distinct elements to be
    separated by some maximal chain.
    """
    if not order_core.is_rooted_forest(p):
        raise StructureError(
            "poset is not a rooted forest", code="not-a-decision-forest"
        )
    witness = order_core.separation_witness(p)
    if witness is not None:
        raise StructureError(
            f"elements {witness[0]!r} and {witness[1]!r} are not separated "
            "by any maximal chain",
            witness=witness,
            code="not-a-decision-forest",
        )
    chains = order_core.maximal_chains(p).chains
    nodes = [frozenset(c for c in chains if x in c) for x in p.elements]
    return SetForest.of(chains, nodes)


def decompose(sf: SetForest) -> tuple[tuple[frozenset, SetForest], ...]:
    """Split into connected components: pairs (root outcome set V_T, tree).

    For a verified forest the V_T partition the universe and each component
    is a decision tree over its root.
    """
    poset = induced_poset(sf)
    out = []
    for block in order_core.connected_components(poset):
        root = max(block, key=len)
        out.append((root, SetForest.of(root, block)))
    return tuple(out)


def glue(trees) -> SetForest:
    """Forest over the disjoint union of the trees' roots, outcomes tagged by index."""
    trees = list(trees)
    if not trees:
        raise InputError("glue requires a nonempty list of trees", code="empty-list")
    for idx, t in enumerate(trees):
        v = verify_own_representation(t)
        if not v:
            raise StructureError(
                f"input {idx} is not a verified tree: {v.describe()}", witness=idx
            )
        if not order_core.is_tree(induced_poset(t)):
            raise StructureError(f"input {idx} is not a tree", witness=idx)
    universe = set()
    nodes = []
    for idx, t in enumerate(trees):
        universe.update((v, idx) for v in t.universe)
        nodes.extend(frozenset((v, idx) for v in x) for x in t.nodes)
    return SetForest.of(universe, nodes)


def forest_isomorphic(a: SetForest, b: SetForest) -> bool:
    """Order isomorphism of the induced posets."""
    return order_core.order_isomorphic(induced_poset(a), induced_poset(b))
