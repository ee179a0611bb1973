"""Finite posets, chains, forests, and their decompositions.

The order convention follows decision theory: `x >= y` reads "x is weakly
earlier / closer to a root than y", and for families of sets it is reverse
inclusion. Relations are stored extensionally (the full set of ordered
pairs), because the axiom checkers quantify over >= directly.

Enumerations carry a configurable work cap and raise `SizeCapError` rather
than degrade.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._canon import canon_key, canon_sorted, fmt
from .errors import InputError, SizeCapError, StructureError, not_a_forest, unknown_element

DEFAULT_WORK_CAP = 2 ** 16


@dataclass(frozen=True)
class Poset:
    """A finite weak partial order, given by its element set and all pairs x >= y."""

    elements: frozenset
    ge_pairs: frozenset

    def __post_init__(self):
        elems = self.elements
        pairs = self.ge_pairs
        for x, y in pairs:
            if x not in elems or y not in elems:
                raise StructureError(
                    f"relation mentions non-element: {(x, y)!r}", witness=(x, y)
                )
        for x in elems:
            if (x, x) not in pairs:
                raise StructureError(f"relation not reflexive at {x!r}", witness=x)
        for x, y in pairs:
            if x != y and (y, x) in pairs:
                raise StructureError(
                    f"relation not antisymmetric on {(x, y)!r}", witness=(x, y)
                )
        for x, y in pairs:
            for z in elems:
                if (y, z) in pairs and (x, z) not in pairs:
                    raise StructureError(
                        f"relation not transitive via {(x, y, z)!r}", witness=(x, y, z)
                    )

    @classmethod
    def of(cls, elements, ge_pairs) -> "Poset":
        """Build a poset, closing the given pairs reflexively."""
        elems = frozenset(elements)
        pairs = set(tuple(p) for p in ge_pairs)
        pairs.update((x, x) for x in elems)
        return cls(elems, frozenset(pairs))

    @classmethod
    def from_order(cls, elements, ge) -> "Poset":
        """Build a poset extensionally from a comparison callable ge(x, y)."""
        elems = list(elements)
        pairs = {(x, y) for x in elems for y in elems if ge(x, y)}
        return cls.of(elems, pairs)

    def ge(self, x, y) -> bool:
        return (x, y) in self.ge_pairs

    def gt(self, x, y) -> bool:
        return x != y and (x, y) in self.ge_pairs

    def comparable(self, x, y) -> bool:
        return (x, y) in self.ge_pairs or (y, x) in self.ge_pairs

    def is_chain(self, subset) -> bool:
        subset = list(subset)
        return all(
            self.comparable(x, y) for x, y in itertools.combinations(subset, 2)
        )

    def maximal_elements(self) -> frozenset:
        return frozenset(
            x for x in self.elements if not any(self.gt(y, x) for y in self.elements)
        )

    def minimal_elements(self) -> frozenset:
        return frozenset(
            x for x in self.elements if not any(self.gt(x, y) for y in self.elements)
        )

    def covers(self, x) -> frozenset:
        """Elements covered by x: y < x with nothing strictly between."""
        below = [y for y in self.elements if self.gt(x, y)]
        return frozenset(
            y for y in below if not any(self.gt(x, z) and self.gt(z, y) for z in below)
        )

    def canon_key(self):
        return ("poset", canon_key(self.elements), canon_key(self.ge_pairs))


@dataclass(frozen=True)
class ChainSet:
    """A set of chains of some poset; `maximal` flags ⊆-maximal chains."""

    chains: frozenset
    maximal: bool = False

    def __len__(self):
        return len(self.chains)

    def check(self, p: Poset) -> None:
        """Raise unless every member is a chain (and maximal when flagged)."""
        for c in self.chains:
            if not c or not c <= p.elements or not p.is_chain(c):
                raise StructureError(f"not a chain of the poset: {fmt(c)}", witness=c)
            if self.maximal:
                for y in p.elements - c:
                    if all(p.comparable(x, y) for x in c):
                        raise StructureError(
                            f"chain {fmt(c)} extendable by {y!r}", witness=(c, y)
                        )


def up_set(p: Poset, x) -> frozenset:
    """The principal up-set {y | y >= x}. For a forest this is a chain."""
    if x not in p.elements:
        raise unknown_element(x)
    return frozenset(y for y in p.elements if p.ge(y, x))


def down_set(p: Poset, x) -> frozenset:
    if x not in p.elements:
        raise unknown_element(x)
    return frozenset(y for y in p.elements if p.ge(x, y))


def is_forest(p: Poset) -> bool:
    """True iff every principal up-set is a chain."""
    return forest_witness(p) is None


def forest_witness(p: Poset):
    """None, or an element whose up-set is not a chain."""
    for x in canon_sorted(p.elements):
        if not p.is_chain(up_set(p, x)):
            return x
    return None


def is_rooted_forest(p: Poset) -> bool:
    """True iff the forest is nonempty and every up-set contains a maximal element.

    The second half is automatic for finite nonempty forests but is checked
    literally all the same.
    """
    w = forest_witness(p)
    if w is not None:
        raise not_a_forest(w)
    if not p.elements:
        return False
    maxima = p.maximal_elements()
    return all(up_set(p, x) & maxima for x in p.elements)


def is_tree(p: Poset) -> bool:
    """True iff any two up-sets intersect (single connected component)."""
    w = forest_witness(p)
    if w is not None:
        raise not_a_forest(w)
    return all(
        bool(up_set(p, x) & up_set(p, y))
        for x, y in itertools.combinations(p.elements, 2)
    )


def connected_components(p: Poset) -> tuple[frozenset, ...]:
    """The unique partition of a forest into trees (comparable elements share a block)."""
    w = forest_witness(p)
    if w is not None:
        raise not_a_forest(w)
    parent = {x: x for x in p.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in p.ge_pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    blocks: dict = {}
    for x in p.elements:
        blocks.setdefault(find(x), set()).add(x)
    return tuple(
        frozenset(b) for b in canon_sorted(frozenset(b) for b in blocks.values())
    )


def roots(p: Poset) -> frozenset:
    """The maxima of the connected components of a rooted forest."""
    out = set()
    for block in connected_components(p):
        maxima = [x for x in block if not any(p.gt(y, x) for y in block)]
        if len(maxima) != 1:
            raise StructureError(
                f"component without unique maximum: {fmt(frozenset(block))}",
                witness=frozenset(block),
            )
        out.add(maxima[0])
    return frozenset(out)


def maximal_chains(p: Poset, work_cap: int = DEFAULT_WORK_CAP) -> ChainSet:
    """All ⊆-maximal chains, by exhaustive descent along the cover relation.

    A maximal chain runs from a maximal element down to a minimal one through
    covers; the enumeration counts visited nodes against `work_cap`.
    """
    chains: set = set()
    work = 0
    cover_cache = {x: canon_sorted(p.covers(x)) for x in p.elements}

    def descend(x, acc):
        nonlocal work
        work += 1
        if work > work_cap:
            raise SizeCapError(
                f"maximal-chain enumeration exceeded {work_cap} work units"
            )
        below = cover_cache[x]
        if not below:
            chains.add(frozenset(acc))
            return
        for y in below:
            descend(y, acc + [y])

    for top in canon_sorted(p.maximal_elements()):
        descend(top, [top])
    return ChainSet(frozenset(chains), maximal=True)


def separates(p: Poset, x, y, work_cap: int = DEFAULT_WORK_CAP) -> bool:
    """True iff some maximal chain contains exactly one of x, y."""
    if x not in p.elements:
        raise unknown_element(x)
    if y not in p.elements:
        raise unknown_element(y)
    if x == y:
        raise InputError("separates requires distinct elements", witness=(x, y))
    for c in maximal_chains(p, work_cap).chains:
        if len(c & {x, y}) == 1:
            return True
    return False


def is_decision_forest(p: Poset, work_cap: int = DEFAULT_WORK_CAP) -> bool:
    """Rooted forest in which every pair of distinct nodes is separated."""
    return is_rooted_forest(p) and separation_witness(p, work_cap) is None


def separation_witness(p: Poset, work_cap: int = DEFAULT_WORK_CAP):
    """None, or a pair of distinct elements no maximal chain separates."""
    chains = maximal_chains(p, work_cap).chains
    for x, y in itertools.combinations(canon_sorted(p.elements), 2):
        if not any(len(c & {x, y}) == 1 for c in chains):
            return (x, y)
    return None


def find_order_isomorphism(p: Poset, q: Poset):
    """A bijection f with x >= y iff f(x) >= f(y), or None.

    Backtracking over canon-ordered elements, pruning by (up-set size,
    down-set size) signatures; adequate for desk-scale posets.
    """
    if len(p.elements) != len(q.elements) or len(p.ge_pairs) != len(q.ge_pairs):
        return None

    def signature(r: Poset, x):
        return (len(up_set(r, x)), len(down_set(r, x)))

    p_elems = canon_sorted(p.elements)
    q_by_sig: dict = {}
    for y in canon_sorted(q.elements):
        q_by_sig.setdefault(signature(q, y), []).append(y)
    if sorted(map(canon_key, (signature(p, x) for x in p_elems))) != sorted(
        map(canon_key, (signature(q, y) for y in q.elements))
    ):
        return None

    assignment: dict = {}
    used: set = set()

    def extend(i):
        if i == len(p_elems):
            return True
        x = p_elems[i]
        for y in q_by_sig.get(signature(p, x), []):
            if y in used:
                continue
            if all(
                p.ge(x, x2) == q.ge(y, y2) and p.ge(x2, x) == q.ge(y2, y)
                for x2, y2 in assignment.items()
            ):
                assignment[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del assignment[x]
                used.discard(y)
        return False

    return dict(assignment) if extend(0) else None


def order_isomorphic(p: Poset, q: Poset) -> bool:
    return find_order_isomorphism(p, q) is not None
