"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's algorithms: maximal chains
by full subset enumeration, predecessors never (the library is the literal
definition; expected values for those come from the worked instances'
closed forms).
"""

from __future__ import annotations

import itertools

import pytest

from sdfkit import examples
from sdfkit.gen import rng_from_env


def brute_maximal_chains(elements, ge):
    """All ⊆-maximal chains by enumerating every subset. Exponential; tiny inputs only."""
    elements = list(elements)
    chains = []
    for r in range(1, len(elements) + 1):
        for combo in itertools.combinations(elements, r):
            if all(ge(x, y) or ge(y, x) for x, y in itertools.combinations(combo, 2)):
                chains.append(frozenset(combo))
    return {
        c
        for c in chains
        if not any(c < d for d in chains)
    }


@pytest.fixture(scope="session")
def simple():
    return examples.build_simple()


@pytest.fixture(scope="session")
def variant():
    return examples.build_variant()


@pytest.fixture(scope="session")
def simple_moves():
    return examples.simple_moves()


@pytest.fixture(scope="session")
def variant_moves():
    return examples.variant_moves()


@pytest.fixture(scope="session")
def simple_aps():
    return examples.simple_aps()


@pytest.fixture(scope="session")
def variant_aps():
    return examples.variant_aps()


@pytest.fixture(scope="session")
def timing_aps():
    return examples.timing_instance()


@pytest.fixture(scope="session")
def upandout_aps():
    return examples.upandout_instance()


@pytest.fixture()
def rng():
    return rng_from_env(20240418)
