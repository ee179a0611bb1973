import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdfkit import examples
from sdfkit.errors import InputError, SizeCapError
from sdfkit.gen import random_filtration, random_observables, random_path_outcomes, rng_from_env
from sdfkit.sdf import ScenarioSpace, ge_x, x_order
from sdfkit.sigma_info import (
    ChainStages,
    Eis,
    Filtration,
    ObservationFamily,
    SubSigma,
    bell_number,
    chain_filtration,
    eis_from_filtration,
    eis_from_observations,
    enumerate_eis,
    level_set_partition,
    set_partitions,
    sub_sigma_candidates,
    verify_eis,
)
from sdfkit.action_path import build_action_path_sdf, check_apw


def partitions_strategy(n):
    """hypothesis strategy producing a SubSigma over {0..n-1}."""
    items = list(range(n))
    all_parts = [
        frozenset(frozenset(b) for b in blocks) for blocks in set_partitions(items)
    ]
    carrier = frozenset(items)
    return st.sampled_from([SubSigma(carrier, p) for p in all_parts])


class TestSubSigma:
    def test_events_and_contains(self):
        sigma = SubSigma.of({1, 2, 3}, [{1, 2}, {3}])
        assert sigma.contains({1, 2})
        assert not sigma.contains({1})
        assert len(sigma.events()) == 4

    def test_trace(self):
        sigma = SubSigma.of({1, 2, 3}, [{1, 2}, {3}])
        traced = sigma.trace({1, 2})
        assert traced.atoms == frozenset([frozenset({1, 2})])

    @settings(max_examples=60, deadline=None)
    @given(partitions_strategy(5), partitions_strategy(5))
    def test_join_commutative(self, a, b):
        assert a.join(b) == b.join(a)

    @settings(max_examples=60, deadline=None)
    @given(partitions_strategy(4), partitions_strategy(4), partitions_strategy(4))
    def test_join_associative(self, a, b, c):
        assert a.join(b).join(c) == a.join(b.join(c))

    @settings(max_examples=30, deadline=None)
    @given(partitions_strategy(6))
    def test_join_idempotent(self, a):
        assert a.join(a) == a

    def test_join_carrier_mismatch(self):
        with pytest.raises(InputError):
            SubSigma.trivial({1}).join(SubSigma.trivial({2}))


class TestVerifyEis:
    def test_trivial_everywhere(self, simple):
        assert verify_eis(simple, examples.simple_eis_list()[0]).ok

    def test_discrete_at_root_trivial_below_fails(self, simple, simple_moves):
        omega = frozenset([1, 2])
        e = Eis.of(
            {
                simple_moves["x0"]: SubSigma.ambient_trace(simple.space, omega),
                simple_moves["x1"]: SubSigma.trivial(omega),
                simple_moves["x2"]: SubSigma.trivial(omega),
            }
        )
        v = verify_eis(simple, e)
        assert not v.ok and v.code == "eis-trace-violation"
        assert "{1}" in v.witness

    def test_case_2b(self, simple):
        # root trivial, scenario revealed only at the first successor
        assert verify_eis(simple, examples.simple_eis_list()[2]).ok

    def test_carrier_mismatch(self, simple, simple_moves):
        omega = frozenset([1, 2])
        e = Eis.of(
            {
                simple_moves["x0"]: SubSigma.trivial(frozenset([1])),
                simple_moves["x1"]: SubSigma.trivial(omega),
                simple_moves["x2"]: SubSigma.trivial(omega),
            }
        )
        with pytest.raises(InputError) as exc:
            verify_eis(simple, e)
        assert exc.value.code == "carrier-mismatch"


def brute_force_eis(s):
    """Independent oracle: unpruned product over all per-move algebras."""
    moves = sorted(s.random_moves, key=lambda m: sorted(m.domain))
    pools = [sub_sigma_candidates(s.space, m.domain) for m in moves]
    out = []
    for combo in itertools.product(*pools):
        e = Eis.of(dict(zip(moves, combo)))
        if verify_eis(s, e).ok:
            out.append(e)
    return out


class TestEnumerateEis:
    def test_simple_has_five(self, simple):
        structures = enumerate_eis(simple)
        assert len(structures) == 5
        assert set(structures) == set(examples.simple_eis_list())

    def test_variant_has_three(self, variant):
        structures = enumerate_eis(variant)
        assert len(structures) == 3
        assert set(structures) == set(examples.variant_eis_list())

    def test_single_scenario(self):
        from tests_helpers import one_scenario_instance

        s = one_scenario_instance()
        assert len(enumerate_eis(s)) == 1

    def test_duplicate_free_and_verified(self, simple, variant):
        for s in (simple, variant):
            structures = enumerate_eis(s)
            assert len(set(structures)) == len(structures)
            for e in structures:
                assert verify_eis(s, e).ok

    def test_against_unpruned_brute_force(self, simple, variant):
        for s in (simple, variant):
            assert set(enumerate_eis(s)) == set(brute_force_eis(s))

    def test_cap(self, simple):
        with pytest.raises(SizeCapError):
            enumerate_eis(simple, bell_cap=1)

    def test_bell_numbers(self):
        assert [bell_number(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


class TestChainFiltration:
    def test_single_move_chain(self, simple, simple_moves):
        e = examples.simple_eis_list()[0]
        stages = chain_filtration(simple, e, [simple_moves["x0"]])
        assert len(stages.stages) == 1 and stages.verdict.ok

    def test_simple_2a_chain(self, simple, simple_moves):
        e = examples.simple_eis_list()[1]  # trivial at root, discrete after
        stages = chain_filtration(simple, e, [simple_moves["x0"], simple_moves["x1"]])
        assert stages.verdict.ok
        (m0, s0), (m1, s1) = stages.stages
        assert m0 == simple_moves["x0"] and s0.atoms == frozenset([frozenset([1, 2])])
        assert s1.atoms == frozenset([frozenset([1]), frozenset([2])])
        assert stages.filtration is not None
        assert stages.filtration.stage(1).includes(stages.filtration.stage(0))

    def test_variant_trace_chain(self, variant, variant_moves):
        e = examples.variant_eis_list()[0]
        stages = chain_filtration(variant, e, [variant_moves["x0"], variant_moves["x2"]])
        assert stages.verdict.ok
        assert stages.filtration is None  # carriers differ from Ω
        (_, s0), (_, s2) = stages.stages
        assert s0.carrier == frozenset([1, 2])
        assert s2.atoms == frozenset([frozenset([2])])

    def test_not_a_chain(self, simple, simple_moves):
        e = examples.simple_eis_list()[0]
        with pytest.raises(InputError) as exc:
            chain_filtration(simple, e, [simple_moves["x1"], simple_moves["x2"]])
        assert exc.value.code == "not-a-chain"

    def test_monotone_traces_all_chains(self, simple, variant):
        # finite restatement of the filtration property along every chain
        for s in (simple, variant):
            order = x_order(s)
            moves = list(s.random_moves)
            for e in enumerate_eis(s):
                for r in range(1, len(moves) + 1):
                    for chain in itertools.combinations(moves, r):
                        if not all(
                            order.comparable(a, b)
                            for a, b in itertools.combinations(chain, 2)
                        ):
                            continue
                        assert chain_filtration(s, e, chain).verdict.ok


class TestEisFromFiltration:
    def test_constant_trivial(self, simple_aps):
        s = simple_aps.sdf
        omega = s.space.scenarios
        g = Filtration.of(
            {t: SubSigma.trivial(omega) for t in simple_aps.po.time.points}
        )
        e = eis_from_filtration(s, simple_aps.time_map(), g)
        assert all(sigma.atoms == frozenset([m.domain]) for m, sigma in e.entries)
        assert verify_eis(s, e).ok

    def test_reveal_at_time_one(self, simple_aps):
        # trivial at 0, discrete at 1: the only-second-move-reveals structure
        s = simple_aps.sdf
        omega = s.space.scenarios
        g = Filtration.of(
            {
                Fraction(0): SubSigma.trivial(omega),
                Fraction(1): SubSigma.ambient_trace(s.space, omega),
            }
        )
        e = eis_from_filtration(s, simple_aps.time_map(), g)
        assert verify_eis(s, e).ok
        for m, t in simple_aps.move_times:
            expected = 1 if t == 0 else 2
            assert len(e.for_move(m).atoms) == expected

    def test_discrete_everywhere(self, simple_aps):
        s = simple_aps.sdf
        omega = s.space.scenarios
        discrete = SubSigma.ambient_trace(s.space, omega)
        g = Filtration.of({t: discrete for t in simple_aps.po.time.points})
        e = eis_from_filtration(s, simple_aps.time_map(), g)
        assert all(len(sigma.atoms) == len(m.domain) for m, sigma in e.entries)

    def test_time_index_mismatch(self, simple_aps):
        s = simple_aps.sdf
        g = Filtration.of({Fraction(5): SubSigma.trivial(s.space.scenarios)})
        with pytest.raises(InputError) as exc:
            eis_from_filtration(s, simple_aps.time_map(), g)
        assert exc.value.code == "time-index-mismatch"


class TestEisFromObservations:
    def _trivial_filtration(self, aps):
        return Filtration.of(
            {t: SubSigma.trivial(aps.sdf.space.scenarios) for t in aps.po.time.points}
        )

    def test_constant_observables_reduce_to_filtration(self, simple_aps):
        s = simple_aps.sdf
        g = self._trivial_filtration(simple_aps)
        y = ObservationFamily.of(
            {m: {w: "k" for w in s.space.scenarios} for m in s.random_moves}
        )
        assert eis_from_observations(s, simple_aps.time_map(), g, y) == eis_from_filtration(
            s, simple_aps.time_map(), g
        )

    def test_identity_at_root_reveals_everywhere(self, simple_aps):
        s = simple_aps.sdf
        g = self._trivial_filtration(simple_aps)
        root = next(m for m, t in simple_aps.move_times if t == 0)
        y = ObservationFamily.of(
            {
                m: ({w: w for w in s.space.scenarios} if m == root
                    else {w: "k" for w in s.space.scenarios})
                for m in s.random_moves
            }
        )
        e = eis_from_observations(s, simple_aps.time_map(), g, y)
        assert all(len(sigma.atoms) == len(m.domain) for m, sigma in e.entries)

    def test_observation_at_one_successor_gives_2b(self, simple_aps):
        s = simple_aps.sdf
        g = self._trivial_filtration(simple_aps)
        # the t=1 move reached by first action 1 observes the scenario
        target = next(
            m
            for m, t in simple_aps.move_times
            if t == 1 and all(f[0] == 1 for node in m.image for (_, f) in node)
        )
        y = ObservationFamily.of(
            {
                m: ({w: w for w in s.space.scenarios} if m == target
                    else {w: "k" for w in s.space.scenarios})
                for m in s.random_moves
            }
        )
        e = eis_from_observations(s, simple_aps.time_map(), g, y)
        for m, t in simple_aps.move_times:
            atoms = e.for_move(m).atoms
            assert len(atoms) == (2 if m == target else 1)

    def test_non_measurable_observable_rejected(self, simple_aps):
        s = simple_aps.sdf
        coarse = ScenarioSpace.of([1, 2], [[1, 2]])
        with pytest.raises(InputError):
            level_set_partition(coarse, {1: "a", 2: "b"})


class TestObservationConstructionProperty:
    def test_random_triples_verify(self, rng):
        done = 0
        attempts = 0
        while done < 12 and attempts < 400:
            attempts += 1
            po = random_path_outcomes(rng)
            apw = check_apw(po)
            if not all(v.ok for k, v in apw.items if k in ("W0", "W1", "W2", "W3")):
                continue
            aps = build_action_path_sdf(po, max_x_exhaustive=9)
            g = random_filtration(rng, po.scenarios, po.time.points)
            y = random_observables(rng, po.scenarios, aps.sdf.random_moves)
            e = eis_from_observations(aps.sdf, aps.time_map(), g, y)
            assert verify_eis(aps.sdf, e).ok
            done += 1
        assert done >= 12
