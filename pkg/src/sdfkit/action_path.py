"""Action-path stochastic decision forests.

Outcomes are pairs (scenario, path) with the path a map from a finite set of
exact rational time points into a finite action set. The node at time t
collects the outcomes sharing the scenario and the path strictly before t;
choices at t then constrain the action taken at t. Time points are
`fractions.Fraction`s throughout; no floats enter the order logic.

The AP.W* assumptions on outcome sets and the AP.C* assumptions on window
choices are all realised as checker operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from . import choice as choice_mod
from ._canon import canon_key, canon_sorted, fmt
from .errors import InputError, SizeCapError, StructureError
from .sdf import RandomMove, ScenarioSpace, Sdf, verify_sdf
from .set_forest import SetForest
from .sigma_info import Eis
from .verdict import MultiVerdict, Verdict

DEFAULT_TIME_SUBSET_CAP = 8
DEFAULT_PATH_WORK_CAP = 2 ** 16
DEFAULT_HISTORY_SUBSET_CAP = 4096


def as_time(value) -> Fraction:
    t = Fraction(value)
    if t < 0:
        raise InputError(f"time points must be nonnegative rationals: {value!r}")
    return t


@dataclass(frozen=True)
class TimeAxis:
    points: tuple  # strictly increasing Fractions, containing 0

    def __post_init__(self):
        if Fraction(0) not in self.points:
            raise StructureError("time axis must contain 0")
        if list(self.points) != sorted(set(self.points)):
            raise StructureError("time points must be strictly increasing")

    @classmethod
    def of(cls, points) -> "TimeAxis":
        return cls(tuple(sorted({as_time(p) for p in points})))

    def index(self, t) -> int:
        t = as_time(t)
        try:
            return self.points.index(t)
        except ValueError:
            raise InputError(f"time {t} not on the axis", witness=t) from None

    def canon_key(self):
        return ("time", canon_key(self.points))


@dataclass(frozen=True)
class ActionSpace:
    actions: frozenset
    agents: tuple | None = None
    projections: tuple | None = None  # ((agent, ((action, component), ...)), ...)

    @classmethod
    def of(cls, actions, factorization=None) -> "ActionSpace":
        actions = frozenset(actions)
        if not actions:
            raise StructureError("action space must be nonempty")
        if factorization is None:
            return cls(actions)
        agents = tuple(sorted(factorization, key=canon_key))
        projections = []
        for agent in agents:
            table = factorization[agent]
            if frozenset(table) != actions:
                raise InputError(
                    f"projection for agent {agent!r} not total on the actions"
                )
            projections.append(
                (agent, tuple(sorted(table.items(), key=lambda kv: canon_key(kv[0]))))
            )
        return cls(actions, agents, tuple(projections))

    def project(self, agent, action):
        for a, table in self.projections or ():
            if a == agent:
                for act, comp in table:
                    if act == action:
                        return comp
        raise InputError(f"no projection for agent {agent!r}", code="no-factorization")

    def components(self, agent) -> frozenset:
        for a, table in self.projections or ():
            if a == agent:
                return frozenset(comp for _, comp in table)
        raise InputError(f"no projection for agent {agent!r}", code="no-factorization")

    def verify_w4(self) -> Verdict:
        """The action set factors bijectively as the product of agent components."""
        if self.agents is None:
            raise InputError("no factorization supplied", code="no-factorization")
        profile = {
            a: tuple(self.project(agent, a) for agent in self.agents)
            for a in self.actions
        }
        if len(set(profile.values())) != len(self.actions):
            dup = next(
                a
                for a in canon_sorted(self.actions)
                if sum(1 for b in self.actions if profile[b] == profile[a]) > 1
            )
            return Verdict.failed(
                "apw4-not-injective", f"action {fmt(dup)} shares its component profile"
            )
        full = set(
            itertools.product(*(canon_sorted(self.components(a)) for a in self.agents))
        )
        if set(profile.values()) != full:
            return Verdict.failed(
                "apw4-not-surjective", "component profiles miss part of the product"
            )
        return Verdict.passed()

    def canon_key(self):
        return (
            "actions",
            canon_key(self.actions),
            canon_key(self.agents or ()),
            canon_key(self.projections or ()),
        )


@dataclass(frozen=True)
class PathOutcomes:
    time: TimeAxis
    space: ActionSpace
    scenarios: ScenarioSpace
    paths: frozenset  # of (scenario, path-tuple)

    @classmethod
    def of(cls, time, space, scenarios, paths) -> "PathOutcomes":
        paths = frozenset((w, tuple(f)) for w, f in paths)
        n = len(time.points)
        for w, f in paths:
            if w not in scenarios.scenarios:
                raise InputError(f"path for unknown scenario {w!r}", witness=w)
            if len(f) != n:
                raise InputError(
                    f"path {fmt(f)} not indexed by the {n} time points", witness=f
                )
            for a in f:
                if a not in space.actions:
                    raise InputError(f"unknown action {a!r} in a path", witness=a)
        for w in scenarios.scenarios:
            if not any(w2 == w for w2, _ in paths):
                raise StructureError(
                    f"scenario {fmt(w)} admits no outcome", witness=w
                )
        return cls(time, space, scenarios, paths)

    def canon_key(self):
        return (
            "path-outcomes",
            self.time.canon_key(),
            self.space.canon_key(),
            self.scenarios.canon_key(),
            canon_key(self.paths),
        )


class _PathIndex:
    def __init__(self, po: PathOutcomes):
        self.po = po
        self.points = po.time.points
        self.groups: dict = {}
        self.realized: dict = {i: set() for i in range(len(self.points) + 1)}
        for w, f in po.paths:
            for i in range(len(self.points) + 1):
                p = f[:i]
                if i <= len(self.points):
                    self.realized.setdefault(i, set()).add(p)
                self.groups.setdefault((w, p), set()).add((w, f))
        self.groups = {k: frozenset(v) for k, v in self.groups.items()}
        self.realized = {k: frozenset(v) for k, v in self.realized.items()}

    def group(self, scenario, prefix) -> frozenset:
        return self.groups.get((scenario, tuple(prefix)), frozenset())

    def d_set(self, prefix) -> frozenset:
        return frozenset(
            w
            for w in self.po.scenarios.scenarios
            if len(self.group(w, prefix)) >= 2
        )

    def realized_prefixes(self, t) -> frozenset:
        return self.realized[self.po.time.index(t)]


@cache
def _index(po: PathOutcomes) -> _PathIndex:
    return _PathIndex(po)


def prefix_of(po: PathOutcomes, f, t) -> tuple:
    """The restriction of a path to the time points strictly before t."""
    return tuple(f)[: po.time.index(t)]


def node_at(po: PathOutcomes, t, w) -> frozenset:
    """x_t(w): outcomes sharing w's scenario and path strictly before t."""
    scenario, f = w
    if (scenario, tuple(f)) not in po.paths:
        raise InputError(f"unknown outcome {fmt(w)}", witness=w)
    return _index(po).group(scenario, prefix_of(po, f, t))


def move_event(po: PathOutcomes, t, f) -> frozenset:
    """D_{t,f}: scenarios where the node at (t, f) has at least two outcomes.

    Requires the result to be an event of the scenario space (AP.W0); raises
    apw0-violation otherwise. `f` may be any path in the ambient path space.
    """
    d = _index(po).d_set(prefix_of(po, f, t))
    if not po.scenarios.is_event(d):
        raise StructureError(
            f"D_(t={t}, f={fmt(tuple(f))}) = {fmt(d)} is not an event",
            witness=d,
            code="apw0-violation",
        )
    return d


def _all_prefixes(po: PathOutcomes, length: int, work_cap: int):
    count = len(po.space.actions) ** length
    if count > work_cap:
        raise SizeCapError(
            f"prefix space of size {count} exceeds work cap {work_cap}"
        )
    return itertools.product(canon_sorted(po.space.actions), repeat=length)


def check_apw(
    po: PathOutcomes,
    *,
    max_time_subsets: int = DEFAULT_TIME_SUBSET_CAP,
    w2_mode: str = "exhaustive",
    work_cap: int = DEFAULT_PATH_WORK_CAP,
) -> MultiVerdict:
    """Verdicts for assumptions W0-W3 (and W4 when a factorization is present).

    W2 quantifies over subsets of the time axis: mode "exhaustive" tries all
    2^|T| subsets (requires |T| <= max_time_subsets), mode "prefix" only
    down-closed ones. Exhaustive mode is authoritative; the prefix reduction
    is validated against it in the test suite.
    """
    idx = _index(po)
    points = po.time.points
    items = []

    w0 = Verdict.passed()
    for i, t in enumerate(points):
        for p in _all_prefixes(po, i, work_cap):
            d = idx.d_set(p)
            if not po.scenarios.is_event(d):
                w0 = Verdict.failed(
                    "apw0",
                    f"D_(t={t}, prefix={fmt(p)}) = {fmt(d)} is not an event",
                )
                break
        if not w0.ok:
            break
    items.append(("W0", w0))

    w1 = Verdict.passed()
    for w, f in canon_sorted(po.paths):
        for i, j in itertools.combinations(range(len(points)), 2):
            xi = idx.group(w, f[:i])
            xj = idx.group(w, f[:j])
            if xi == xj and len(xi) != 1:
                w1 = Verdict.failed(
                    "apw1",
                    f"x at t={points[i]} and t={points[j]} coincide on the "
                    f"non-singleton {fmt(xi)}",
                )
                break
        if not w1.ok:
            break
    items.append(("W1", w1))

    if w2_mode not in ("exhaustive", "prefix"):
        raise InputError(f"unknown W2 mode {w2_mode!r}")
    if w2_mode == "exhaustive" and len(points) > max_time_subsets:
        raise SizeCapError(
            f"|T| = {len(points)} exceeds the W2 subset cap {max_time_subsets}"
        )
    if w2_mode == "exhaustive":
        subset_pool = [
            tuple(c)
            for r in range(len(points) + 1)
            for c in itertools.combinations(range(len(points)), r)
        ]
    else:
        subset_pool = [tuple(range(k)) for k in range(len(points) + 1)]
    w2 = Verdict.passed(f"mode: {w2_mode}")
    for w in canon_sorted(po.scenarios.scenarios):
        for f_tilde in _all_prefixes(po, len(points), work_cap):
            for subset in subset_pool:
                if any(not idx.group(w, f_tilde[:i]) for i in subset):
                    continue
                if not any(
                    w2_ == w and all(f[:i] == f_tilde[:i] for i in subset)
                    for w2_, f in po.paths
                ):
                    w2 = Verdict.failed(
                        "apw2",
                        f"scenario {fmt(w)}, path {fmt(f_tilde)}, times "
                        f"{fmt(tuple(points[i] for i in subset))}: locally "
                        "consistent prefix extends to no outcome",
                    )
                    break
            if not w2.ok:
                break
        if not w2.ok:
            break
    items.append(("W2", w2))

    w3 = Verdict.passed()
    for i, t in enumerate(points):
        fs = list(_all_prefixes(po, i, work_cap))
        for p, q in itertools.combinations(fs, 2):
            dp, dq = idx.d_set(p), idx.d_set(q)
            if not dp or not dq or (dp & dq):
                continue
            if not any(
                (idx.d_set(p[:j]) & idx.d_set(q[:j])) and p[:j] != q[:j]
                for j in range(i + 1)
            ):
                w3 = Verdict.failed(
                    "apw3",
                    f"t={t}: prefixes {fmt(p)} on {fmt(dp)} and {fmt(q)} on "
                    f"{fmt(dq)} could be identified",
                )
                break
        if not w3.ok:
            break
    items.append(("W3", w3))

    if po.space.agents is not None:
        items.append(("W4", po.space.verify_w4()))

    return MultiVerdict(tuple(items))


@dataclass(frozen=True)
class ActionPathSdf:
    """An SDF built from path outcomes, together with the move-time map."""

    po: PathOutcomes
    sdf: Sdf
    move_times: tuple  # ((RandomMove, Fraction), ...)

    def time_of_move(self, m: RandomMove) -> Fraction:
        for move, t in self.move_times:
            if move == m:
                return t
        raise InputError(f"unknown random move {m.fmt()}")

    def time_map(self) -> dict:
        return dict(self.move_times)

    def canon_key(self):
        return ("aps", self.po.canon_key(), self.sdf.canon_key())


def build_action_path_sdf(
    po: PathOutcomes,
    *,
    max_time_subsets: int = DEFAULT_TIME_SUBSET_CAP,
    max_x_exhaustive: int = 6,
    work_cap: int = DEFAULT_PATH_WORK_CAP,
) -> ActionPathSdf:
    """Construct the SDF {x_t(w)} ∪ {{w}} with the prefix sections as random moves.

    Fails with assumption-failure when W0-W3 do not all hold, and re-verifies
    the constructed instance against the SDF axioms instead of trusting the
    construction.
    """
    apw = check_apw(
        po, max_time_subsets=max_time_subsets, work_cap=work_cap
    )
    failures = [(k, v) for k, v in apw.items if k in ("W0", "W1", "W2", "W3") and not v.ok]
    if failures:
        raise StructureError(
            "outcome set violates "
            + ", ".join(f"AP.{k} ({v.witness})" for k, v in failures),
            witness=apw,
            code="assumption-failure",
        )
    idx = _index(po)
    nodes = {frozenset([w]) for w in po.paths}
    projection = {frozenset([w]): w[0] for w in po.paths}
    move_times: dict = {}
    for i, t in enumerate(po.time.points):
        for p in idx.realized[i]:
            d = idx.d_set(p)
            for w in po.scenarios.scenarios:
                group = idx.group(w, p)
                if group:
                    nodes.add(group)
                    projection[group] = w
            if d:
                m = RandomMove.of({w: idx.group(w, p) for w in d})
                if m in move_times and move_times[m] != t:
                    raise StructureError(
                        f"random move {m.fmt()} arises at two times", witness=m
                    )
                move_times[m] = t
    forest = SetForest.of(frozenset(po.paths), nodes)
    s = Sdf.of(forest, po.scenarios, projection, frozenset(move_times))
    verdict = verify_sdf(s, max_x_exhaustive=max_x_exhaustive, work_cap=work_cap)
    if not verdict.ok:
        raise StructureError(
            f"constructed instance fails verification: {verdict.describe()}",
            witness=verdict,
            code="construction-failed",
        )
    return ActionPathSdf(
        po,
        s,
        tuple(sorted(move_times.items(), key=lambda kv: canon_key(kv[0]))),
    )


def times_of_node(po: PathOutcomes, x) -> frozenset:
    """T_x = {t | ∃w ∈ x : x = x_t(w)}, computed extensionally."""
    x = frozenset(x)
    out = set()
    for t in po.time.points:
        if any(node_at(po, t, w) == x for w in x):
            out.add(t)
    return frozenset(out)


def time_of(aps: ActionPathSdf, x) -> Fraction:
    """The unique time of a move node (raises not-a-move on terminal nodes)."""
    x = frozenset(x)
    if x not in aps.sdf.forest.nodes:
        raise InputError(f"unknown node {fmt(x)}", witness=x)
    if len(x) < 2:
        raise InputError(f"node {fmt(x)} is terminal", witness=x, code="not-a-move")
    times = times_of_node(aps.po, x)
    if len(times) != 1:
        raise StructureError(
            f"move {fmt(x)} has times {fmt(times)}; unique-time property violated",
            witness=x,
        )
    return next(iter(times))


@dataclass(frozen=True)
class WindowChoiceSpec:
    """A time point, a set of admissible histories, and per-scenario action sets."""

    t: Fraction
    histories: frozenset  # of prefix tuples over the points before t
    per_scenario: tuple  # ((scenario, frozenset[action]), ...)

    @classmethod
    def of(cls, t, histories, per_scenario) -> "WindowChoiceSpec":
        return cls(
            as_time(t),
            frozenset(tuple(h) for h in histories),
            tuple(
                (w, frozenset(acts))
                for w, acts in sorted(per_scenario.items(), key=lambda kv: canon_key(kv[0]))
            ),
        )

    def actions_for(self, scenario) -> frozenset:
        for w, acts in self.per_scenario:
            if w == scenario:
                return acts
        return frozenset()


@dataclass(frozen=True)
class WindowChoice:
    spec: WindowChoiceSpec
    outcomes: frozenset
    verdicts: MultiVerdict

    @property
    def ok(self) -> bool:
        return self.verdicts.ok

    def as_choice(self, s: Sdf) -> choice_mod.Choice:
        return choice_mod.Choice.of(s, self.outcomes)


def window_choice(po: PathOutcomes, spec: WindowChoiceSpec) -> WindowChoice:
    """c(A_<t, A_t) plus the C0/C1/C2 verdicts.

    C2 quantifies over the admissible histories only; the node at t and the
    move event depend on nothing later.
    """
    idx = _index(po)
    k = po.time.index(spec.t)
    outcomes = frozenset(
        (w, f)
        for w, f in po.paths
        if f[:k] in spec.histories and f[k] in spec.actions_for(w)
    )
    c0 = (
        Verdict.passed()
        if outcomes
        else Verdict.failed("apc0", "the window choice is empty")
    )
    c1 = Verdict.passed()
    for w in canon_sorted(outcomes):
        if not (idx.group(w[0], w[1][:k]) - outcomes):
            c1 = Verdict.failed(
                "apc1", f"no alternative to {fmt(w)} inside its node"
            )
            break
    c2 = Verdict.passed()
    for h in canon_sorted(spec.histories):
        if len(h) != k:
            raise InputError(
                f"history {fmt(h)} has length {len(h)}, expected {k}", witness=h
            )
        d = idx.d_set(h)
        meets = frozenset(w for w in d if idx.group(w, h) & outcomes)
        if meets and meets != d:
            c2 = Verdict.failed(
                "apc2",
                f"history {fmt(h)}: choice meets the node for {fmt(meets)} "
                f"but the move event is {fmt(d)}",
            )
            break
    return WindowChoice(
        spec, outcomes, MultiVerdict((("C0", c0), ("C1", c1), ("C2", c2)))
    )


def agent_choice(po: PathOutcomes, t, histories, agent, g) -> WindowChoice:
    """c(A_<t, i, g): agent i takes the individual action g(ω) on g's domain.

    The domain of g must be an event; off it the per-scenario action set is
    empty. Routed through the window-choice verdicts.
    """
    if po.space.agents is None:
        raise InputError("outcome set carries no factorization", code="no-factorization")
    if agent not in po.space.agents:
        raise InputError(f"unknown agent {agent!r}", code="no-factorization")
    domain = frozenset(g)
    if not po.scenarios.is_event(domain):
        raise InputError(f"domain {fmt(domain)} of g is not an event", witness=domain)
    per_scenario = {}
    for w in po.scenarios.scenarios:
        if w in domain:
            per_scenario[w] = frozenset(
                a for a in po.space.actions if po.space.project(agent, a) == g[w]
            )
        else:
            per_scenario[w] = frozenset()
    return window_choice(po, WindowChoiceSpec.of(t, histories, per_scenario))


def _meets_every_node(move: RandomMove, outcomes) -> bool:
    return all(node & outcomes for _, node in move.items())


@cache
def agent_rcs(
    aps: ActionPathSdf,
    agent,
    max_history_subsets: int = DEFAULT_HISTORY_SUBSET_CAP,
) -> choice_mod.Rcs:
    """The reference choice structure of measurable individual action sets.

    Per random move at time t: every window choice built from a set of
    realized histories and a set of agent-i components (lifted through the
    projection on the move's domain, empty off it) that passes C0-C2 and
    meets every node of the move. The result is checked to verify as an RCS
    rather than assumed.
    """
    po = aps.po
    if po.space.agents is None:
        raise InputError("outcome set carries no factorization", code="no-factorization")
    idx = _index(po)
    per_move: dict = {}
    components = canon_sorted(po.space.components(agent))
    for move, t in aps.move_times:
        histories = canon_sorted(idx.realized_prefixes(t))
        if 2 ** len(histories) > max_history_subsets:
            raise SizeCapError(
                f"{2 ** len(histories)} history subsets at t={t} exceed the cap "
                f"{max_history_subsets}"
            )
        found = set()
        for r in range(1, len(histories) + 1):
            for combo in itertools.combinations(histories, r):
                for cr in range(1, len(components) + 1):
                    for comp_set in itertools.combinations(components, cr):
                        g_dummy = frozenset(comp_set)
                        per_scenario = {}
                        for w in po.scenarios.scenarios:
                            if w in move.domain:
                                per_scenario[w] = frozenset(
                                    a
                                    for a in po.space.actions
                                    if po.space.project(agent, a) in g_dummy
                                )
                            else:
                                per_scenario[w] = frozenset()
                        wc = window_choice(
                            po, WindowChoiceSpec.of(t, combo, per_scenario)
                        )
                        if wc.ok and _meets_every_node(move, wc.outcomes):
                            found.add(choice_mod.Choice.of(aps.sdf, wc.outcomes))
        per_move[move] = frozenset(found)
    rcs = choice_mod.Rcs.of(per_move)
    verdict = choice_mod.verify_rcs(aps.sdf, rcs)
    if not verdict:
        raise StructureError(
            f"agent reference choices fail to verify: {verdict.describe()}"
        )
    return rcs


@dataclass(frozen=True)
class Apc3Result:
    verdict: Verdict
    histories: frozenset | None = None
    generator: frozenset | None = None


@cache
def _intersection_stable_generators(components: frozenset) -> list:
    """Candidate generators of the power set of the component set.

    The canonical candidate (all proper subsets) first, then every other
    intersection-stable family that generates the full power set; only
    feasible for small component sets.
    """
    subsets = [
        frozenset(c)
        for r in range(len(components) + 1)
        for c in itertools.combinations(canon_sorted(components), r)
    ]
    canonical = frozenset(s for s in subsets if s != components)

    def generates(family) -> bool:
        profiles = {
            x: tuple(x in g for g in canon_sorted(family)) for x in components
        }
        return len(set(profiles.values())) == len(components)

    def stable(family) -> bool:
        return all(g1 & g2 in family for g1 in family for g2 in family)

    out = [canonical]
    if len(components) <= 3:
        for r in range(len(subsets) + 1):
            for fam in itertools.combinations(subsets, r):
                fam = frozenset(fam)
                if fam != canonical and stable(fam) and generates(fam):
                    out.append(fam)
    return out


def check_apc3(
    aps: ActionPathSdf,
    agent,
    move: RandomMove,
    *,
    choice: WindowChoice | None = None,
    max_candidates: int = 512,
) -> Apc3Result:
    """Search for histories A'_<t and an intersection-stable generator.

    The witness pair must cover the realized prefixes of the given choice
    (the move's own prefix when none is given) and send every generator
    member G to a window choice that is empty or lies in the agent's
    reference choices at the move. The first hit is returned.
    """
    po = aps.po
    if po.space.agents is None:
        raise InputError("outcome set carries no factorization", code="no-factorization")
    t = aps.time_of_move(move)
    k = po.time.index(t)
    if choice is not None:
        required = frozenset(f[:k] for _, f in choice.outcomes)
    else:
        required = frozenset(
            next(iter(move.node_at(w)))[1][:k] for w in move.domain
        )
    realized = frozenset(_index(po).realized_prefixes(t))
    if not required <= realized:
        raise InputError("required prefixes are not realized", witness=required)
    optional = canon_sorted(realized - required)
    candidates = [required, realized]
    for r in range(1, len(optional) + 1):
        for combo in itertools.combinations(optional, r):
            candidates.append(required | frozenset(combo))
    seen: set = set()
    unique_candidates = []
    for cand in candidates:
        if cand not in seen:
            seen.add(cand)
            unique_candidates.append(cand)
    capped = len(unique_candidates) > max_candidates
    unique_candidates = unique_candidates[:max_candidates]
    references = agent_rcs(aps, agent).for_move(move)
    for histories in unique_candidates:
        for generator in _intersection_stable_generators(po.space.components(agent)):
            hit = True
            for g_set in canon_sorted(generator):
                per_scenario = {}
                for w in po.scenarios.scenarios:
                    if w in move.domain:
                        per_scenario[w] = frozenset(
                            a
                            for a in po.space.actions
                            if po.space.project(agent, a) in g_set
                        )
                    else:
                        per_scenario[w] = frozenset()
                wc = window_choice(po, WindowChoiceSpec.of(t, histories, per_scenario))
                if not wc.outcomes:
                    continue
                if not (
                    wc.ok
                    and _meets_every_node(move, wc.outcomes)
                    and choice_mod.Choice.of(aps.sdf, wc.outcomes) in references
                ):
                    hit = False
                    break
            if hit:
                return Apc3Result(
                    Verdict.passed(
                        f"A'_<t with {len(histories)} histories, generator of "
                        f"{len(generator)} sets"
                    ),
                    histories,
                    generator,
                )
    notes = ("candidate search capped; verdict not exhaustive",) if capped else ()
    return Apc3Result(
        Verdict(False, "apc3-not-found", "no (A'_<t, generator) pair found", notes=notes)
    )


@dataclass(frozen=True)
class MeasurabilityRecord:
    move: RandomMove
    domain_ok: bool
    measurable: bool
    adapted: bool
    apc3: bool


@dataclass(frozen=True)
class MeasurabilityReport:
    domain: Verdict
    forward: Verdict
    backward: Verdict
    records: tuple

    @property
    def ok(self) -> bool:
        return self.domain.ok and self.forward.ok and self.backward.ok


def check_measurable_iff_adapted(
    aps: ActionPathSdf, agent, e: Eis, t, histories, g
) -> MeasurabilityReport:
    """Measurability of g versus adaptedness of c(A_<t, i, g), per available move.

    Forward: measurability of g on D_x implies the adaptedness condition at
    x. Backward: when the generator search succeeds, the adaptedness
    condition at x implies measurability. Also confirms D_x ⊆ D.
    """
    wc = agent_choice(aps.po, t, histories, agent, g)
    if not wc.ok:
        raise InputError(
            f"c(A_<t, i, g) fails C0-C2: {wc.verdicts.describe()}",
            code="precondition-violation",
        )
    s = aps.sdf
    c = choice_mod.Choice.of(s, wc.outcomes)
    rcs = agent_rcs(aps, agent)
    flags = choice_mod.classify(s, c)
    domain = Verdict.passed()
    forward = Verdict.passed()
    backward = Verdict.passed()
    records = []
    g_domain = frozenset(g)
    for move in canon_sorted(flags.available_at):
        domain_ok = move.domain <= g_domain
        if not domain_ok and domain.ok:
            domain = Verdict.failed(
                "domain-not-contained", f"D_x ⊄ D at {move.fmt()}"
            )
        sigma = e.for_move(move)
        measurable = all(
            sigma.contains(
                frozenset(w for w in move.domain if g[w] == value)
            )
            for value in canon_sorted({g[w] for w in move.domain})
        )
        adapted = choice_mod.adapted_at_move(s, e, rcs, c, move).ok
        apc3 = check_apc3(aps, agent, move, choice=wc).verdict.ok
        if measurable and not adapted and forward.ok:
            forward = Verdict.failed(
                "forward-implication",
                f"g measurable at {move.fmt()} but the choice is not adapted there",
            )
        if apc3 and adapted and not measurable and backward.ok:
            backward = Verdict.failed(
                "backward-implication",
                f"choice adapted at {move.fmt()} with AP.C3, but g not measurable",
            )
        records.append(MeasurabilityRecord(move, domain_ok, measurable, adapted, apc3))
    return MeasurabilityReport(domain, forward, backward, tuple(records))


def product_outcomes(
    scenarios: ScenarioSpace, time: TimeAxis, actions, factorization=None
) -> PathOutcomes:
    """W = Ω × A^T: at every move every action is possible."""
    space = ActionSpace.of(actions, factorization)
    paths = [
        (w, f)
        for w in scenarios.scenarios
        for f in itertools.product(canon_sorted(space.actions), repeat=len(time.points))
    ]
    return PathOutcomes.of(time, space, scenarios, paths)


def timing_outcomes(
    scenarios: ScenarioSpace, time: TimeAxis, agents
) -> PathOutcomes:
    """Stopping problems: actions are 0/1 vectors, paths componentwise decreasing."""
    agents = tuple(agents)
    actions = [tuple(bits) for bits in itertools.product((0, 1), repeat=len(agents))]
    factorization = {
        agent: {a: a[i] for a in actions} for i, agent in enumerate(agents)
    }
    space = ActionSpace.of(actions, factorization)
    n = len(time.points)
    paths = []
    for f in itertools.product(actions, repeat=n):
        if all(
            f[j][i] <= f[j - 1][i]
            for j in range(1, n)
            for i in range(len(agents))
        ):
            paths.extend((w, f) for w in scenarios.scenarios)
    return PathOutcomes.of(time, space, scenarios, paths)


def up_and_out_outcomes(
    scenarios: ScenarioSpace, time: TimeAxis, price, barrier=Fraction(2)
) -> PathOutcomes:
    """Exercise of an up-and-out option against a tabulated price process.

    `price` maps (time, scenario) to an exact rational with price 1 at time 0.
    A path may switch from 1 (hold) to 0 (exercised) at a stopping time t*
    only if the price has stayed below the barrier through t*. The continuity
    arguments of the continuous-time model are replaced by explicit
    next-time-point checks on the table.
    """
    points = time.points
    for w in scenarios.scenarios:
        if Fraction(price[(points[0], w)]) != 1:
            raise InputError(
                f"price at time 0 must be 1 (scenario {fmt(w)})", witness=w
            )
    actions = [0, 1]
    factorization = {"1": {0: 0, 1: 1}}
    space = ActionSpace.of(actions, factorization)
    paths = []
    for w in scenarios.scenarios:
        for stop in list(range(len(points))) + [None]:
            f = tuple(1 if (stop is None or i < stop) else 0 for i in range(len(points)))
            if stop is not None:
                running_max = max(
                    Fraction(price[(points[i], w)]) for i in range(stop + 1)
                )
                if not running_max < barrier:
                    continue
            paths.append((w, f))
    return PathOutcomes.of(time, space, scenarios, paths)
