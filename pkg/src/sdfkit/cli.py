"""Instance-file ingestion, command dispatch, and verification reports.

Instance documents are JSON with a top-level "kind": an explicit node-level
description, an action-path description (extensional paths or a named
generator), or a builtin name. Reports aggregate kernel verdicts verbatim
and come in a human text format (with timings) and a machine JSON format
(timing-free, byte-identical for identical inputs and caps).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import examples
from ._canon import canon_sorted, fmt
from .action_path import (
    ActionPathSdf,
    ActionSpace,
    PathOutcomes,
    TimeAxis,
    _index as path_index,
    build_action_path_sdf,
    check_apc3,
    check_apw,
    product_outcomes,
    check_measurable_iff_adapted,
    timing_outcomes,
    up_and_out_outcomes,
)
from .choice import Choice, Rcs, classify, predecessors, verify_rcs, is_adapted
from .errors import KernelError, SizeCapError
from .sdf import (
    RandomMove,
    ScenarioSpace,
    Sdf,
    check_evaluation_bijection,
    check_ttree_theorem,
    verify_sdf,
)
from .set_forest import SetForest
from .sigma_info import Eis, SubSigma, enumerate_eis, verify_eis
from .verdict import MultiVerdict, Verdict

BUILTINS = ("simple", "variant", "timing", "upandout")


class ParseError(Exception):
    """Input rejected, with a position or path for the diagnostic."""

    def __init__(self, message: str, *, line: int | None = None, col: int | None = None, path: str = ""):
        loc = ""
        if line is not None:
            loc = f" at line {line}, column {col}"
        elif path:
            loc = f" at {path}"
        super().__init__(message + loc)
        self.line = line
        self.col = col
        self.path = path


@dataclass
class InstanceDoc:
    kind: str
    name: str | None = None
    sdf: Sdf | None = None
    po: PathOutcomes | None = None
    named_choices: dict = field(default_factory=dict)
    doc_eis: Eis | None = None
    doc_rcs: Rcs | None = None
    source: dict = field(default_factory=dict)


def _expect(cond: bool, message: str, path: str):
    if not cond:
        raise ParseError(message, path=path)


def _get(obj, key, kind, path, optional=False, default=None):
    if key not in obj:
        _expect(optional, f"missing field {key!r}", path)
        return default
    value = obj[key]
    _expect(isinstance(value, kind), f"field {key!r} has the wrong type", f"{path}.{key}")
    return value


def _fraction(text, path) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"bad rational {text!r}", path=path) from None


def _scenario_space(obj, path) -> ScenarioSpace:
    scenarios = _get(obj, "scenarios", list, path)
    _expect(bool(scenarios), "scenarios must be nonempty", f"{path}.scenarios")
    atoms = _get(obj, "atoms", list, path, optional=True)
    try:
        if atoms is None:
            return ScenarioSpace.discrete(scenarios)
        return ScenarioSpace.of(scenarios, [frozenset(a) for a in atoms])
    except KernelError as e:
        raise ParseError(str(e), path=f"{path}.atoms") from None


def _parse_explicit(obj) -> InstanceDoc:
    path = "$"
    space = _scenario_space(obj, path)
    outcomes = _get(obj, "outcomes", list, path)
    node_lists = _get(obj, "nodes", list, path)
    universe = frozenset(outcomes)
    nodes = []
    for i, entry in enumerate(node_lists):
        _expect(isinstance(entry, list), "node must be an outcome array", f"{path}.nodes[{i}]")
        for o in entry:
            _expect(o in universe, f"unresolved outcome {o!r}", f"{path}.nodes[{i}]")
        nodes.append(frozenset(entry))
    move_entries = _get(obj, "random_moves", list, path)
    moves = []
    for i, entry in enumerate(move_entries):
        mpath = f"{path}.random_moves[{i}]"
        _expect(isinstance(entry, dict), "random move must be an object", mpath)
        assignment = _get(entry, "assignment", dict, mpath)
        mapping = {}
        for scen, node_idx in assignment.items():
            _expect(scen in space.scenarios, f"unresolved scenario {scen!r}", mpath)
            _expect(
                isinstance(node_idx, int) and 0 <= node_idx < len(nodes),
                f"unresolved node index {node_idx!r}",
                mpath,
            )
            mapping[scen] = nodes[node_idx]
        _expect(bool(mapping), "random move needs a nonempty assignment", mpath)
        domain = entry.get("domain")
        if domain is not None:
            _expect(
                frozenset(domain) == frozenset(mapping),
                "declared domain differs from the assignment's scenarios",
                mpath,
            )
        moves.append(RandomMove.of(mapping))
    table = _get(obj, "outcome_scenarios", dict, path)
    for o in universe:
        _expect(o in table, f"outcome {o!r} missing a scenario", f"{path}.outcome_scenarios")
        _expect(
            table[o] in space.scenarios,
            f"unresolved scenario {table[o]!r}",
            f"{path}.outcome_scenarios",
        )
    try:
        forest = SetForest.of(universe, nodes)
        projection = {}
        for x in forest.nodes:
            scens = {table[o] for o in x}
            _expect(len(scens) == 1, f"node {fmt(x)} mixes scenarios", f"{path}.nodes")
            projection[x] = next(iter(scens))
        sdf = Sdf.of(forest, space, projection, moves)
    except ParseError:
        raise
    except KernelError as e:
        raise ParseError(str(e), path=path) from None
    doc = InstanceDoc("explicit-sdf", sdf=sdf, source=obj)
    _parse_sections(doc, obj, moves, universe)
    return doc


def _parse_sections(doc: InstanceDoc, obj, moves, universe):
    choices = obj.get("choices")
    if choices is not None:
        _expect(isinstance(choices, dict), "choices must be an object", "$.choices")
        for name, outs in choices.items():
            _expect(isinstance(outs, list), "choice must be an outcome array", f"$.choices.{name}")
            for o in outs:
                _expect(o in universe, f"unresolved outcome {o!r}", f"$.choices.{name}")
            doc.named_choices[name] = frozenset(outs)
    eis_src = obj.get("eis")
    if eis_src is not None:
        _expect(isinstance(eis_src, list), "eis must be an array", "$.eis")
        per_move = {}
        for i, entry in enumerate(eis_src):
            epath = f"$.eis[{i}]"
            _expect(isinstance(entry, dict), "eis entry must be an object", epath)
            idx = _get(entry, "move", int, epath)
            _expect(0 <= idx < len(moves), f"unresolved move index {idx}", epath)
            atoms = _get(entry, "atoms", list, epath)
            try:
                per_move[moves[idx]] = SubSigma.of(
                    moves[idx].domain, [frozenset(a) for a in atoms]
                )
            except KernelError as e:
                raise ParseError(str(e), path=epath) from None
        _expect(len(per_move) == len(moves), "eis must cover every random move", "$.eis")
        doc.doc_eis = Eis.of(per_move)
    rcs_src = obj.get("rcs")
    if rcs_src is not None and doc.sdf is not None:
        _expect(isinstance(rcs_src, list), "rcs must be an array", "$.rcs")
        per_move = {m: frozenset() for m in moves}
        for i, entry in enumerate(rcs_src):
            rpath = f"$.rcs[{i}]"
            _expect(isinstance(entry, dict), "rcs entry must be an object", rpath)
            idx = _get(entry, "move", int, rpath)
            _expect(0 <= idx < len(moves), f"unresolved move index {idx}", rpath)
            outs = _get(entry, "choices", list, rpath)
            try:
                per_move[moves[idx]] = frozenset(
                    Choice.of(doc.sdf, frozenset(c)) for c in outs
                )
            except KernelError as e:
                raise ParseError(str(e), path=rpath) from None
        doc.doc_rcs = Rcs.of(per_move)


def _parse_action_path(obj) -> InstanceDoc:
    path = "$"
    space = _scenario_space(obj, path)
    raw_points = _get(obj, "time_points", list, path)
    time_axis = TimeAxis.of([_fraction(p, f"{path}.time_points") for p in raw_points])
    generator = obj.get("generator")
    if generator is None:
        actions = _get(obj, "actions", list, path)
        factorization_src = _get(obj, "factorization", dict, path, optional=True)
        factorization = None
        if factorization_src is not None:
            agents = sorted({a for table in factorization_src.values() for a in table})
            factorization = {
                agent: {} for agent in agents
            }
            for action, table in factorization_src.items():
                _expect(action in actions, f"unresolved action {action!r}", f"{path}.factorization")
                for agent, comp in table.items():
                    factorization[agent][action] = comp
        try:
            action_space = ActionSpace.of(actions, factorization)
            paths = []
            for i, entry in enumerate(_get(obj, "paths", list, path)):
                ppath = f"{path}.paths[{i}]"
                _expect(isinstance(entry, dict), "path entry must be an object", ppath)
                scen = _get(entry, "scenario", (str, int), ppath)
                seq = _get(entry, "path", list, ppath)
                paths.append((scen, tuple(seq)))
            po = PathOutcomes.of(time_axis, action_space, space, paths)
        except KernelError as e:
            raise ParseError(str(e), path=path) from None
    else:
        try:
            if generator == "product":
                actions = _get(obj, "actions", list, path)
                po = product_outcomes(space, time_axis, actions)
            elif generator == "timing":
                agents = _get(obj, "agents", list, path)
                po = timing_outcomes(space, time_axis, agents)
            elif isinstance(generator, dict) and generator.get("name") == "up-and-out":
                price_src = _get(generator, "price", dict, "$.generator")
                price = {}
                for scen in space.scenarios:
                    _expect(
                        str(scen) in price_src or scen in price_src,
                        f"price table missing scenario {scen!r}",
                        "$.generator.price",
                    )
                    row = price_src.get(str(scen), price_src.get(scen))
                    _expect(
                        isinstance(row, list) and len(row) == len(time_axis.points),
                        "price row must list one value per time point",
                        "$.generator.price",
                    )
                    for i, t in enumerate(time_axis.points):
                        price[(t, scen)] = _fraction(row[i], "$.generator.price")
                barrier = _fraction(generator.get("barrier", "2"), "$.generator.barrier")
                po = up_and_out_outcomes(space, time_axis, price, barrier)
            else:
                raise ParseError(f"unknown generator {generator!r}", path="$.generator")
        except KernelError as e:
            raise ParseError(str(e), path="$.generator") from None
    doc = InstanceDoc("action-path", po=po, source=obj)
    choices = obj.get("choices")
    if choices is not None:
        _expect(isinstance(choices, dict), "choices must be an object", "$.choices")
        for name, outs in choices.items():
            cpath = f"$.choices.{name}"
            _expect(isinstance(outs, list), "choice must be an outcome array", cpath)
            resolved = set()
            for entry in outs:
                _expect(isinstance(entry, dict), "outcome must be {scenario, path}", cpath)
                w = (entry.get("scenario"), tuple(entry.get("path", ())))
                _expect(w in po.paths, f"unresolved outcome {fmt(w)}", cpath)
                resolved.add(w)
            doc.named_choices[name] = frozenset(resolved)
    return doc


def parse_instance(text: str) -> InstanceDoc:
    """Parse an instance document or raise a positioned ParseError."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"syntax error: {e.msg}", line=e.lineno, col=e.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object", path="$")
    kind = obj.get("kind")
    if kind == "builtin":
        name = obj.get("name")
        if name not in BUILTINS:
            raise ParseError(
                f"unknown builtin {name!r}; expected one of {', '.join(BUILTINS)}",
                path="$.name",
            )
        return InstanceDoc("builtin", name=name, source=obj)
    if kind == "explicit-sdf":
        return _parse_explicit(obj)
    if kind == "action-path":
        return _parse_action_path(obj)
    raise ParseError(f"unknown kind {kind!r}", path="$.kind")


@dataclass
class CheckRecord:
    check_id: str
    status: str  # ok | partial | fail | error
    items: tuple = ()
    data: dict = field(default_factory=dict)
    message: str = ""
    elapsed_ms: float = 0.0


@dataclass
class Report:
    records: list
    caps: dict

    @property
    def ok(self) -> bool:
        return all(r.status in ("ok", "partial") for r in self.records)


def _status_of(v) -> str:
    if isinstance(v, (Verdict, MultiVerdict)):
        if v.ok:
            return "partial" if v.partial else "ok"
        return "fail"
    raise TypeError(v)


def _items_of(v) -> tuple:
    if isinstance(v, MultiVerdict):
        return v.items
    return (("result", v),)


class _Instance:
    """Everything the commands need, resolved once per run."""

    def __init__(self, doc: InstanceDoc, caps: dict):
        self.doc = doc
        self.caps = caps
        self.sdf: Sdf | None = None
        self.aps: ActionPathSdf | None = None
        self.po: PathOutcomes | None = None
        self.build_error: str | None = None
        self.named_choices = dict(doc.named_choices)
        self.rcs: Rcs | None = doc.doc_rcs
        self.doc_eis: Eis | None = doc.doc_eis
        if doc.kind == "explicit-sdf":
            self.sdf = doc.sdf
        elif doc.kind == "action-path":
            self.po = doc.po
            self._build()
        else:
            self._resolve_builtin(doc.name)

    def _build(self):
        try:
            self.aps = build_action_path_sdf(
                self.po,
                max_time_subsets=self.caps["max_time_subsets"],
                max_x_exhaustive=self.caps["max_x"],
            )
            self.sdf = self.aps.sdf
        except KernelError as e:
            self.build_error = f"{e.code}: {e}"

    def _resolve_builtin(self, name: str):
        if name == "simple":
            self.sdf = examples.build_simple()
            self.rcs = examples.simple_rcs(self.sdf)
            self.named_choices = examples.all_named_choices("simple")
        elif name == "variant":
            self.sdf = examples.build_variant()
            self.rcs = examples.variant_rcs(self.sdf)
            self.named_choices = examples.all_named_choices("variant")
        elif name == "timing":
            self.po = timing_outcomes(
                ScenarioSpace.discrete((1, 2)), TimeAxis.of([0, 1, 2]), ("1", "2")
            )
            self._build()
        elif name == "upandout":
            self.po = up_and_out_outcomes(
                ScenarioSpace.discrete((1, 2)),
                TimeAxis.of([0, 1, 2]),
                examples.up_and_out_price_table(),
            )
            self._build()

    def need_sdf(self) -> Sdf:
        if self.sdf is None:
            raise KernelError(self.build_error or "no decision forest in this instance")
        return self.sdf

    def choice_named(self, name: str) -> frozenset:
        if name not in self.named_choices:
            raise KernelError(
                f"unknown choice {name!r}; known: "
                + ", ".join(sorted(self.named_choices) or ("<none>",))
            )
        return self.named_choices[name]


def _run_check(inst: _Instance, token: str, caps: dict) -> CheckRecord:
    name, _, arg = token.partition(":")
    start = time.perf_counter()
    try:
        record = _dispatch(inst, name, arg, caps)
    except SizeCapError as e:
        record = CheckRecord(token, "error", message=f"cap-exceeded: {e}")
    except KernelError as e:
        record = CheckRecord(token, "error", message=f"{e.code}: {e}")
    record.check_id = token
    record.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return record


def _dispatch(inst: _Instance, name: str, arg: str, caps: dict) -> CheckRecord:
    if name == "verify":
        items = []
        if inst.po is not None:
            apw = check_apw(inst.po, max_time_subsets=caps["max_time_subsets"])
            items.extend((f"AP.{k}", v) for k, v in apw.items)
            if inst.build_error is not None:
                return CheckRecord(
                    name, "fail", tuple(items), message=inst.build_error
                )
        verdict = verify_sdf(inst.need_sdf(), max_x_exhaustive=caps["max_x"])
        items.extend(verdict.items)
        bundle = MultiVerdict(tuple(items))
        return CheckRecord(name, _status_of(bundle), bundle.items)
    if name == "ttree":
        s = inst.need_sdf()
        ev = check_evaluation_bijection(s)
        try:
            tt = check_ttree_theorem(s)
        except KernelError as e:
            tt = Verdict.failed(e.code, str(e))
        bundle = MultiVerdict((("evaluation-bijection", ev), ("rooted-tree", tt)))
        return CheckRecord(name, _status_of(bundle), bundle.items)
    if name == "enumerate-eis":
        structures = enumerate_eis(inst.need_sdf())
        listing = [
            [
                [fmt(sigma.atoms) for _, sigma in e.entries],
            ]
            for e in structures
        ]
        return CheckRecord(
            name,
            "ok",
            (("count", Verdict.passed(f"{len(structures)} structures")),),
            data={"count": len(structures), "structures": listing},
        )
    if name == "predecessors":
        s = inst.need_sdf()
        nodes = predecessors(s, inst.choice_named(arg))
        return CheckRecord(
            name,
            "ok",
            (("result", Verdict.passed(f"{len(nodes)} predecessor nodes")),),
            data={"choice": arg, "nodes": [fmt(x) for x in canon_sorted(nodes)]},
        )
    if name == "classify":
        s = inst.need_sdf()
        flags = classify(s, Choice.of(s, inst.choice_named(arg)))
        return CheckRecord(
            name,
            "ok" if (flags.non_redundant and flags.complete) else "fail",
            (
                (
                    "non-redundant",
                    Verdict.passed() if flags.non_redundant else Verdict.failed(
                        "redundant", f"scenario {fmt(flags.redundancy_witness[0])}"
                    ),
                ),
                (
                    "complete",
                    Verdict.passed() if flags.complete else Verdict.failed(
                        "incomplete", flags.completeness_witness[0].fmt()
                    ),
                ),
            ),
            data={
                "choice": arg,
                "available_at": [m.fmt() for m in canon_sorted(flags.available_at)],
            },
        )
    if name == "adapted":
        s = inst.need_sdf()
        choice_name, _, eis_idx = arg.partition(":")
        c = Choice.of(s, inst.choice_named(choice_name))
        if eis_idx:
            structures = enumerate_eis(s)
            k = int(eis_idx)
            if not 1 <= k <= len(structures):
                raise KernelError(f"eis index {k} out of range 1..{len(structures)}")
            e = structures[k - 1]
        elif inst.doc_eis is not None:
            e = inst.doc_eis
        else:
            raise KernelError("adapted needs an eis section or an :<index> suffix")
        if inst.rcs is None:
            raise KernelError("adapted needs a reference choice structure (rcs)")
        ev = verify_eis(s, e)
        rv = verify_rcs(s, inst.rcs)
        if not (ev.ok and rv.ok):
            bad = ev if not ev.ok else rv
            return CheckRecord(name, "fail", (("preconditions", bad),))
        verdict = is_adapted(s, e, inst.rcs, c)
        return CheckRecord(name, _status_of(verdict), (("adapted", verdict),))
    if name == "apw":
        if inst.po is None:
            raise KernelError("apw applies to action-path instances only")
        verdict = check_apw(inst.po, max_time_subsets=caps["max_time_subsets"])
        return CheckRecord(name, _status_of(verdict), verdict.items)
    if name == "apc":
        if inst.aps is None:
            raise KernelError(inst.build_error or "apc needs a built action-path instance")
        if inst.po.space.agents is None:
            raise KernelError("apc needs a factorization", )
        items = []
        for agent in inst.po.space.agents:
            for move, _t in inst.aps.move_times:
                result = check_apc3(inst.aps, agent, move)
                items.append((f"agent {agent} @ {move.fmt()}", result.verdict))
        bundle = MultiVerdict(tuple(items))
        return CheckRecord(name, _status_of(bundle), bundle.items)
    if name == "thm4-11":
        if inst.aps is None:
            raise KernelError(inst.build_error or "thm4-11 needs a built action-path instance")
        if inst.po.space.agents is None:
            raise KernelError("thm4-11 needs a factorization")
        items = []
        skipped = 0
        structures = enumerate_eis(inst.sdf)
        for agent in inst.po.space.agents:
            components = canon_sorted(inst.po.space.components(agent))
            for ei, e in enumerate(structures, start=1):
                for move, t in inst.aps.move_times:
                    own_prefix = frozenset(
                        next(iter(move.node_at(w)))[1][: inst.po.time.index(t)]
                        for w in move.domain
                    )
                    realized = path_index(inst.po).realized_prefixes(t)
                    for label, hist in (("all", realized), ("own", own_prefix)):
                        for values in itertools.product(components, repeat=len(inst.po.scenarios.scenarios)):
                            g = dict(zip(canon_sorted(inst.po.scenarios.scenarios), values))
                            try:
                                result = check_measurable_iff_adapted(
                                    inst.aps, agent, e, t, hist, g
                                )
                            except KernelError:
                                skipped += 1
                                continue
                            ok = result.ok
                            items.append(
                                (
                                    f"agent {agent}, eis {ei}, t={t}, {label}, g={fmt(tuple(values))}",
                                    Verdict.passed()
                                    if ok
                                    else Verdict.failed(
                                        "thm4-11",
                                        "; ".join(
                                            v.describe()
                                            for v in (result.domain, result.forward, result.backward)
                                            if not v.ok
                                        ),
                                    ),
                                )
                            )
        bundle = MultiVerdict(tuple(items))
        rec = CheckRecord(name, _status_of(bundle), bundle.items)
        rec.data = {"skipped": skipped, "checked": len(items)}
        return rec
    raise KernelError(f"unknown command {name!r}", )


def run(doc: InstanceDoc, commands, *, max_x: int = 6, max_time_subsets: int = 8) -> Report:
    caps = {"max_x": max_x, "max_time_subsets": max_time_subsets}
    inst = _Instance(doc, caps)
    records = [_run_check(inst, token, caps) for token in commands]
    return Report(records, caps)


def report_to_json(report: Report, doc: InstanceDoc) -> str:
    """Machine format: deterministic, no timings."""
    payload = {
        "kind": doc.kind,
        "name": doc.name,
        "caps": report.caps,
        "overall": "ok" if report.ok else "fail",
        "checks": [
            {
                "id": r.check_id,
                "status": r.status,
                "message": r.message,
                "items": [
                    {
                        "name": k,
                        "ok": v.ok,
                        "code": v.code,
                        "witness": v.witness,
                        "partial": v.partial,
                        "notes": list(v.notes),
                    }
                    for k, v in r.items
                ],
                "data": r.data,
            }
            for r in report.records
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2, default=str)


def report_to_text(report: Report, doc: InstanceDoc) -> str:
    lines = [f"instance: {doc.kind}" + (f" ({doc.name})" if doc.name else "")]
    for r in report.records:
        lines.append(f"check {r.check_id}: {r.status} [{r.elapsed_ms:.1f} ms]")
        if r.message:
            lines.append(f"  {r.message}")
        for k, v in r.items:
            lines.append(f"  {k}: {v.describe()}")
        for key, value in sorted(r.data.items()):
            lines.append(f"  {key}: {value}")
    lines.append(f"overall: {'ok' if report.ok else 'fail'}")
    return "\n".join(lines)


def _add_options(parser, suppress: bool):
    # registered on the subcommands too, so flags may follow the check list
    kwargs = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--format", choices=("text", "json"),
        **(kwargs or {"default": "text"}),
    )
    parser.add_argument(
        "--max-x", type=int, help="exhaustive axiom-3e cap on |X|",
        **(kwargs or {"default": 6}),
    )
    parser.add_argument(
        "--max-time-subsets", type=int, help="AP.W2 exhaustive subset cap on |T|",
        **(kwargs or {"default": 8}),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sdf", description="Stochastic decision forest instance checker"
    )
    _add_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    p_verify = sub.add_parser("verify", help="check an instance file")
    p_verify.add_argument("file")
    p_verify.add_argument("checks", nargs="*", default=[])
    _add_options(p_verify, suppress=True)
    p_builtin = sub.add_parser("builtin", help="check a built-in instance")
    p_builtin.add_argument("name", choices=BUILTINS)
    p_builtin.add_argument("checks", nargs="*", default=[])
    _add_options(p_builtin, suppress=True)
    args = parser.parse_args(argv)

    if args.command == "verify":
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        try:
            doc = parse_instance(text)
        except ParseError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    else:
        doc = InstanceDoc("builtin", name=args.name)
        inst_src = {"kind": "builtin", "name": args.name}
        doc.source = inst_src

    checks = list(args.checks) or ["verify"]
    report = run(doc, checks, max_x=args.max_x, max_time_subsets=args.max_time_subsets)
    if args.format == "json":
        print(report_to_json(report, doc))
    else:
        print(report_to_text(report, doc))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
