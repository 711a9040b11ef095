"""Command-line interface.

Every subcommand emits a single JSON envelope (see ``data/report.schema.json``):

    {"command": ..., "input_digest": ..., "version": ..., "result": ...,
     "summary": ...}

The digest is the sha256 of the input file when there is one, otherwise of
the canonical argument object.  ``--format text`` renders the same envelope
as indented lines; there is no separate text pipeline.  Exit codes: 0 on
success, 1 when a checked property fails (a blocked unfolding, a failed
certificate, selftest failures, ...), 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from fractions import Fraction
from importlib import resources

from . import __version__
from .circle_maps import (
    Angle,
    PLCircleMap,
    TransverseArc,
    classify_preimage,
    make_map,
    random_map,
)
from .double_points import (
    DoublePointCurve,
    arc_lift_check,
    controlled_hopf,
    double_point_curve,
    hopf_invariant,
    realizability_report,
)
from .space_forms import (
    build_group,
    cover_double_point_model,
    cover_realizable,
    dcover_consistency,
    hopf_of_cover,
    involution_count,
    nonrealizable_map_exists,
)
from .sweeps import (
    SweepMovie,
    assign_disks,
    embedding_certificate,
    make_event,
    random_movie,
    surgery_census,
    validate_movie,
)
from .unfolding import (
    UnfoldingBlocked,
    eliminate_negative_arcs,
    eulerian_resolution,
    pair_count_check,
    random_admissible_graph,
    trace_circuits,
)

_DEFAULT_SEED = 2026


def _plain(x):
    """Make a result JSON-ready: fractions and angles become 'p/q' strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Angle):
        return str(x.value)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _digest_args(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(canon).hexdigest()


def _load_map(path: str) -> PLCircleMap:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "breakpoints" not in data or "degree" not in data:
        raise ValueError("a map file needs 'breakpoints' and 'degree'")
    return make_map(
        [(x, l) for x, l in data["breakpoints"]], int(data["degree"])
    )


def _load_movie(path: str) -> SweepMovie:
    with open(path) as fh:
        data = json.load(fh)
    events = tuple(
        make_event(ev["time"], ev["kind"], *ev["labels"])
        for ev in data.get("events", ())
    )
    return SweepMovie(initial=tuple(data.get("initial", ())), events=events)


def _arc_from(args) -> TransverseArc | None:
    if args.arc is None:
        return None
    return TransverseArc(args.arc[0], args.arc[1])


def _arc_payload(arc: TransverseArc) -> dict:
    return {"start": arc.start, "end": arc.end, "width": arc.width}


def _map_payload(f: PLCircleMap) -> dict:
    return {
        "degree": f.degree,
        "lap_count": f.lap_count,
        "fold_count": len(f.folds),
        "breakpoints": [[x, l] for x, l in f.breakpoints],
        "critical_values": sorted(v.value for v in f.critical_values),
    }


def _curve_payload(curve: DoublePointCurve) -> dict:
    return {
        "component_count": len(curve.components),
        "components": [
            {
                "index": c.index,
                "kind": c.kind,
                "p1": c.p1_degree,
                "p2": c.p2_degree,
                "segments": len(c.segments),
                "swap_image": curve.swap_pairing[c.index],
            }
            for c in curve.components
        ],
        "closures": [
            {
                "arcs": list(cc.arcs),
                "diagonal_points": list(cc.diagonal_points),
                "flips": cc.flips,
                "orientable": cc.orientable,
            }
            for cc in curve.closure_components
        ],
        "hopf": hopf_invariant(curve),
        "controlled_hopf": [
            {"members": list(members), "bit": bit}
            for members, bit in controlled_hopf(curve)
        ],
    }


def _classification_payload(f: PLCircleMap, arc: TransverseArc) -> dict:
    cls = classify_preimage(f, arc)
    return {
        "arc": _arc_payload(arc),
        "positive": cls.positive_count,
        "negative": cls.negative_count,
        "neutral": cls.neutral_count,
        "circle": cls.circle_count,
        "components": [
            {"kind": c.kind, "start": c.start, "end": c.end}
            for c in cls.components
        ],
    }


# --------------------------------------------------------------------------
# subcommands: each returns (digest, result, summary, exit_code)


def _cmd_analyze(args):
    f = _load_map(args.map)
    curve = double_point_curve(f)
    report = realizability_report(curve)
    lift = arc_lift_check(curve)
    result = {
        "map": _map_payload(f),
        "curve": _curve_payload(curve),
        "realizability": {
            "criterion_pass": report.criterion_pass,
            "criterion_witness": report.criterion_witness,
            "classical_pass": report.classical_pass,
            "agreement": report.agreement,
            "note": report.note,
        },
        "arc_lift_violation": lift.violation,
    }
    if args.arc:
        result["classification"] = _classification_payload(f, _arc_from(args))
    verdict = "passes" if report.criterion_pass else "fails"
    summary = (
        f"degree {f.degree}, {len(f.folds)} folds, "
        f"{len(curve.components)} double-point components, "
        f"criterion {verdict}"
    )
    return _digest_file(args.map), result, summary, 0


def _step_payload(step) -> dict:
    payload: dict = {
        "arc": _arc_payload(step.arc),
        "negative": step.negative_count,
        "positive": step.positive_count,
    }
    if step.extended_start is not None:
        payload["extended_start"] = step.extended_start
    if step.extended_end is not None:
        payload["extended_end"] = step.extended_end
    if step.path is not None:
        payload["path"] = {
            "from_component": step.path.start_component,
            "to_component": step.path.end_component,
            "direction": step.path.direction,
            "start": step.path.start_point,
            "end": step.path.end_point,
            "level": step.path.level,
            "one_sided": step.path.one_sided,
            "skipped": list(step.path.skipped),
        }
    return payload


def _cmd_unfold(args):
    f = _load_map(args.map)
    arc = _arc_from(args)
    final, trace = eliminate_negative_arcs(f, arc, args.mode, args.value)
    base = f.reflect() if trace.reflected else f
    cls = classify_preimage(base, final)
    pairs = pair_count_check(base, final)
    result = {
        "mode": trace.mode,
        "reflected": trace.reflected,
        "final_arc": _arc_payload(final),
        "steps": [_step_payload(s) for s in trace.steps],
        "final_counts": {
            "positive": cls.positive_count,
            "negative": cls.negative_count,
            "neutral": cls.neutral_count,
            "circle": cls.circle_count,
        },
        "pair_count_ok": pairs.ok,
    }
    summary = (
        f"unfolded in {len(trace.steps) - 1} extensions; "
        f"{cls.positive_count} positive components remain, none negative"
    )
    return _digest_file(args.map), result, summary, 0


def _cmd_hopf(args):
    f = _load_map(args.map)
    curve = double_point_curve(f)
    lift = arc_lift_check(curve)
    bits = controlled_hopf(curve)
    result = {
        "hopf": hopf_invariant(curve),
        "controlled_hopf": [
            {"members": list(members), "bit": bit} for members, bit in bits
        ],
        "closures_orientable": all(c.orientable for c in curve.closure_components),
        "arc_lift_violation": lift.violation,
    }
    summary = f"hopf invariant {result['hopf']} from {len(bits)} compact pieces"
    return _digest_file(args.map), result, summary, 0


def _cmd_group(args):
    payload = {"command": "group", "family": args.family, "n": args.n}
    if args.family == "infinite":
        result = {
            "family": "infinite",
            "order": None,
            "nonrealizable_map_exists": nonrealizable_map_exists("infinite"),
        }
        summary = "infinite fundamental group: no nonrealizable covering map"
        return _digest_args(payload), result, summary, 0
    group = build_group(args.family, args.n)
    model = cover_double_point_model(group)
    result = {
        "name": group.name,
        "order": group.order,
        "involutions": involution_count(group),
        "cover_realizable": cover_realizable(group),
        "hopf_of_cover": hopf_of_cover(group),
        "nonrealizable_map_exists": nonrealizable_map_exists(group),
        "model_components": len(model.components),
        "swap_invariant_components": model.swap_invariant_count,
    }
    verdict = "realizable" if result["cover_realizable"] else "not realizable"
    summary = f"{group.name}: order {group.order}, covering projection {verdict}"
    return _digest_args(payload), result, summary, 0


def _cmd_dcover_check(args):
    payload = {"command": "dcover-check", "degree": args.degree, "upto": args.upto}
    degrees = [args.degree] if args.degree else list(range(2, args.upto + 1))
    reports = [dcover_consistency(d) for d in degrees]
    result = {
        "reports": [
            {
                "degree": r.degree,
                "ok": r.ok,
                "components": len(r.matched),
                "curve_hopf": r.curve_hopf,
                "model_hopf": r.model_hopf,
            }
            for r in reports
        ],
        "all_ok": all(r.ok for r in reports),
    }
    good = sum(1 for r in reports if r.ok)
    summary = f"{good}/{len(reports)} covering degrees consistent with the group model"
    return _digest_args(payload), result, summary, 0 if result["all_ok"] else 1


def _cmd_sweep(args):
    if args.census:
        report = surgery_census()
        result = {
            "census": {
                "initial": report.initial_count,
                "final": report.final_count,
                "moves": report.move_count,
                "splits": report.split_count,
                "merges": report.merge_count,
                "bands": report.band_count,
                "orientable_feasible": report.orientable_feasible,
                "nonorientable_minimum": report.nonorientable_minimum,
                "deviations": list(report.deviations),
            }
        }
        summary = (
            f"census {report.initial_count} -> {report.final_count} circles in "
            f"{report.move_count} moves; "
            + ("consistent" if report.ok else "DEVIATIONS FOUND")
        )
        return _digest_args({"command": "sweep", "census": True}), result, summary, (
            0 if report.ok else 1
        )
    if args.movie:
        movie = _load_movie(args.movie)
        digest = _digest_file(args.movie)
    else:
        movie = random_movie(args.random if args.random is not None else _DEFAULT_SEED)
        digest = _digest_args({"command": "sweep", "random": args.random})
    checked = validate_movie(movie)
    placements = assign_disks(checked)
    certificate = embedding_certificate(checked, placements, samples=args.samples)
    result = {
        "circles": checked.circle_count,
        "events": len(checked.events),
        "final": [checked.names[i] for i in checked.final],
        "lifespans": {
            checked.names[i]: [checked.born[i], checked.died[i]]
            for i in range(checked.circle_count)
        },
        "certificate": {
            "ok": certificate.ok,
            "times_checked": len(certificate.times_checked),
            "pairs_checked": certificate.pairs_checked,
            "failures": [
                {"time": fl.time, "labels": list(fl.labels)}
                for fl in certificate.failures
            ],
        },
    }
    summary = (
        f"{checked.circle_count} circles, {len(checked.events)} events, "
        f"certificate {'OK' if certificate.ok else 'FAILED'}"
    )
    return digest, result, summary, 0 if certificate.ok else 1


# --------------------------------------------------------------------------
# selftest


def _regular_value(f: PLCircleMap, rng: random.Random) -> Angle:
    y = Angle(Fraction(rng.randrange(97), 97))
    while not f.is_regular_value(y):
        y = y.plus(Fraction(1, 193))
    return y


def _regular_arc(f: PLCircleMap, rng: random.Random) -> TransverseArc:
    a = _regular_value(f, rng)
    b = a.plus(Fraction(rng.randrange(1, 9), 9))
    while not f.is_regular_value(b) or b == a:
        b = b.plus(Fraction(1, 193))
    return TransverseArc(a, b)


def _suite_fiber_degree(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 8, 3)
        if f.signed_fiber_count(_regular_value(f, rng)) != f.degree:
            fails += 1
    return fails


def _suite_arc_balance(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 8, 3)
        cls = classify_preimage(f, _regular_arc(f, rng))
        if cls.positive_count - cls.negative_count != f.degree:
            fails += 1
    return fails


def _suite_curve_windings(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 3)
        curve = double_point_curve(f)
        arcs = [c for c in curve.components if c.kind == "arc"]
        if len(arcs) != len(f.folds):
            fails += 1
            continue
        for c in curve.components:
            if c.kind == "arc" and (c.p1_degree or c.p2_degree):
                fails += 1
                break
            if c.kind == "circle" and f.degree != 0 and c.p1_degree != c.p2_degree:
                fails += 1
                break
    return fails


def _suite_swap_pairing(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 3)
        curve = double_point_curve(f)
        for c in curve.components:
            mate = curve.components[curve.swap_pairing[c.index]]
            if curve.swap_pairing[mate.index] != c.index:
                fails += 1
                break
            if (mate.p1_degree, mate.p2_degree) != (c.p2_degree, c.p1_degree):
                fails += 1
                break
    return fails


def _suite_closure_orientability(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 3)
        curve = double_point_curve(f)
        if len(curve.closure_components) * 2 != len(f.folds):
            fails += 1
            continue
        if not all(cc.orientable for cc in curve.closure_components):
            fails += 1
    return fails


def _suite_unfold_termination(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 2)
        base = f if f.degree >= 0 else f.reflect()
        try:
            final, trace = eliminate_negative_arcs(f, _regular_arc(base, rng))
        except UnfoldingBlocked:
            fails += 1
            continue
        cls = classify_preimage(base, final)
        if cls.negative_count != 0 or cls.positive_count != base.degree:
            fails += 1
    return fails


def _suite_pair_counts(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 2)
        base = f if f.degree >= 0 else f.reflect()
        try:
            final, _ = eliminate_negative_arcs(base, _regular_arc(base, rng))
        except UnfoldingBlocked:
            fails += 1
            continue
        if not pair_count_check(base, final).ok:
            fails += 1
    return fails


def _suite_arc_lifting(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        f = random_map(rng.randrange(1 << 30), 6, 3)
        if arc_lift_check(f).violation:
            fails += 1
    return fails


def _suite_euler_circuits(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        g = random_admissible_graph(rng.randrange(1 << 30), rng.randint(1, 6))
        res = eulerian_resolution(g, 0)
        circuits = trace_circuits(g, res.pairing, 0)
        if len(circuits) != 1 or sorted(circuits[0]) != sorted(res.circuit):
            fails += 1
    return fails


def _suite_group_tables(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        pick = rng.randrange(5)
        if pick == 0:
            n = rng.randint(1, 9)
            g = build_group("cyclic", n)
            expected = 1 if n % 2 == 0 else 0
        elif pick == 1:
            g = build_group("binary_dihedral", rng.randint(1, 5))
            expected = 1
        else:
            g = build_group(
                ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral")[
                    pick - 2
                ]
            )
            expected = 1
        if involution_count(g) != expected:
            fails += 1
        if cover_realizable(g) != (g.order % 2 == 1):
            fails += 1
    return fails


def _suite_cover_consistency(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        if not dcover_consistency(rng.randint(1, 9)).ok:
            fails += 1
    return fails


def _suite_movie_certificates(rng: random.Random, runs: int) -> int:
    fails = 0
    for _ in range(runs):
        movie = random_movie(rng.randrange(1 << 30), max_events=10)
        checked = validate_movie(movie)
        if not embedding_certificate(checked, samples=4).ok:
            fails += 1
    return fails


_SUITES = (
    ("fiber_degree", _suite_fiber_degree),
    ("arc_balance", _suite_arc_balance),
    ("curve_windings", _suite_curve_windings),
    ("swap_pairing", _suite_swap_pairing),
    ("closure_orientability", _suite_closure_orientability),
    ("unfold_termination", _suite_unfold_termination),
    ("pair_counts", _suite_pair_counts),
    ("arc_lifting", _suite_arc_lifting),
    ("euler_circuits", _suite_euler_circuits),
    ("group_tables", _suite_group_tables),
    ("cover_consistency", _suite_cover_consistency),
    ("movie_certificates", _suite_movie_certificates),
)


def _cmd_selftest(args):
    if args.seed is not None:
        seed = args.seed
    else:
        seed = int(os.environ.get("DPL_SEED", _DEFAULT_SEED))
    suites = {}
    total = 0
    for i, (name, fn) in enumerate(_SUITES):
        rng = random.Random(seed * 1_000_003 + i)
        failures = fn(rng, args.runs)
        suites[name] = {"runs": args.runs, "failures": failures}
        total += failures
    result = {"seed": seed, "suites": suites, "total_failures": total}
    summary = (
        f"{len(_SUITES)} property suites x {args.runs} runs, "
        f"{total} failure(s)"
    )
    digest = _digest_args({"command": "selftest", "seed": seed, "runs": args.runs})
    return digest, result, summary, 0 if total == 0 else 1


# --------------------------------------------------------------------------
# plumbing


def _render_text(envelope: dict, out) -> None:
    print(f"[{envelope['command']}] {envelope['summary']}", file=out)

    def walk(obj, indent: int) -> None:
        pad = " " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 2)
                else:
                    print(f"{pad}{k}: {v if v != [] else '[]'}", file=out)
        elif isinstance(obj, list):
            if all(not isinstance(v, (dict, list)) for v in obj):
                print(f"{pad}{', '.join(str(v) for v in obj)}", file=out)
            else:
                for v in obj:
                    print(f"{pad}-", file=out)
                    walk(v, indent + 2)

    walk(envelope["result"], 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpl",
        description="Double-point analysis of generic circle maps.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analyze",
        parents=[common],
        help="map normalization and double-point curve",
    )
    p.add_argument("map", help="map JSON file")
    p.add_argument("--arc", nargs=2, metavar=("START", "END"))
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser(
        "unfold",
        parents=[common],
        help="grow an arc until no negative components",
    )
    p.add_argument("map")
    p.add_argument("--arc", nargs=2, metavar=("START", "END"))
    p.add_argument(
        "--mode",
        choices=("plain", "open-subset", "regular-value"),
        default="plain",
    )
    p.add_argument("--value", help="target point for regular-value mode")
    p.set_defaults(fn=_cmd_unfold)

    p = sub.add_parser(
        "hopf",
        parents=[common],
        help="parity invariants of the double-point curve",
    )
    p.add_argument("map")
    p.set_defaults(fn=_cmd_hopf)

    p = sub.add_parser(
        "group",
        parents=[common],
        help="catalog groups and their cover models",
    )
    p.add_argument("family")
    p.add_argument("n", nargs="?", type=int, default=None)
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser(
        "dcover-check",
        parents=[common],
        help="match circle covers against the group model",
    )
    p.add_argument("degree", nargs="?", type=int, default=None)
    p.add_argument("--upto", type=int, default=12)
    p.set_defaults(fn=_cmd_dcover_check)

    p = sub.add_parser(
        "sweep",
        parents=[common],
        help="validate and embed a circle movie",
    )
    p.add_argument("movie", nargs="?", default=None, help="movie JSON file")
    p.add_argument("--random", type=int, default=None, metavar="SEED")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--census", action="store_true", help="check the bundled census")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser(
        "selftest",
        parents=[common],
        help="run the property suites",
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--runs", type=int, default=25)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        digest, result, summary, code = args.fn(args)
    except UnfoldingBlocked as exc:
        digest = _digest_args({"command": args.command, "error": True})
        result = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        summary = f"blocked: {exc}"
        code = 1
    except (ValueError, OSError, KeyError) as exc:
        digest = _digest_args({"command": args.command, "error": True})
        result = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        summary = f"input error: {exc}"
        code = 2
    envelope = {
        "command": args.command,
        "input_digest": digest,
        "version": __version__,
        "result": _plain(result),
        "summary": summary,
    }
    if args.out:
        stream = open(args.out, "w")
    else:
        stream = sys.stdout
    try:
        if args.format == "json":
            json.dump(envelope, stream, sort_keys=True, indent=2)
            stream.write("\n")
        else:
            _render_text(envelope, stream)
    finally:
        if args.out:
            stream.close()
    return code


def report_schema() -> dict:
    """The JSON schema every envelope conforms to."""
    schema = resources.files("dpl").joinpath("data/report.schema.json")
    return json.loads(schema.read_text())


if __name__ == "__main__":
    sys.exit(main())
