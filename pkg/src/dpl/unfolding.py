"""Arc unfolding, balanced paths, pair counting, and surgery bookkeeping.

The centerpiece is :func:`eliminate_negative_arcs`: grow a transverse arc,
one fold-gap at a time, until its preimage has no negative components.  Each
growth step is witnessed by a balanced path - an embedded domain path from a
negative arc to a level-matched positive one along which the lift of the map
returns to its starting height.  Growth keeps the arcs nested, so the final
arc contains the initial one as an open subset.

Greedy growth alone is not complete: killing one negative component can
convert a neutral one elsewhere.  When no single extension makes progress,
the finishing move relocates the arc's end into a level gap free of full
downward sweeps and drops the start below every remaining dip, which is
exactly the set of arcs that can reach zero.  A map whose every level gap
carries a full downward sweep admits no unfoldable arc at all; that raises
UnfoldingBlocked, and the bundled generator rejects such draws.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

from .circle_maps import (
    Angle,
    DuplicateVertexValue,
    EndpointNotRegular,
    InfeasibleParameters,
    NonIncreasingDomain,
    PLCircleMap,
    PreimageClassification,
    RationalLike,
    TransverseArc,
    ZeroSlopeSegment,
    classify_preimage,
    downward_pair_count,
    frac,
    mod1,
    value_gaps,
)
from .double_points import (
    DoublePointCurve,
    _clip_equal_value_segment,
    double_point_curve,
)

__all__ = [
    "NoOppositeArc",
    "PreconditionUnmet",
    "Infeasible",
    "UnfoldingBlocked",
    "BalancedPath",
    "UnfoldStep",
    "UnfoldTrace",
    "find_balanced_path",
    "eliminate_negative_arcs",
    "PairCountRow",
    "PairCountReport",
    "pair_count_check",
    "IntervalPLMap",
    "IntervalMapPair",
    "make_interval_map",
    "CornerReport",
    "corner_connectivity",
    "EulerGraph",
    "build_euler_graph",
    "EulerResolution",
    "eulerian_resolution",
    "resolution_choices",
    "trace_circuits",
    "random_admissible_graph",
    "surgery_parity",
]


class NoOppositeArc(ValueError):
    """No opposite-sign arc balances the chosen one."""


class PreconditionUnmet(ValueError):
    """The operation's entry condition does not hold for this input."""


class Infeasible(ValueError):
    """No object with the requested counts exists."""


class UnfoldingBlocked(RuntimeError):
    """No arc extension reduces the negative count; unfolding cannot proceed."""


# --------------------------------------------------------------------------
# balanced paths


@dataclass(frozen=True)
class BalancedPath:
    """An embedded domain path pairing two opposite arcs at equal lift level.

    ``start_point``/``end_point`` are lift coordinates of the walk (the walk
    covers less than a full turn); ``direction`` is +1 for counterclockwise.
    ``one_sided`` records that the lift never crosses ``level`` strictly
    between the endpoints.
    """

    start_component: int
    end_component: int
    direction: int
    start_point: Fraction
    end_point: Fraction
    level: Fraction
    path_min: Fraction
    path_max: Fraction
    one_sided: bool
    skipped: tuple[int, ...]


def _reduce_to_fundamental(f: PLCircleMap, x: Fraction) -> Fraction:
    return x - math.floor(x - f.breakpoints[0][0])


def _lift_extrema(
    f: PLCircleMap, lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction]:
    """Exact min and max of the lift over [lo, hi]."""
    values = [f.lift_evaluate(lo), f.lift_evaluate(hi)]
    for x, _ in f.breakpoints:
        k = math.ceil(lo - x)
        while x + k < hi:
            if x + k > lo:
                values.append(f.lift_evaluate(x + k))
            k += 1
    return min(values), max(values)


def _try_direction(
    f: PLCircleMap,
    cls: PreimageClassification,
    start_index: int,
    direction: int,
) -> BalancedPath | None:
    comp = cls.components[start_index]
    opposite = "negative" if comp.kind == "positive" else "positive"
    s = _reduce_to_fundamental(f, comp.end if direction == 1 else comp.start)
    level = f.lift_evaluate(s)
    candidates: list[tuple[Fraction, int]] = []
    for idx, other in enumerate(cls.components):
        if idx == start_index or other.kind != opposite:
            continue
        e = _reduce_to_fundamental(f, other.start if direction == 1 else other.end)
        if direction == 1:
            pos = e if e > s else e + 1
        else:
            pos = e if e < s else e - 1
        candidates.append((pos, idx))
    candidates.sort(reverse=(direction == -1))
    for pos, idx in candidates:
        if f.lift_evaluate(pos) != level:
            continue
        lo, hi = (s, pos) if direction == 1 else (pos, s)
        path_min, path_max = _lift_extrema(f, lo, hi)
        skipped = []
        for jdx, other in enumerate(cls.components):
            if jdx in (start_index, idx) or other.kind not in ("positive", "negative"):
                continue
            for endpoint in (other.start, other.end):
                e = _reduce_to_fundamental(f, endpoint)
                w = (e if e > s else e + 1) if direction == 1 else (e if e < s else e - 1)
                if lo < w < hi:
                    skipped.append(jdx)
                    break
        return BalancedPath(
            start_component=start_index,
            end_component=idx,
            direction=direction,
            start_point=s,
            end_point=pos,
            level=level,
            path_min=path_min,
            path_max=path_max,
            one_sided=(path_max <= level) or (path_min >= level),
            skipped=tuple(skipped),
        )
    return None


def find_balanced_path(
    f: PLCircleMap,
    arc: TransverseArc,
    start_index: int,
    classification: PreimageClassification | None = None,
) -> BalancedPath:
    """First-occurrence balanced partner for the chosen arc component.

    Scans counterclockwise first, then clockwise.  For a negative component
    of a map with nonnegative degree the counterclockwise scan always
    succeeds, and the resulting path is one-sided.
    """
    canonical = TransverseArc(arc.ccw_start, arc.ccw_end)
    cls = classification
    if cls is None or cls.arc.orientation != 1:
        cls = classify_preimage(f, canonical)
    comp = cls.components[start_index]
    if comp.kind not in ("positive", "negative"):
        raise PreconditionUnmet(f"component {start_index} is {comp.kind}, not an arc")
    opposite = "negative" if comp.kind == "positive" else "positive"
    if not any(c.kind == opposite for c in cls.components):
        raise NoOppositeArc("no opposite-sign arcs exist")
    for direction in (1, -1):
        path = _try_direction(f, cls, start_index, direction)
        if path is not None:
            return path
    raise NoOppositeArc("no opposite-sign arc balances at the required lift level")


# --------------------------------------------------------------------------
# unfolding


@dataclass(frozen=True)
class UnfoldStep:
    arc: TransverseArc
    negative_count: int
    positive_count: int
    path: BalancedPath | None
    extended_start: Angle | None
    extended_end: Angle | None


@dataclass(frozen=True)
class UnfoldTrace:
    """Nested arcs with their counts; negative counts sink to zero and stay."""

    steps: tuple[UnfoldStep, ...]
    final_arc: TransverseArc
    mode: str
    reflected: bool

    def __post_init__(self) -> None:
        for prev, cur in zip(self.steps, self.steps[1:]):
            if prev.negative_count > 0 and cur.negative_count >= prev.negative_count:
                raise AssertionError("negative count failed to decrease")
            if not _arc_contains_arc(cur.arc, prev.arc):
                raise AssertionError("trace arcs are not nested")

    @property
    def negative_counts(self) -> tuple[int, ...]:
        return tuple(s.negative_count for s in self.steps)


def _arc_contains_arc(big: TransverseArc, small: TransverseArc) -> bool:
    off = big.ccw_start.ccw_to(small.ccw_start)
    return off + small.width <= big.width


def _residue_candidates(
    f: PLCircleMap, arc: TransverseArc
) -> list[tuple[Fraction, str, Fraction]]:
    """Wider arcs, one per (fold residue, endpoint side), sorted by width.

    The start-side candidate for residue r places the new start just below r
    (halfway into the gap underneath, capped so the width stays below one);
    any negative component whose exit slide bottoms out at r turns neutral
    once the start clears r.  End-side candidates mirror this above r.
    """
    a, b = arc.ccw_start.value, arc.ccw_end.value
    w = arc.width
    residues = sorted(v.value for v in f.critical_values)
    n = len(residues)
    out: dict[tuple[str, Fraction], Fraction] = {}
    for i, r in enumerate(residues):
        gap_below = r - (residues[i - 1] - (1 if i == 0 else 0))
        width_to_r = mod1(b - r)
        delta = min(gap_below, 1 - width_to_r) / 2
        w2 = width_to_r + delta
        if w < w2 < 1:
            out.setdefault(("start", mod1(r - delta)), w2)
        gap_above = (residues[(i + 1) % n] + (1 if i + 1 == n else 0)) - r
        width_from_r = mod1(r - a)
        delta = min(gap_above, 1 - width_from_r) / 2
        w3 = width_from_r + delta
        if w < w3 < 1:
            out.setdefault(("end", mod1(r + delta)), w3)
    return sorted((w_new, side, point) for (side, point), w_new in out.items())


def _candidate_arc(
    arc: TransverseArc, side: str, point: Fraction
) -> TransverseArc:
    if side == "start":
        return TransverseArc(Angle(point), arc.ccw_end)
    return TransverseArc(arc.ccw_start, Angle(point))


def _sweep_free_end(f: PLCircleMap, arc: TransverseArc) -> Angle:
    """Nearest admissible end position with no full downward sweep.

    Candidates are the current end and, in growth order, the midpoint of
    each overlap between a fold-value gap and the arc's complement.  Raises
    UnfoldingBlocked when every reachable position keeps a sweep, because
    then every grown arc keeps a negative component.
    """
    b = arc.ccw_end
    if downward_pair_count(f, b) == 0:
        return b
    slack = 1 - arc.width
    options: list[tuple[Fraction, Angle]] = []
    for lo, gw in value_gaps(f):
        start_off = mod1(lo - b.value)
        pieces = [(start_off, min(start_off + gw, 1))]
        if start_off + gw > 1:
            pieces.append((Fraction(0), start_off + gw - 1))
        for plo, phi in pieces:
            lo_cut, hi_cut = max(plo, Fraction(0)), min(phi, slack)
            if lo_cut < hi_cut:
                options.append(
                    (lo_cut, b.plus((lo_cut + hi_cut) / 2))
                )
    for _, candidate in sorted(options, key=lambda t: t[0]):
        if downward_pair_count(f, candidate) == 0:
            return candidate
    raise UnfoldingBlocked(
        "every reachable end position is crossed by a full downward sweep"
    )


def _keeps_sweep_free_end(f: PLCircleMap, arc: TransverseArc) -> bool:
    """Whether some sweep-free end position remains reachable.

    Zero negative components forces the final end into a sweep-free gap, so
    growth that strands every such gap can never finish; greedy steps are
    filtered through this test.
    """
    try:
        _sweep_free_end(f, arc)
    except UnfoldingBlocked:
        return False
    return True


def _finishing_arc(f: PLCircleMap, arc: TransverseArc) -> TransverseArc:
    """A grown arc with no negative components, in one move.

    With the end in a sweep-free gap, a negative component can only be the
    first piece of a domain stretch that enters through the end value and
    dips before leaving through it again; pushing the start below every such
    dip (but not past the current start) clears them all at once.
    """
    b = _sweep_free_end(f, arc)
    reach = mod1(arc.ccw_start.value - b.value)  # >0: start stays past the end
    ceiling = reach
    xs = f.fiber(b)
    for i, x in enumerate(xs):
        if f.slopes[f.lap_of(x)] > 0:
            continue
        nxt = xs[(i + 1) % len(xs)] + (1 if i + 1 == len(xs) else 0)
        assert f.slopes[f.lap_of(nxt)] > 0, "end position is not sweep-free"
        for vx, vl in f.breakpoints:
            shifted = vx + math.floor(x - vx) + 1
            if x < shifted < nxt:
                ceiling = min(ceiling, mod1(vl - b.value))
    for k in range(63, 0, -1):  # prefer the least start growth
        a = b.plus(ceiling * k / 64)
        if f.is_regular_value(a):
            return TransverseArc(a, b)
    raise UnfoldingBlocked("could not place the start below the remaining dips")


def _plain_eliminate(
    f: PLCircleMap, arc: TransverseArc
) -> tuple[TransverseArc, list[UnfoldStep]]:
    cur = TransverseArc(arc.ccw_start, arc.ccw_end)
    cls = classify_preimage(f, cur)
    steps: list[UnfoldStep] = []
    while cls.negative_count > 0:
        start_index = next(
            i for i, c in enumerate(cls.components) if c.kind == "negative"
        )
        try:
            path = find_balanced_path(f, cur, start_index, cls)
        except NoOppositeArc:
            path = None
        ranked = _residue_candidates(f, cur)
        ordered = ranked
        if path is not None:
            need = cur.width + (path.level - path.path_min)
            primary = [c for c in ranked if c[1] == "start" and c[0] > need][:1]
            ordered = primary + [c for c in ranked if c not in primary]
        accepted = None
        for _, side, point in ordered:
            cand = _candidate_arc(cur, side, point)
            new_cls = classify_preimage(f, cand)
            if new_cls.negative_count < cls.negative_count and (
                new_cls.negative_count == 0 or _keeps_sweep_free_end(f, cand)
            ):
                accepted = (cand, new_cls)
                break
        if accepted is None:
            cand = _finishing_arc(f, cur)
            new_cls = classify_preimage(f, cand)
            assert new_cls.negative_count == 0, "finishing move left a negative"
            accepted = (cand, new_cls)
        cand, new_cls = accepted
        steps.append(
            UnfoldStep(
                arc=cur,
                negative_count=cls.negative_count,
                positive_count=cls.positive_count,
                path=path,
                extended_start=cand.start if cand.start != cur.start else None,
                extended_end=cand.end if cand.end != cur.end else None,
            )
        )
        cur, cls = cand, new_cls
    steps.append(UnfoldStep(cur, 0, cls.positive_count, None, None, None))
    return cur, steps


def _default_arc(f: PLCircleMap) -> TransverseArc:
    """A short arc placed inside the first sweep-free fold-value gap."""
    for lo, gw in value_gaps(f):
        if downward_pair_count(f, lo + gw / 2) == 0:
            return TransverseArc(Angle(lo + gw * 3 / 8), Angle(lo + gw * 5 / 8))
    raise UnfoldingBlocked(
        "every level of the target circle is crossed by a full downward sweep"
    )


def _arc_around(f: PLCircleMap, z: Angle) -> TransverseArc:
    if f.fold_free:
        return TransverseArc(z.plus(Fraction(-1, 4)), z.plus(Fraction(1, 4)))
    residues = sorted(v.value for v in f.critical_values)
    for i, r in enumerate(residues):
        nxt = residues[i + 1] if i + 1 < len(residues) else residues[0] + 1
        zv = r + mod1(z.value - r)
        if r < zv < nxt:
            return TransverseArc(Angle((r + zv) / 2), Angle((zv + nxt) / 2))
    raise EndpointNotRegular(f"{z} is a critical value")


def _blocking_neutrals(
    f: PLCircleMap, arc: TransverseArc, z: Angle
) -> list[int]:
    cls = classify_preimage(f, arc)
    out = []
    for x in f.fiber(z):
        comp = cls.component_containing(x)
        if comp is not None and comp.kind == "neutral":
            idx = cls.components.index(comp)
            if idx not in out:
                out.append(idx)
    return out


def eliminate_negative_arcs(
    f: PLCircleMap,
    arc: TransverseArc | None = None,
    mode: str = "plain",
    value: Union[RationalLike, Angle, None] = None,
) -> tuple[TransverseArc, UnfoldTrace]:
    """Grow the arc until its preimage has no negative components.

    When no arc is given, a short one is placed inside a sweep-free fold
    gap, where growth is guaranteed to finish.  Modes: ``plain`` and
    ``open-subset`` behave identically (the grown arc always contains the
    original as an open subset); ``regular-value`` builds the initial arc
    around ``value`` and keeps growing until every component meeting that
    value's fiber is a positive arc or a circle.

    Maps of negative degree are handled through the orientation-reversing
    change of domain coordinate x -> -x: the trace is computed for the
    reflected map (flag ``reflected``), path witnesses are reported back in
    the original coordinates, and target-side arcs need no translation.
    """
    if mode not in ("plain", "open-subset", "regular-value"):
        raise ValueError(f"unknown mode {mode!r}")
    if f.degree < 0:
        final_arc, trace = eliminate_negative_arcs(f.reflect(), arc, mode, value)
        steps = tuple(
            UnfoldStep(
                s.arc,
                s.negative_count,
                s.positive_count,
                _reflect_path(s.path),
                s.extended_start,
                s.extended_end,
            )
            for s in trace.steps
        )
        return final_arc, UnfoldTrace(steps, final_arc, mode, reflected=True)

    if mode == "regular-value":
        if value is None:
            raise InfeasibleParameters("regular-value mode needs a value")
        z = Angle(value) if not isinstance(value, Angle) else value
        if not f.is_regular_value(z):
            raise EndpointNotRegular(f"{z} is a critical value")
        cur, steps = _plain_eliminate(f, _arc_around(f, z))
        for _ in range(4 * f.lap_count + 16):
            blockers = _blocking_neutrals(f, cur, z)
            if not blockers:
                break
            cls = classify_preimage(f, cur)
            side_value = cls.components[blockers[0]].endpoint_values[0]
            grow_start = side_value == cur.ccw_start
            want = "start" if grow_start else "end"
            candidates = [
                _candidate_arc(cur, side, point)
                for _, side, point in _residue_candidates(f, cur)
                if side == want
            ]
            progressed = False
            for cand in candidates:
                try:
                    cand_final, cand_steps = _plain_eliminate(f, cand)
                except UnfoldingBlocked:
                    continue
                if len(_blocking_neutrals(f, cand_final, z)) < len(blockers):
                    steps.append(
                        UnfoldStep(
                            arc=cur,
                            negative_count=0,
                            positive_count=cls.positive_count,
                            path=None,
                            extended_start=cand.start if grow_start else None,
                            extended_end=None if grow_start else cand.end,
                        )
                    )
                    steps.extend(cand_steps)
                    cur = cand_final
                    progressed = True
                    break
            if not progressed:
                raise UnfoldingBlocked(
                    "no extension frees the regular value from neutral components"
                )
        else:
            raise UnfoldingBlocked("regular-value growth failed to stabilize")
        return cur, UnfoldTrace(tuple(steps), cur, mode, reflected=False)

    if arc is None:
        arc = _default_arc(f)
    cur, steps = _plain_eliminate(f, arc)
    return cur, UnfoldTrace(tuple(steps), cur, mode, reflected=False)


def _reflect_path(path: BalancedPath | None) -> BalancedPath | None:
    """Translate a path witness back through the domain reflection x -> -x."""
    if path is None:
        return None
    return BalancedPath(
        start_component=path.start_component,
        end_component=path.end_component,
        direction=-path.direction,
        start_point=-path.start_point,
        end_point=-path.end_point,
        level=path.level,
        path_min=path.path_min,
        path_max=path.path_max,
        one_sided=path.one_sided,
        skipped=path.skipped,
    )


# --------------------------------------------------------------------------
# pair counting on an unfolded arc


@dataclass(frozen=True)
class PairCountRow:
    component: int
    expected: int
    actual: int


@dataclass(frozen=True)
class PairCountReport:
    base_value: Angle
    fiber_points: tuple[Fraction, ...]
    rows: tuple[PairCountRow, ...]
    ok: bool


def pair_count_check(
    f: PLCircleMap,
    arc: TransverseArc,
    curve: DoublePointCurve | None = None,
) -> PairCountReport:
    """First-projection winding equals the count of marked pairs, per component.

    The arc must be unfolded: exactly deg(f) positive components and no
    negative ones.  Pick the preimages x_1 < x_2 < ... of the arc's start on
    the positive components; each ordered pair (x_1, x_i) is a point of the
    double-point curve, and each component must carry exactly its winding's
    worth of them (open arcs: none).
    """
    if f.degree < 0:
        raise PreconditionUnmet("reflect the map to nonnegative degree first")
    canonical = TransverseArc(arc.ccw_start, arc.ccw_end)
    cls = classify_preimage(f, canonical)
    if cls.negative_count != 0 or cls.positive_count != f.degree:
        raise PreconditionUnmet(
            f"need exactly deg(f)={f.degree} positive components and no negative "
            f"ones; got p={cls.positive_count}, m={cls.negative_count}"
        )
    if curve is None:
        curve = double_point_curve(f)
    entries = sorted(c.start for c in cls.components if c.kind == "positive")
    counts = {c.index: 0 for c in curve.components}
    if entries:
        x1 = entries[0]
        l1 = f.lift_evaluate(x1)
        lap1 = f.lap_of(x1)
        for xi in entries[1:]:
            k = l1 - f.lift_evaluate(xi)
            if k.denominator != 1:
                raise AssertionError("pair levels differ by a non-integer")
            idx = curve.component_of_segment_key((lap1, f.lap_of(xi), int(k)))
            counts[idx] += 1
    rows = tuple(
        PairCountRow(c.index, c.p1_degree, counts[c.index]) for c in curve.components
    )
    return PairCountReport(
        base_value=canonical.start,
        fiber_points=tuple(entries),
        rows=rows,
        ok=all(r.expected == r.actual for r in rows),
    )


# --------------------------------------------------------------------------
# interval map pairs and corner connectivity


@dataclass(frozen=True)
class IntervalPLMap:
    """A PL map between intervals, stored like the circle maps minus the wrap."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0][0], self.breakpoints[-1][0]

    @cached_property
    def slopes(self) -> tuple[Fraction, ...]:
        pts = self.breakpoints
        return tuple(
            (pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
            for i in range(len(pts) - 1)
        )

    @cached_property
    def interior_fold_values(self) -> frozenset[Fraction]:
        out = set()
        for i in range(1, len(self.breakpoints) - 1):
            if self.slopes[i - 1] * self.slopes[i] < 0:
                out.add(self.breakpoints[i][1])
        return frozenset(out)

    def lap(self, j: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        (xa, la), (xb, lb) = self.breakpoints[j], self.breakpoints[j + 1]
        return xa, xb, la, lb


def make_interval_map(
    breakpoints: Iterable[tuple[RationalLike, RationalLike]],
    _check_boundary: bool = True,
) -> IntervalPLMap:
    pts = [(frac(x), frac(v)) for x, v in breakpoints]
    if len(pts) < 2:
        raise NonIncreasingDomain("need at least the two endpoint breakpoints")
    if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
        raise NonIncreasingDomain("breakpoint positions must strictly increase")
    signs = []
    for a, b in zip(pts, pts[1:]):
        dv = b[1] - a[1]
        if dv == 0:
            raise ZeroSlopeSegment(f"segment starting at {a[0]} has zero slope")
        signs.append(1 if dv > 0 else -1)
    keep = [pts[0]] + [
        pts[i] for i in range(1, len(pts) - 1) if signs[i - 1] != signs[i]
    ] + [pts[-1]]
    if _check_boundary:
        lo, hi = keep[0], keep[-1]
        if lo != (Fraction(0), Fraction(0)) or hi != (Fraction(1), Fraction(1)):
            raise PreconditionUnmet("interval maps must fix 0 and 1")
        if any(not (0 <= v <= 1) for _, v in keep):
            raise PreconditionUnmet("values must stay inside [0, 1]")
    return IntervalPLMap(tuple(keep))


@dataclass(frozen=True)
class IntervalMapPair:
    first: IntervalPLMap
    second: IntervalPLMap


@dataclass(frozen=True)
class CornerReport:
    connected: bool
    witness: tuple[tuple[Fraction, Fraction], ...]
    collar_extended: bool
    component_count: int


def _with_collar(m: IntervalPLMap) -> IntervalPLMap:
    pts = (
        ((Fraction(-1, 4), Fraction(-1, 4)),)
        + m.breakpoints
        + ((Fraction(5, 4), Fraction(5, 4)),)
    )
    return make_interval_map(pts, _check_boundary=False)


def corner_connectivity(pair: IntervalMapPair) -> CornerReport:
    """Whether the two corner solutions (0,0) and (1,1) share a component.

    The solution set {f(x) = g(y)} is a 1-manifold with boundary on the square
    boundary provided the pair is generic (no shared fold value).  When 0 or 1
    is itself a fold value, both maps are extended by an identity collar so
    the corners become regular; the report records that.
    """
    fa, fb = pair.first, pair.second
    shared = fa.interior_fold_values & fb.interior_fold_values
    if shared:
        raise DuplicateVertexValue(f"the two maps share the fold value {min(shared)}")
    boundary_hit = {Fraction(0), Fraction(1)} & (
        fa.interior_fold_values | fb.interior_fold_values
    )
    collar = bool(boundary_hit)
    if collar:
        fa, fb = _with_collar(fa), _with_collar(fb)
    lo = fa.breakpoints[0][0]
    hi = fa.breakpoints[-1][0]

    segs: list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]] = []
    for i in range(len(fa.breakpoints) - 1):
        xlo, xhi, la, _ = fa.lap(i)
        for j in range(len(fb.breakpoints) - 1):
            ylo, yhi, lb, _ = fb.lap(j)
            clipped = _clip_equal_value_segment(
                xlo, xhi, la, fa.slopes[i], ylo, yhi, lb, fb.slopes[j], 0
            )
            if clipped is not None:
                segs.append(clipped)

    ends: dict[tuple[Fraction, Fraction], list[tuple[int, int]]] = {}
    for si, (p, q) in enumerate(segs):
        ends.setdefault(p, []).append((si, 0))
        ends.setdefault(q, []).append((si, 1))

    def on_boundary(p: tuple[Fraction, Fraction]) -> bool:
        return p[0] in (lo, hi) or p[1] in (lo, hi)

    for p, lst in ends.items():
        if len(lst) > 2 or (len(lst) == 1 and not on_boundary(p)):
            raise AssertionError(f"non-manifold solution set at {p}")

    corner0, corner1 = (lo, lo), (hi, hi)
    if corner0 not in ends or corner1 not in ends:
        raise AssertionError("corner solutions missing")

    visited: set[int] = set()

    def chase(start_si: int, start_ei: int) -> list[tuple[Fraction, Fraction]]:
        pts = [segs[start_si][start_ei]]
        si, ei = start_si, start_ei
        while True:
            visited.add(si)
            exit_point = segs[si][1 - ei]
            pts.append(exit_point)
            nxt = [pe for pe in ends[exit_point] if pe != (si, 1 - ei)]
            if not nxt:
                return pts
            si, ei = nxt[0]
            if si in visited:
                return pts

    (c0_si, c0_ei), = ends[corner0]
    witness = chase(c0_si, c0_ei)
    connected = witness[-1] == corner1

    component_count = 0
    seen: set[int] = set()
    for p, lst in ends.items():
        if len(lst) == 1 and lst[0][0] not in seen:
            chain_start = lst[0]
            comp_before = len(seen)
            si, ei = chain_start
            while True:
                seen.add(si)
                exit_point = segs[si][1 - ei]
                nxt = [pe for pe in ends[exit_point] if pe != (si, 1 - ei)]
                if not nxt or nxt[0][0] in seen:
                    break
                si, ei = nxt[0]
            if len(seen) > comp_before:
                component_count += 1
    for si in range(len(segs)):
        if si not in seen:  # a closed loop
            component_count += 1
            ei = 0
            while si not in seen:
                seen.add(si)
                exit_point = segs[si][1 - ei]
                nxt = [pe for pe in ends[exit_point] if pe != (si, 1 - ei)]
                si, ei = nxt[0]
    return CornerReport(
        connected=connected,
        witness=tuple(witness),
        collar_extended=collar,
        component_count=component_count,
    )


# --------------------------------------------------------------------------
# admissible graphs and Eulerian resolutions


@dataclass(frozen=True)
class EulerGraph:
    """A directed multigraph with in- and out-degree two everywhere.

    ``free_loops`` counts circles carrying no vertex at all; each is its own
    component with the empty resolution.
    """

    edges: tuple[tuple[int, int], ...]
    free_loops: int = 0

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        parent = {v: v for v in self.vertices}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))

    @property
    def component_count(self) -> int:
        return len(self.components) + self.free_loops

    def component_edges(self, component: int) -> tuple[int, ...]:
        if component >= len(self.components):
            return ()
        verts = set(self.components[component])
        return tuple(i for i, e in enumerate(self.edges) if e[0] in verts)


def build_euler_graph(
    edges: Iterable[tuple[int, int]], free_loops: int = 0
) -> EulerGraph:
    edges = tuple((int(a), int(b)) for a, b in edges)
    if free_loops < 0:
        raise InfeasibleParameters("free_loops must be nonnegative")
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for a, b in edges:
        outdeg[a] = outdeg.get(a, 0) + 1
        indeg[b] = indeg.get(b, 0) + 1
    for v in set(indeg) | set(outdeg):
        if indeg.get(v, 0) != 2 or outdeg.get(v, 0) != 2:
            raise InfeasibleParameters(
                f"vertex {v} has in/out degree {indeg.get(v, 0)}/{outdeg.get(v, 0)}"
            )
    return EulerGraph(edges=edges, free_loops=free_loops)


Pairing = tuple[tuple[int, tuple[tuple[int, int], tuple[int, int]]], ...]


@dataclass(frozen=True)
class EulerResolution:
    component: int
    pairing: Pairing
    circuit: tuple[int, ...]


def _in_out_edges(
    g: EulerGraph, verts: set[int]
) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    ins: dict[int, list[int]] = {v: [] for v in verts}
    outs: dict[int, list[int]] = {v: [] for v in verts}
    for i, (a, b) in enumerate(g.edges):
        if a in verts:
            outs[a].append(i)
        if b in verts:
            ins[b].append(i)
    return ins, outs


def eulerian_resolution(g: EulerGraph, component: int = 0) -> EulerResolution:
    """An in/out pairing turning the chosen component into a single circuit.

    Built from an Euler circuit: pair each incoming edge with the outgoing
    edge the circuit takes next.  Free-loop components get the empty pairing.
    """
    if component >= g.component_count or component < 0:
        raise InfeasibleParameters(f"no component {component}")
    if component >= len(g.components):
        return EulerResolution(component=component, pairing=(), circuit=())
    verts = set(g.components[component])
    _, outs = _in_out_edges(g, verts)
    start = min(verts)
    stack: list[tuple[int, int | None]] = [(start, None)]
    circuit: list[int] = []
    pool = {v: list(es) for v, es in outs.items()}
    while stack:
        v, via = stack[-1]
        if pool[v]:
            e = pool[v].pop()
            stack.append((g.edges[e][1], e))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    if len(circuit) != len(g.component_edges(component)):
        raise AssertionError("component is not connected")
    pairs: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for t, e in enumerate(circuit):
        nxt = circuit[(t + 1) % len(circuit)]
        pairs[g.edges[e][1]].append((e, nxt))
    pairing = tuple(sorted((v, tuple(sorted(ps))) for v, ps in pairs.items()))
    return EulerResolution(component=component, pairing=pairing, circuit=tuple(circuit))


def resolution_choices(g: EulerGraph, component: int = 0):
    """All 2^V in/out pairings of the component, for exhaustive checking."""
    if component >= len(g.components):
        yield ()
        return
    verts = set(g.components[component])
    ins, outs = _in_out_edges(g, verts)
    order = sorted(verts)
    n = len(order)
    for mask in range(1 << n):
        pairing = []
        for bit, v in enumerate(order):
            (i1, i2), (o1, o2) = ins[v], outs[v]
            if mask >> bit & 1:
                ps = ((i1, o2), (i2, o1))
            else:
                ps = ((i1, o1), (i2, o2))
            pairing.append((v, tuple(sorted(ps))))
        yield tuple(sorted(pairing))


def trace_circuits(
    g: EulerGraph, pairing: Pairing, component: int = 0
) -> tuple[tuple[int, ...], ...]:
    """Circuits induced by a pairing on the chosen component's edges."""
    if component >= len(g.components):
        return ((),) if g.free_loops else ()
    nxt: dict[int, int] = {}
    for _, ps in pairing:
        for e_in, e_out in ps:
            nxt[e_in] = e_out
    todo = set(g.component_edges(component))
    circuits = []
    while todo:
        e = min(todo)
        cyc = []
        while e in todo:
            todo.discard(e)
            cyc.append(e)
            e = nxt[e]
        circuits.append(tuple(cyc))
    return tuple(circuits)


def random_admissible_graph(seed: int, n_vertices: int) -> EulerGraph:
    """Union of two uniformly random permutations: in/out degree two everywhere."""
    if n_vertices < 0:
        raise InfeasibleParameters("vertex count must be nonnegative")
    if n_vertices == 0:
        return EulerGraph(edges=(), free_loops=1)
    rng = random.Random(seed)
    sigma = rng.sample(range(n_vertices), n_vertices)
    tau = rng.sample(range(n_vertices), n_vertices)
    edges = [(i, sigma[i]) for i in range(n_vertices)]
    edges += [(i, tau[i]) for i in range(n_vertices)]
    return build_euler_graph(edges)


# --------------------------------------------------------------------------
# surgery parity


def surgery_parity(c_in: int, c_out: int, n: int) -> tuple[bool, int]:
    """Whether n surgeries can take c_in circles to c_out ones orientably.

    Each surgery changes the circle count by exactly one in the orientable
    regime, so feasibility needs n >= |c_out - c_in| with matching parity;
    a parity mismatch forces at least one count-preserving, side-swapping
    move.  Returns (orientable_only_feasible, minimum_nonorientable_moves).
    """
    if c_in < 1 or c_out < 1 or n < 0:
        raise InfeasibleParameters("counts must be positive and n nonnegative")
    delta = abs(c_out - c_in)
    if n < delta:
        raise Infeasible(f"{n} surgeries cannot change the count by {delta}")
    if (n - delta) % 2 == 0:
        return (True, 0)
    return (False, 1)
