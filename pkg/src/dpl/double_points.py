"""The double-point curve of a generic PL circle map and its invariants.

For a map f the curve lives in the torus: all ordered pairs (x, y), x != y,
with f(x) = f(y).  Genericity makes it a disjoint union of circles and open
arcs whose ends limit onto diagonal points (c, c) at fold vertices c.  Every
piece is cut out of lap-pair rectangles by lines ``lift_i(x) - lift_j(y) = k``
and carries a canonical orientation: the direction (sign s_j, sign s_i),
which is the +90-degree rotation of the value gradient (s_i, -s_j).  That
choice is coherent along components, and swapping the two coordinates maps
oriented pieces to oriented pieces, exchanging the two projection degrees.

The closure of the curve (arcs glued at their diagonal points) consists of
circles; the canonical orientation reverses at every diagonal passage, so a
closure component is orientable exactly when it passes the diagonal an even
number of times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .circle_maps import (
    PLCircleMap,
    RationalLike,
    frac,
    mod1,
)

__all__ = [
    "CurveSegment",
    "CurveComponent",
    "ClosureComponent",
    "QuotientComponent",
    "DoublePointCurve",
    "RealizabilityReport",
    "ArcLiftReport",
    "DegeneratePosition",
    "double_point_curve",
    "projection_degree",
    "closure_orientability",
    "hopf_invariant",
    "controlled_hopf",
    "arc_lift_check",
    "realizability_report",
    "planar_self_crossings",
    "planar_curve_hopf",
]


class DegeneratePosition(ValueError):
    """The polygon is not in general position (tangency, concurrency, ...)."""


Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CurveSegment:
    """A maximal straight piece of the curve inside one lap-pair rectangle.

    ``lap_x``/``lap_y`` index the laps governing the two coordinates,
    ``shift`` is the integer separating the two lift levels.  Endpoints are
    ordered along the canonical orientation.
    """

    lap_x: int
    lap_y: int
    shift: int
    start: Point
    end: Point

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.lap_x, self.lap_y, self.shift)


@dataclass(frozen=True)
class CurveComponent:
    index: int
    kind: str  # "circle" | "arc"
    segments: tuple[CurveSegment, ...]
    p1_degree: int
    p2_degree: int
    # For arcs: the fold vertices whose diagonal points the two ends limit to,
    # in traversal order.  None for circles.
    diagonal_ends: tuple[Fraction, Fraction] | None


@dataclass(frozen=True)
class ClosureComponent:
    """A circle of the curve closure: open arcs glued at diagonal points."""

    arcs: tuple[int, ...]
    diagonal_points: tuple[Fraction, ...]
    flips: int
    orientable: bool


@dataclass(frozen=True)
class QuotientComponent:
    """A component of the curve modulo the coordinate swap."""

    members: tuple[int, ...]
    compact: bool
    cover_trivial: bool  # the 2:1 preimage upstairs is disconnected
    lifts_through_arc: bool  # the image misses some target point


def _clip_equal_value_segment(
    xlo: Fraction,
    xhi: Fraction,
    la: Fraction,
    sa: Fraction,
    ylo: Fraction,
    yhi: Fraction,
    lb: Fraction,
    sb: Fraction,
    k: int,
) -> tuple[Point, Point] | None:
    """Clip {A(x) = B(y) + k} to [xlo,xhi] x [ylo,yhi]; A, B linear, slopes nonzero.

    Returns endpoints ordered so the x-displacement has the sign of sb (the
    canonical orientation), or None when the overlap is empty or a point.
    """
    alo, ahi = sorted((la, la + sa * (xhi - xlo)))
    blo, bhi = sorted((lb, lb + sb * (yhi - ylo)))
    vlo = max(alo, blo + k)
    vhi = min(ahi, bhi + k)
    if vlo >= vhi:
        return None

    def at(v: Fraction) -> Point:
        return (xlo + (v - la) / sa, ylo + (v - k - lb) / sb)

    if sa * sb > 0:
        return at(vlo), at(vhi)
    return at(vhi), at(vlo)


def _raw_segments(f: PLCircleMap) -> list[CurveSegment]:
    segs: list[CurveSegment] = []
    m = f.lap_count
    for i in range(m):
        xlo, xhi, la, _ = f.lap(i)
        ilo, ihi = f.value_span(i)
        for j in range(m):
            ylo, yhi, lb, _ = f.lap(j)
            jlo, jhi = f.value_span(j)
            kmin = math.ceil(ilo - jhi)
            kmax = math.floor(ihi - jlo)
            for k in range(kmin, kmax + 1):
                if i == j and k == 0:
                    continue  # the diagonal itself
                clipped = _clip_equal_value_segment(
                    xlo, xhi, la, f.slopes[i], ylo, yhi, lb, f.slopes[j], k
                )
                if clipped is not None:
                    segs.append(CurveSegment(i, j, k, *clipped))
    segs.sort(key=lambda s: s.key)
    return segs


def _torus_key(f: PLCircleMap, p: Point) -> tuple[Fraction, Fraction]:
    x0 = f.breakpoints[0][0]
    rx = p[0] - 1 if p[0] == x0 + 1 else p[0]
    ry = p[1] - 1 if p[1] == x0 + 1 else p[1]
    return (rx, ry)


@dataclass(frozen=True)
class DoublePointCurve:
    """All components of the double-point curve of one map, with structure.

    ``swap_pairing[i]`` is the component index of the coordinate-swapped copy
    of component i; swap-invariant components are fixed points.  Closure and
    quotient data are derived views of the same pieces.
    """

    map: PLCircleMap
    components: tuple[CurveComponent, ...]
    swap_pairing: tuple[int, ...]
    closure_components: tuple[ClosureComponent, ...]

    @cached_property
    def _component_by_key(self) -> dict[tuple[int, int, int], int]:
        out: dict[tuple[int, int, int], int] = {}
        for comp in self.components:
            for seg in comp.segments:
                out[seg.key] = comp.index
        return out

    def component_of_segment_key(self, key: tuple[int, int, int]) -> int:
        return self._component_by_key[key]

    def swap_invariant(self, index: int) -> bool:
        return self.swap_pairing[index] == index

    @cached_property
    def quotient_components(self) -> tuple[QuotientComponent, ...]:
        seen: set[int] = set()
        out: list[QuotientComponent] = []
        for comp in self.components:
            if comp.index in seen:
                continue
            partner = self.swap_pairing[comp.index]
            members = tuple(sorted({comp.index, partner}))
            seen.update(members)
            compact = all(self.components[i].kind == "circle" for i in members)
            out.append(
                QuotientComponent(
                    members=members,
                    compact=compact,
                    cover_trivial=len(members) == 2,
                    lifts_through_arc=not _image_covers_circle(
                        self.map, self.components[members[0]]
                    ),
                )
            )
        return tuple(out)


def _image_intervals(
    f: PLCircleMap, comp: CurveComponent
) -> list[tuple[Fraction, Fraction]] | None:
    """Value intervals (start mod 1, length) swept by the component's image.

    Returns None when a single segment already sweeps the whole circle.
    """
    intervals: list[tuple[Fraction, Fraction]] = []
    for seg in comp.segments:
        xlo, _, la, _ = f.lap(seg.lap_x)
        s = f.slopes[seg.lap_x]
        v1 = la + (seg.start[0] - xlo) * s
        v2 = la + (seg.end[0] - xlo) * s
        lo, hi = (v1, v2) if v1 <= v2 else (v2, v1)
        if hi - lo >= 1:
            return None
        intervals.append((mod1(lo), hi - lo))
    return intervals


def _image_covers_circle(f: PLCircleMap, comp: CurveComponent) -> bool:
    intervals = _image_intervals(f, comp)
    if intervals is None:
        return True

    def covered(p: Fraction) -> bool:
        return any(mod1(p - s) <= length for s, length in intervals)

    cuts = sorted({s for s, _ in intervals} | {mod1(s + l) for s, l in intervals})
    probes = list(cuts)
    for i, c in enumerate(cuts):
        nxt = cuts[(i + 1) % len(cuts)] + (1 if i + 1 == len(cuts) else 0)
        probes.append(mod1((c + nxt) / 2))
    return all(covered(p) for p in probes)


def double_point_curve(f: PLCircleMap) -> DoublePointCurve:
    """Compute the full double-point curve of a generic map."""
    segs = _raw_segments(f)
    ends: dict[tuple[Fraction, Fraction], list[tuple[int, int]]] = {}
    diagonal: dict[int, dict[int, Fraction]] = {}  # seg index -> end index -> fold c
    for si, seg in enumerate(segs):
        for ei, p in enumerate((seg.start, seg.end)):
            key = _torus_key(f, p)
            if key[0] == key[1]:
                diagonal.setdefault(si, {})[ei] = key[0]
            else:
                ends.setdefault(key, []).append((si, ei))
    for key, lst in ends.items():
        if len(lst) != 2:
            raise AssertionError(f"non-manifold gluing at {key}: {lst}")

    def other_end(si: int, ei: int) -> tuple[int, int] | None:
        p = segs[si].start if ei == 0 else segs[si].end
        key = _torus_key(f, p)
        if key[0] == key[1]:
            return None
        a, b = ends[key]
        return b if a == (si, ei) else a

    visited: set[int] = set()
    components: list[CurveComponent] = []

    def walk(first: int) -> tuple[list[CurveSegment], Fraction | None, Fraction | None]:
        """Follow the canonical orientation from segment ``first``."""
        chain = [segs[first]]
        visited.add(first)
        start_diag = diagonal.get(first, {}).get(0)
        si = first
        while True:
            nxt = other_end(si, 1)
            if nxt is None:
                return chain, start_diag, diagonal[si][1]
            tsi, tei = nxt
            if tsi == first and tei == 0:
                return chain, None, None
            if tei != 0:
                raise AssertionError("orientation incoherence during traversal")
            visited.add(tsi)
            chain.append(segs[tsi])
            si = tsi

    # Open arcs first: start from each outgoing diagonal end (the canonical
    # start of its segment), so traversal runs diagonal-to-diagonal.
    for si in range(len(segs)):
        if si in visited or si not in diagonal or 0 not in diagonal[si]:
            continue
        chain, c_from, c_to = walk(si)
        components.append(
            CurveComponent(
                index=-1,
                kind="arc",
                segments=tuple(chain),
                p1_degree=0,
                p2_degree=0,
                diagonal_ends=(c_from, c_to),
            )
        )
    for si in range(len(segs)):
        if si in visited:
            continue
        chain, c_from, c_to = walk(si)
        if c_from is not None or c_to is not None:
            raise AssertionError("arc discovered during circle sweep")
        p1 = sum(s.end[0] - s.start[0] for s in chain)
        p2 = sum(s.end[1] - s.start[1] for s in chain)
        if p1.denominator != 1 or p2.denominator != 1:
            raise AssertionError("non-integer winding on a closed component")
        components.append(
            CurveComponent(
                index=-1,
                kind="circle",
                segments=tuple(chain),
                p1_degree=int(p1),
                p2_degree=int(p2),
                diagonal_ends=None,
            )
        )

    components.sort(key=lambda c: c.segments[0].key)
    components = [
        CurveComponent(i, c.kind, c.segments, c.p1_degree, c.p2_degree, c.diagonal_ends)
        for i, c in enumerate(components)
    ]

    by_key = {seg.key: comp.index for comp in components for seg in comp.segments}
    pairing = []
    for comp in components:
        i, j, k = comp.segments[0].key
        pairing.append(by_key[(j, i, -k)])
    swap_pairing = tuple(pairing)

    closure = _closure_components(f, components, segs, diagonal)
    return DoublePointCurve(
        map=f,
        components=components,
        swap_pairing=swap_pairing,
        closure_components=closure,
    )


def _closure_components(
    f: PLCircleMap,
    components: Sequence[CurveComponent],
    segs: Sequence[CurveSegment],
    diagonal: dict[int, dict[int, Fraction]],
) -> tuple[ClosureComponent, ...]:
    arcs = [c for c in components if c.kind == "arc"]
    if not arcs:
        return ()
    # Each diagonal point receives exactly two arc-ends; record their types.
    point_ends: dict[Fraction, list[tuple[int, str]]] = {}
    for comp in arcs:
        c_from, c_to = comp.diagonal_ends  # type: ignore[misc]
        point_ends.setdefault(c_from, []).append((comp.index, "outgoing"))
        point_ends.setdefault(c_to, []).append((comp.index, "incoming"))
    for c, lst in point_ends.items():
        if len(lst) != 2:
            raise AssertionError(f"diagonal point {c} has {len(lst)} arc-ends")

    parent: dict[int, int] = {c.index: c.index for c in arcs}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for lst in point_ends.values():
        a, b = lst[0][0], lst[1][0]
        parent[find(a)] = find(b)

    groups: dict[int, list[int]] = {}
    for c in arcs:
        groups.setdefault(find(c.index), []).append(c.index)
    out = []
    for members in sorted(groups.values(), key=min):
        pts = sorted(
            c for c, lst in point_ends.items() if find(lst[0][0]) == find(members[0])
        )
        # A passage flips orientation when both ends point the same way
        # (both outgoing at a value maximum, both incoming at a minimum).
        flips = sum(
            1
            for c in pts
            if point_ends[c][0][1] == point_ends[c][1][1]
        )
        out.append(
            ClosureComponent(
                arcs=tuple(sorted(members)),
                diagonal_points=tuple(pts),
                flips=flips,
                orientable=flips % 2 == 0,
            )
        )
    return tuple(out)


def projection_degree(curve: DoublePointCurve, component: int, factor: int) -> int:
    """Winding of the chosen coordinate projection; 0 on open arcs."""
    comp = curve.components[component]
    if factor not in (1, 2):
        raise ValueError("factor must be 1 or 2")
    return comp.p1_degree if factor == 1 else comp.p2_degree


def _as_curve(f: Union[PLCircleMap, DoublePointCurve]) -> DoublePointCurve:
    return f if isinstance(f, DoublePointCurve) else double_point_curve(f)


def closure_orientability(
    f: Union[PLCircleMap, DoublePointCurve], component: int
) -> bool:
    return _as_curve(f).closure_components[component].orientable


def hopf_invariant(f: Union[PLCircleMap, DoublePointCurve]) -> int:
    """Parity of the number of compact swap-invariant components."""
    curve = _as_curve(f)
    return (
        sum(
            1
            for c in curve.components
            if c.kind == "circle" and curve.swap_invariant(c.index)
        )
        % 2
    )


def controlled_hopf(
    f: Union[PLCircleMap, DoublePointCurve],
) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Per compact quotient component: 1 when its double cover is connected."""
    curve = _as_curve(f)
    return tuple(
        (q.members, 0 if q.cover_trivial else 1)
        for q in curve.quotient_components
        if q.compact
    )


@dataclass(frozen=True)
class ArcLiftReport:
    rows: tuple[QuotientComponent, ...]
    violation: bool


def arc_lift_check(f: Union[PLCircleMap, DoublePointCurve]) -> ArcLiftReport:
    """A compact quotient piece mapping through an arc must lift (trivial cover)."""
    curve = _as_curve(f)
    rows = curve.quotient_components
    violation = any(
        q.compact and q.lifts_through_arc and not q.cover_trivial for q in rows
    )
    return ArcLiftReport(rows=rows, violation=violation)


@dataclass(frozen=True)
class RealizabilityReport:
    criterion_pass: bool
    criterion_witness: int | None
    classical_pass: bool
    agreement: bool
    note: str | None


def realizability_report(
    f: Union[PLCircleMap, DoublePointCurve],
) -> RealizabilityReport:
    """Compare the double-point criterion with the classical degree test.

    The criterion rejects a map when some swap-invariant circle component has
    odd first-projection winding.  The classical test accepts exactly the
    degrees outside {0, 1, -1}.  Disagreements are annotated, never hidden:
    circle maps are the known low-dimensional edge case for the criterion.
    """
    curve = _as_curve(f)
    witness = None
    for c in curve.components:
        if (
            c.kind == "circle"
            and curve.swap_invariant(c.index)
            and c.p1_degree % 2 != 0
        ):
            witness = c.index
            break
    criterion_pass = witness is None
    classical_pass = curve.map.degree not in (0, 1, -1)
    agreement = criterion_pass == classical_pass
    note = None
    if not agreement and criterion_pass:
        note = (
            f"criterion passes but degree {curve.map.degree} lies in {{0, 1, -1}}: "
            "for circle maps the double-point criterion is inconclusive in this "
            "range, so the classical verdict stands"
        )
    elif not agreement and not criterion_pass:
        comp = curve.components[witness]  # type: ignore[index]
        note = (
            f"criterion fails on swap-invariant component {witness} with odd "
            f"first-projection degree {comp.p1_degree}; the classical degree "
            "test alone would accept this map"
        )
    return RealizabilityReport(
        criterion_pass=criterion_pass,
        criterion_witness=witness,
        classical_pass=classical_pass,
        agreement=agreement,
        note=note,
    )


# --- immersed polygons in the plane ---------------------------------------


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segment_crossing(
    a: Point, b: Point, c: Point, d: Point
) -> Point | None:
    """Transverse interior crossing of [a,b] and [c,d]; DegeneratePosition otherwise."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        if _cross(a, b, c) == 0 and (
            max(min(a[0], b[0]), min(c[0], d[0])) <= min(max(a[0], b[0]), max(c[0], d[0]))
            and max(min(a[1], b[1]), min(c[1], d[1]))
            <= min(max(a[1], b[1]), max(c[1], d[1]))
        ):
            raise DegeneratePosition("collinear overlapping edges")
        return None
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom
    u = ((c[0] - a[0]) * r[1] - (c[1] - a[1]) * r[0]) / denom
    if t <= 0 or t >= 1 or u <= 0 or u >= 1:
        if (0 <= t <= 1) and (0 <= u <= 1):
            raise DegeneratePosition("edge endpoint touches another edge")
        return None
    return (a[0] + t * r[0], a[1] + t * r[1])


def planar_self_crossings(
    polygon: Iterable[tuple[RationalLike, RationalLike]],
) -> tuple[Point, ...]:
    """Exact transverse self-crossings of a closed polygon in general position."""
    pts = [(frac(x), frac(y)) for x, y in polygon]
    n = len(pts)
    if n < 3:
        raise DegeneratePosition("a closed curve needs at least 3 vertices")
    if len(set(pts)) != n:
        raise DegeneratePosition("repeated vertex")
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        c = edges[(i + 1) % n][1]
        if _cross(a, b, c) == 0 and (
            (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0
        ):
            raise DegeneratePosition("consecutive edges fold back onto each other")
    crossings: list[Point] = []
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            p = _segment_crossing(*edges[i], *edges[j])
            if p is not None:
                crossings.append(p)
    if len(set(crossings)) != len(crossings):
        raise DegeneratePosition("three or more edges concurrent at a point")
    return tuple(crossings)


def planar_curve_hopf(
    polygon: Iterable[tuple[RationalLike, RationalLike]],
) -> int:
    """Parity of the number of double points of an immersed closed polygon."""
    return len(planar_self_crossings(polygon)) % 2
