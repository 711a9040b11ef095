"""Exact piecewise-linear self-maps of the circle.

The circle is R/Z.  Points are exact rationals (fractions.Fraction); nothing
in this package touches floating point.  A map is stored as the cyclic
sequence of its linear laps: breakpoints (x_i, l_i) with x_i strictly
increasing in [0, 1) and l_i the lift value at x_i, closed up by
lift(x + 1) = lift(x) + degree.

Construction normalizes the breakpoint list so that every interior vertex is
a genuine fold (slope sign change); runs of same-sign segments are
straightened into a single linear lap.  Genericity, in the sense used
throughout this package, means vertex values are pairwise distinct on the
target circle.  That makes the double-point curve a 1-manifold away from the
diagonal, which the rest of the package relies on.
"""

from __future__ import annotations

import math
import operator
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

__all__ = [
    "Angle",
    "PLCircleMap",
    "TransverseArc",
    "PreimageComponent",
    "PreimageClassification",
    "NonIncreasingDomain",
    "ZeroSlopeSegment",
    "DuplicateVertexValue",
    "EndpointNotRegular",
    "InfeasibleParameters",
    "frac",
    "mod1",
    "make_map",
    "classify_preimage",
    "random_map",
]

RationalLike = Union[Fraction, int, str]


class NonIncreasingDomain(ValueError):
    """Breakpoint x-coordinates are not strictly increasing inside [0, 1)."""


class ZeroSlopeSegment(ValueError):
    """A segment of the lift is constant; constant stretches are banned."""


class DuplicateVertexValue(ValueError):
    """Two vertices share a value on the target circle (genericity violation)."""


class EndpointNotRegular(ValueError):
    """An arc endpoint (or sample value) hits a critical value of the map."""


class InfeasibleParameters(ValueError):
    """No valid object exists with the requested parameters."""


def frac(x: RationalLike) -> Fraction:
    """Coerce an int, a fraction string like ``"3/4"``, or a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True, order=True, init=False)
class Angle:
    """A point of the circle R/Z, stored by its representative in [0, 1)."""

    value: Fraction

    def __init__(self, value: Union[RationalLike, "Angle"]) -> None:
        if isinstance(value, Angle):
            value = value.value
        object.__setattr__(self, "value", mod1(frac(value)))

    def plus(self, delta: RationalLike) -> "Angle":
        return Angle(self.value + frac(delta))

    def ccw_to(self, other: "Angle") -> Fraction:
        """Counterclockwise distance from self to other, in [0, 1)."""
        return mod1(Angle(other).value - self.value)

    def __str__(self) -> str:
        return str(self.value)


def _as_angle(x: Union[RationalLike, Angle]) -> Angle:
    return x if isinstance(x, Angle) else Angle(x)


@dataclass(frozen=True, init=False)
class TransverseArc:
    """A proper open arc of the target circle, traversed start -> end.

    ``orientation`` +1 means the traversal runs counterclockwise from start
    to end, -1 clockwise.  The arc is the open set of points strictly between
    the endpoints in the traversal direction.  Endpoint regularity is a
    property of an (arc, map) pair and is checked where the arc is used.
    """

    start: Angle
    end: Angle
    orientation: int

    def __init__(self, start, end, orientation: int = 1) -> None:
        start, end = _as_angle(start), _as_angle(end)
        if orientation not in (1, -1):
            raise InfeasibleParameters("orientation must be +1 or -1")
        if start == end:
            raise InfeasibleParameters("an arc must be a proper subset: start == end")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "orientation", orientation)

    @property
    def ccw_start(self) -> Angle:
        return self.start if self.orientation == 1 else self.end

    @property
    def ccw_end(self) -> Angle:
        return self.end if self.orientation == 1 else self.start

    @property
    def width(self) -> Fraction:
        return self.ccw_start.ccw_to(self.ccw_end)

    def contains(self, x: Union[RationalLike, Angle]) -> bool:
        t = self.ccw_start.ccw_to(_as_angle(x))
        return 0 < t < self.width

    def midpoint(self) -> Angle:
        return self.ccw_start.plus(self.width / 2)

    def __str__(self) -> str:
        arrow = "->" if self.orientation == 1 else "<-"
        return f"({self.start} {arrow} {self.end})"


@dataclass(frozen=True)
class PLCircleMap:
    """A generic piecewise-linear self-map of the circle.

    Instances come from :func:`make_map` and are always normalized: every
    vertex of a folded map is a fold, and a fold-free (monotone) map keeps a
    single anchor vertex.  ``breakpoints[i] = (x_i, l_i)`` gives the lift
    value l_i at x_i; the closing condition is lift(x_0 + 1) = l_0 + degree.
    Immutable; all methods are pure.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    degree: int

    @property
    def lap_count(self) -> int:
        return len(self.breakpoints)

    @cached_property
    def _xs(self) -> tuple[Fraction, ...]:
        xs = [x for x, _ in self.breakpoints]
        xs.append(xs[0] + 1)
        return tuple(xs)

    @cached_property
    def _ls(self) -> tuple[Fraction, ...]:
        ls = [l for _, l in self.breakpoints]
        ls.append(ls[0] + self.degree)
        return tuple(ls)

    @cached_property
    def slopes(self) -> tuple[Fraction, ...]:
        xs, ls = self._xs, self._ls
        return tuple(
            (ls[i + 1] - ls[i]) / (xs[i + 1] - xs[i]) for i in range(self.lap_count)
        )

    @property
    def fold_free(self) -> bool:
        return self.lap_count == 1

    @cached_property
    def folds(self) -> tuple[tuple[Fraction, Angle], ...]:
        """Fold vertices as (domain point, critical value on the circle)."""
        if self.fold_free:
            return ()
        return tuple((x, Angle(l)) for x, l in self.breakpoints)

    @cached_property
    def critical_values(self) -> frozenset[Angle]:
        return frozenset(v for _, v in self.folds)

    def lap(self, j: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(x_lo, x_hi, lift at x_lo, lift at x_hi) of lap j."""
        return self._xs[j], self._xs[j + 1], self._ls[j], self._ls[j + 1]

    def value_span(self, j: int) -> tuple[Fraction, Fraction]:
        lo, hi = self._ls[j], self._ls[j + 1]
        return (lo, hi) if lo <= hi else (hi, lo)

    def to_fundamental(self, x: RationalLike) -> Fraction:
        """Translate x by an integer into [x_0, x_0 + 1)."""
        x = frac(x)
        return x - math.floor(x - self._xs[0])

    def lap_of(self, x: RationalLike) -> int:
        """Index of the lap whose half-open interval [x_j, x_{j+1}) contains x."""
        x = self.to_fundamental(x)
        return bisect_right(self._xs, x) - 1

    def lift_evaluate(self, x: RationalLike) -> Fraction:
        x = frac(x)
        k = math.floor(x - self._xs[0])
        base = x - k
        j = bisect_right(self._xs, base) - 1
        if j == self.lap_count:  # base == x_0 + 1 cannot happen, but stay safe
            j -= 1
        xs, ls = self._xs, self._ls
        val = ls[j] + (base - xs[j]) * (ls[j + 1] - ls[j]) / (xs[j + 1] - xs[j])
        return val + k * self.degree

    def evaluate(self, x: Union[RationalLike, Angle]) -> Angle:
        if isinstance(x, Angle):
            x = x.value
        return Angle(self.lift_evaluate(x))

    def is_regular_value(self, y: Union[RationalLike, Angle]) -> bool:
        return _as_angle(y) not in self.critical_values

    def fiber(self, y: Union[RationalLike, Angle]) -> tuple[Fraction, ...]:
        """All preimages of the target point y, inside [x_0, x_0 + 1), sorted."""
        yv = _as_angle(y).value
        xs, ls = self._xs, self._ls
        found: set[Fraction] = set()
        for j in range(self.lap_count):
            lo, hi = self.value_span(j)
            k = math.ceil(lo - yv)
            while yv + k <= hi:
                t = yv + k
                x = xs[j] + (t - ls[j]) * (xs[j + 1] - xs[j]) / (ls[j + 1] - ls[j])
                found.add(x - 1 if x >= xs[0] + 1 else x)
                k += 1
        return tuple(sorted(found))

    def signed_fiber_count(self, y: Union[RationalLike, Angle]) -> int:
        """Sum of lap-slope signs over the fiber of a regular value; equals degree."""
        if not self.is_regular_value(y):
            raise EndpointNotRegular(f"{_as_angle(y)} is a critical value")
        total = 0
        for x in self.fiber(y):
            s = self.slopes[self.lap_of(x)]
            total += 1 if s > 0 else -1
        return total

    def reflect(self) -> "PLCircleMap":
        """The map x -> f(-x): degree negates, folds mirror through 0."""
        pts = []
        for x, _ in self.breakpoints:
            p = mod1(-x)
            pts.append((p, self.lift_evaluate(-p)))
        return make_map(sorted(pts), -self.degree)


def make_map(
    breakpoints: Iterable[tuple[RationalLike, RationalLike]], degree: int
) -> PLCircleMap:
    """Validate and normalize a breakpoint presentation.

    Validation order matters: the domain is checked first, then vertex-value
    genericity on the raw list (so a presentation with both a duplicate value
    and a flat segment reports DuplicateVertexValue), then zero slopes, and
    finally same-sign runs are straightened so surviving vertices are folds.
    """
    pts = [(frac(x), frac(l)) for x, l in breakpoints]
    if not pts:
        raise NonIncreasingDomain("need at least one breakpoint")
    d = operator.index(degree)
    xs = [x for x, _ in pts]
    if any(not (0 <= x < 1) for x in xs):
        raise NonIncreasingDomain("breakpoint x-coordinates must lie in [0, 1)")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise NonIncreasingDomain("breakpoint x-coordinates must strictly increase")
    vals = [mod1(l) for _, l in pts]
    if len(set(vals)) != len(vals):
        raise DuplicateVertexValue(
            "vertex values must be pairwise distinct on the target circle"
        )
    m = len(pts)
    lifts = [l for _, l in pts] + [pts[0][1] + d]
    signs = []
    for i in range(m):
        dl = lifts[i + 1] - lifts[i]
        if dl == 0:
            raise ZeroSlopeSegment(f"segment starting at x={xs[i]} has zero slope")
        signs.append(1 if dl > 0 else -1)
    keep = [i for i in range(m) if signs[i - 1] != signs[i]]
    if not keep:
        keep = [0]
    return PLCircleMap(breakpoints=tuple(pts[i] for i in keep), degree=d)


@dataclass(frozen=True)
class PreimageComponent:
    """One component of the preimage of an open arc.

    ``start < end <= start + 1`` are lift coordinates on the domain circle;
    a ``circle`` component is the whole domain (the map's image lies inside
    the arc).  ``endpoint_values`` are the arc endpoints hit by the closure
    endpoints, None for circles.
    """

    kind: str  # positive | negative | neutral | circle
    start: Fraction
    end: Fraction
    endpoint_values: tuple[Angle, Angle] | None

    def contains(self, x: Fraction) -> bool:
        """Whether the open component contains the domain point x (mod 1)."""
        if self.kind == "circle":
            return True
        for cand in (x, x + 1, x - 1):
            if self.start < cand < self.end:
                return True
        return False


@dataclass(frozen=True)
class PreimageClassification:
    arc: TransverseArc
    components: tuple[PreimageComponent, ...]

    @property
    def positive_count(self) -> int:
        return sum(1 for c in self.components if c.kind == "positive")

    @property
    def negative_count(self) -> int:
        return sum(1 for c in self.components if c.kind == "negative")

    @property
    def neutral_count(self) -> int:
        return sum(1 for c in self.components if c.kind == "neutral")

    @property
    def circle_count(self) -> int:
        return sum(1 for c in self.components if c.kind == "circle")

    def component_containing(self, x: Fraction) -> PreimageComponent | None:
        for c in self.components:
            if c.contains(x):
                return c
        return None


def classify_preimage(f: PLCircleMap, arc: TransverseArc) -> PreimageClassification:
    """Split f^{-1}(arc) into positive / negative / neutral arcs and circles.

    Positive components cross the arc following its traversal direction,
    negative ones against it, neutral ones enter and back out over a single
    endpoint.  Components are listed in domain order from the map's anchor.
    """
    for endpoint in (arc.start, arc.end):
        if not f.is_regular_value(endpoint):
            raise EndpointNotRegular(f"arc endpoint {endpoint} is a critical value")
    a, b = arc.ccw_start, arc.ccw_end
    cuts = sorted(set(f.fiber(a)) | set(f.fiber(b)))
    comps: list[PreimageComponent] = []
    if not cuts:
        x0 = f.breakpoints[0][0]
        if arc.contains(f.evaluate(x0)):
            comps.append(PreimageComponent("circle", x0, x0 + 1, None))
    else:
        for idx, p in enumerate(cuts):
            q = cuts[idx + 1] if idx + 1 < len(cuts) else cuts[0] + 1
            if not arc.contains(f.evaluate((p + q) / 2)):
                continue
            v_p, v_q = f.evaluate(p), f.evaluate(q)
            if v_p == a and v_q == b:
                kind = "positive"
            elif v_p == b and v_q == a:
                kind = "negative"
            else:
                kind = "neutral"
            if arc.orientation == -1 and kind != "neutral":
                kind = "negative" if kind == "positive" else "positive"
            comps.append(PreimageComponent(kind, p, q, (v_p, v_q)))
    return PreimageClassification(arc=arc, components=tuple(comps))


def crossing_word(
    f: PLCircleMap, y: Union[RationalLike, Angle]
) -> tuple[int, ...]:
    """Slope signs over the fiber of a regular value, in domain order."""
    ya = _as_angle(y)
    if not f.is_regular_value(ya):
        raise EndpointNotRegular(f"{ya} is a critical value")
    return tuple(1 if f.slopes[f.lap_of(x)] > 0 else -1 for x in f.fiber(ya))


def downward_pair_count(f: PLCircleMap, y: Union[RationalLike, Angle]) -> int:
    """Cyclically adjacent descending pairs in the crossing word at a level.

    Such a pair is a full downward sweep: between the two crossings the map
    descends through every target point.  Each sweep pins one negative
    preimage component onto every arc ending at this level, whatever the
    start, so an arc can be unfolded only where this count is zero.
    """
    word = crossing_word(f, y)
    n = len(word)
    return sum(1 for i in range(n) if word[i] == -1 and word[(i + 1) % n] == -1)


def value_gaps(f: PLCircleMap) -> tuple[tuple[Fraction, Fraction], ...]:
    """Maximal critical-value-free arcs of the target, as (start, width).

    The crossing word is constant on each gap, so one interior probe decides
    properties of the whole gap.  A fold-free map yields the full circle.
    """
    residues = sorted(v.value for v in f.critical_values)
    if not residues:
        return ((Fraction(0), Fraction(1)),)
    out = []
    for i, r in enumerate(residues):
        nxt = residues[i + 1] if i + 1 < len(residues) else residues[0] + 1
        out.append((r, nxt - r))
    return tuple(out)


def _unfold_ready(f: PLCircleMap) -> bool:
    probe = f if f.degree >= 0 else f.reflect()
    return any(
        downward_pair_count(probe, lo + gw / 2) == 0
        for lo, gw in value_gaps(probe)
    )


def random_map(seed: int, max_folds: int, max_degree: int) -> PLCircleMap:
    """Deterministic pseudo-random generic map.

    Degree is drawn from [-max_degree, max_degree], the (even) fold count from
    what the degree allows.  Monotone rises and falls on the side opposite the
    degree surplus are kept below one full turn, and draws whose every level
    is crossed by a full downward sweep (or upward, for negative degree) are
    rejected, so generated maps always admit arc unfolding.
    """
    if max_folds < 0 or max_degree < 0:
        raise InfeasibleParameters("bounds must be nonnegative")
    if max_degree == 0 and max_folds < 2:
        raise InfeasibleParameters("a fold-free map has |degree| >= 1")
    rng = random.Random(seed)
    for _ in range(64):
        d = rng.randint(-max_degree, max_degree)
        even_cap = max_folds - (max_folds % 2)
        choices = list(range(2, even_cap + 1, 2))
        if d != 0:
            choices = [0] + choices
        if not choices:
            continue
        nf = rng.choice(choices)
        denom = rng.choice((32, 48, 64, 80, 96))
        if nf == 0:
            x0 = Fraction(rng.randrange(denom), denom)
            l0 = Fraction(rng.randrange(denom), denom)
            return make_map([(x0, l0)], d)  # monotone: trivially unfold-ready
        h = nf // 2
        dx = 8 * nf
        xs = [Fraction(n, dx) for n in sorted(rng.sample(range(dx), nf))]
        base_up = [Fraction(rng.randint(8, 56), 64) for _ in range(h)]
        base_dn = [Fraction(rng.randint(8, 56), 64) for _ in range(h)]
        if d >= 0:
            dn = base_dn
            scale = (sum(dn) + d) / sum(base_up)
            up = [u * scale for u in base_up]
        else:
            up = base_up
            scale = (sum(up) - d) / sum(base_dn)
            dn = [v * scale for v in base_dn]
        lifts = [Fraction(rng.randrange(denom), denom)]
        for i in range(h):
            lifts.append(lifts[-1] + up[i])
            lifts.append(lifts[-1] - dn[i])
        lifts.pop()  # the popped entry equals lifts[0] + d by construction
        try:
            candidate = make_map(list(zip(xs, lifts)), d)
        except DuplicateVertexValue:
            continue
        if _unfold_ready(candidate):
            return candidate
    raise InfeasibleParameters("could not generate a generic map with these bounds")
