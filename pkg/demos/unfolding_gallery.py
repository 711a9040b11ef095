#!/usr/bin/env python3
"""Unfold a gallery of random maps and show where unfolding can get stuck.

First a batch of seeded random maps, each unfolded until its arc preimage
has no negatively-traversed components.  Then a hand-built obstruction: a
map whose dips force every wide arc in one band to pick up a negative
component no matter how the arc is grown.
"""

from fractions import Fraction as F

from dpl import (
    Angle,
    TransverseArc,
    UnfoldingBlocked,
    downward_pair_count,
    eliminate_negative_arcs,
    make_map,
    random_map,
    value_gaps,
)


def unfold_one(seed):
    f = random_map(seed, max_folds=10, max_degree=3)
    final, trace = eliminate_negative_arcs(f)
    ms = [s.negative_count for s in trace.steps]
    tag = " (reflected)" if trace.reflected else ""
    print(
        f"seed {seed:3d}: degree {f.degree:+d}, {len(f.breakpoints)} vertices, "
        f"m-sequence {ms}{tag}"
    )
    assert ms[-1] == 0


def main():
    print("-- random gallery --")
    for seed in range(12):
        unfold_one(seed)
    print()

    print("-- a genuine obstruction --")
    deep = make_map([(0, 0), (F(1, 2), F(8, 5))], 0)
    print("map:", deep.breakpoints, "degree", deep.degree)
    for start, width in value_gaps(deep):
        nu = downward_pair_count(deep, Angle(start + width / 2))
        print(f"  value gap at {start}, width {width}: {nu} adjacent downward pair(s)")
    print("every arc whose complement sits inside the crowded band is stuck:")
    wide = TransverseArc(Angle(F(11, 20)), Angle(F(1, 20)))
    try:
        eliminate_negative_arcs(deep, wide)
    except UnfoldingBlocked as exc:
        print("  UnfoldingBlocked:", exc)
    final, trace = eliminate_negative_arcs(deep)
    print("the default arc avoids the band and finishes at", final)


if __name__ == "__main__":
    main()
