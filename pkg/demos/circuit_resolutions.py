#!/usr/bin/env python3
"""Resolve 4-valent graphs into circuits, and count crossings of flat polygons.

Every vertex of an admissible graph has two edges in and two out, so each
vertex admits two ways of pairing arrivals with departures.  One pairing
choice per component always closes everything into a single circuit; the
demo compares that constructive choice against brute force over all 2^V
pairings, then counts transverse self-crossings of a few closed polygons.
"""

from dpl import (
    build_euler_graph,
    eulerian_resolution,
    planar_curve_hopf,
    planar_self_crossings,
    random_admissible_graph,
    resolution_choices,
    trace_circuits,
)


def main():
    edges = [(0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0)]
    g = build_euler_graph(edges)
    print(f"graph: {len(g.vertices)} vertices, {len(g.edges)} edges, "
          f"{g.component_count} component(s)")

    res = eulerian_resolution(g)
    print("constructive pairing:", res.pairing)
    print("single circuit:", [g.edges[i] for i in res.circuit])

    singles = 0
    for pairing in resolution_choices(g):
        circuits = trace_circuits(g, pairing)
        if len(circuits) == 1:
            singles += 1
    print(f"{singles} of {2 ** len(g.vertices)} pairings give one circuit")
    print()

    print("random admissible graphs:")
    for seed in range(6):
        h = random_admissible_graph(seed, 5)
        parts = [len(trace_circuits(h, eulerian_resolution(h, c).pairing, c))
                 for c in range(h.component_count)]
        print(f"  seed {seed}: {h.component_count} component(s), "
              f"circuits per component {parts}")
        assert all(n == 1 for n in parts)
    print()

    figure_eight = [(0, 0), (2, 2), (2, 0), (0, 2)]
    hexagram = [(0, 0), (4, 0), (1, 2), (2, -1), (3, 2), (0, 1)]
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    for name, poly in [("figure eight", figure_eight), ("hexagram", hexagram), ("square", square)]:
        crossings = planar_self_crossings(poly)
        print(f"{name}: {len(crossings)} transverse self-crossings, "
              f"hopf parity {planar_curve_hopf(poly)}")


if __name__ == "__main__":
    main()
