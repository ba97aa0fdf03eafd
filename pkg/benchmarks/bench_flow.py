"""Compare the compiled max-flow kernel with the pure-Python fallback.

Usage: python3 benchmarks/bench_flow.py [--seed N] [--repeat N]

Times three workloads on seeded random multidigraphs: single max-flow
calls, full ``covers_all`` sweeps and a complete ``edmonds_construct``.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit
from unittest import mock

from tempbranch import StaticDigraph, static_branchings
from tempbranch._flow_py import FlowNetwork as PyFlow

try:
    from tempbranch._flow_ext import FlowNetwork as ExtFlow
except ImportError:
    ExtFlow = None


def random_arcs(rng, n, m):
    tails, heads = [], []
    while len(tails) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            tails.append(u)
            heads.append(v)
    return tails, heads


def rooted_digraph(rng, n, extra, k):
    """A multidigraph with k arc-disjoint spanning trees out of vertex 0 plus noise."""
    edges = []
    for _ in range(k):
        order = list(range(1, n))
        rng.shuffle(order)
        seen = [0]
        for v in order:
            edges.append((rng.choice(seen), v))
            seen.append(v)
    tails, heads = random_arcs(rng, n, extra)
    edges += list(zip(tails, heads))
    return StaticDigraph(range(n), [(i, u, v) for i, (u, v) in enumerate(edges)])


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if ExtFlow is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    backends = [("python", PyFlow), ("compiled", ExtFlow)]

    rows = []
    for n, m in [(50, 300), (200, 2000), (1000, 10000)]:
        tails, heads = random_arcs(rng, n, m)
        sinks = [rng.randrange(1, n) for _ in range(50)]
        times = []
        for _, cls in backends:
            net = cls(n, tails, heads)
            times.append(best(lambda: [net.max_flow([0], s) for s in sinks], args.repeat))
        rows.append((f"max_flow x50, n={n} m={m}", *times))

    for n, extra, need in [(30, 60, 2), (100, 300, 3)]:
        d = rooted_digraph(rng, n, extra, need)
        tails = [u for _, u, _ in d.edges]
        heads = [v for _, _, v in d.edges]
        m = len(tails)
        assert PyFlow(n, tails, heads).covers_all([0], need)
        times = []
        for _, cls in backends:
            net = cls(n, tails, heads)
            times.append(best(lambda: net.covers_all([0], need), args.repeat))
        rows.append((f"covers_all need={need}, n={n} m={m}", *times))

    for n, extra, k in [(12, 20, 2), (25, 40, 2), (15, 30, 3)]:
        d = rooted_digraph(rng, n, extra, k)
        roots = [{0}] * k
        times = []
        for _, cls in backends:
            with mock.patch.object(static_branchings, "FlowNetwork", cls):
                times.append(best(lambda: static_branchings.edmonds_construct(d, roots), args.repeat))
        rows.append((f"edmonds_construct k={k}, n={n} m={len(d.edges)}", *times))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, py, ext in rows:
        print(f"{name:<{width}}  {py * 1e3:>8.2f}ms  {ext * 1e3:>8.2f}ms  {py / ext:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
