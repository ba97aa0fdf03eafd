"""Exhaustive small temporal digraphs, up to relabelling and time translation."""

from itertools import combinations, combinations_with_replacement, permutations

from tempbranch import TemporalDigraph

TIMES = (1, 2, 3)
ACTIVITIES = [s for r in range(1, len(TIMES) + 1) for s in combinations(TIMES, r)]
NAMES = "abc"


def _tie_perms(gam):
    n = len(gam)
    return [p for p in permutations(range(n)) if all(gam[p[i]] == gam[i] for i in range(n))]


def structures(max_vertices=3, max_temporal_edges=5):
    """Yield (vertex count, activity tuple, temporal edges (u, v, dep, arr)).

    Activity sets are nonempty subsets of {1,2,3} listed in nondecreasing
    order, with some vertex active at 1; one base edge per ordered pair, no
    loops.  Among vertices with equal activity only the lexicographically
    least labelling is kept, so each isomorphism class appears once.
    """
    for n in range(1, max_vertices + 1):
        for gam in combinations_with_replacement(ACTIVITIES, n):
            if min(min(s) for s in gam) != TIMES[0]:
                continue
            perms = _tie_perms(gam)
            cands = [
                (u, v, t, s)
                for u in range(n)
                for v in range(n)
                if u != v
                for t in gam[u]
                for s in gam[v]
                if t <= s
            ]
            for j in range(max_temporal_edges + 1):
                for es in combinations(cands, j):
                    if len(perms) > 1:
                        key = tuple(sorted(es))
                        if any(
                            tuple(sorted((p[u], p[v], t, s) for u, v, t, s in es)) < key for p in perms
                        ):
                            continue
                    yield n, gam, es


def build(n, gam, es):
    names = NAMES[:n]
    gamma = {names[i]: gam[i] for i in range(n)}
    lam, edges = {}, []
    for u, v, t, s in es:
        eid = f"{names[u]}{names[v]}"
        if eid not in lam:
            edges.append((eid, names[u], names[v]))
            lam[eid] = []
        lam[eid].append((t, s))
    return TemporalDigraph(names, edges, gamma, lam)


def root_pairs(g):
    """Two root-set pairs per digraph: the sourceless run starts Z for both
    branchings, and Z plus the remaining run starts split alternately."""
    heads = {(g.edge_map()[e][1], s) for e, _, s in g.temporal_edges()}
    starts = [x for x in g.temporal_vertices() if not g.is_active(x[0], x[1] - 1)]
    z = {x for x in starts if x not in heads}
    free = [x for x in starts if x in heads]
    yield [set(z), set(z)]
    if free:
        yield [z | set(free[0::2]), z | set(free[1::2])]


def digraph_classes(n, max_arcs):
    """Loopless simple digraphs on range(n) with at most ``max_arcs`` arcs, one
    per isomorphism class (the least arc bitmask over all relabellings)."""
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    where = {a: i for i, a in enumerate(arcs)}
    m = len(arcs)
    half = (m + 1) // 2
    tables = []
    for p in permutations(range(n)):
        image = [1 << where[(p[u], p[v])] for u, v in arcs]
        lo, hi = [0] * (1 << half), [0] * (1 << (m - half))
        for x in range(1, len(lo)):
            lo[x] = lo[x & (x - 1)] | image[(x & -x).bit_length() - 1]
        for x in range(1, len(hi)):
            hi[x] = hi[x & (x - 1)] | image[(x & -x).bit_length() - 1 + half]
        tables.append((lo, hi))
    low = (1 << half) - 1
    for j in range(max_arcs + 1):
        for chosen in combinations(range(m), j):
            mask = sum(1 << i for i in chosen)
            a, b = mask & low, mask >> half
            if all(lo[a] | hi[b] >= mask for lo, hi in tables):
                yield [arcs[i] for i in chosen]


def multidigraphs(n, max_arcs):
    """Every labelled loopless multidigraph on range(n) with at most ``max_arcs`` arcs."""
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for j in range(max_arcs + 1):
        yield from (list(c) for c in combinations_with_replacement(arcs, j))


def root_families(n, max_k=3):
    """Root-set families: every multiset of nonempty subsets, except that for
    k >= 3 on five or more vertices only singleton roots are used."""
    subsets = [frozenset(c) for r in range(1, n + 1) for c in combinations(range(n), r)]
    for k in range(1, max_k + 1):
        pool = subsets if k <= 2 or n <= 4 else [frozenset({v}) for v in range(n)]
        yield from combinations_with_replacement(pool, k)
