"""Edge-disjoint spanning branchings of static digraphs (Edmonds / Lovász)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import StaticDigraph
from .flow import FlowNetwork


@dataclass(frozen=True)
class StaticBranching:
    edges: frozenset
    roots: frozenset


def sort_key(x):
    """Total order over mixed ids (strings, ints, tuples of those)."""
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, (int, float)):
        return (0, x)
    return (1, str(x))


class _Indexed:
    def __init__(self, d: StaticDigraph):
        problems = d.validate()
        if problems:
            raise ValueError("; ".join(problems))
        self.d = d
        self.index = {v: i for i, v in enumerate(d.vertices)}
        self.n = len(d.vertices)
        self.tails = [self.index[u] for _, u, _ in d.edges]
        self.heads = [self.index[v] for _, _, v in d.edges]
        self.net = FlowNetwork(self.n, self.tails, self.heads)

    def root_indices(self, root_sets):
        out = []
        for i, roots in enumerate(root_sets, 1):
            if not roots:
                raise ValueError(f"root set {i} is empty")
            missing = [r for r in roots if r not in self.index]
            if missing:
                raise ValueError(f"root set {i} has undeclared vertices {missing!r}")
            out.append(frozenset(self.index[r] for r in roots))
        return out

    def feasible(self, idx_root_sets, alive=None) -> bool:
        # For each subfamily I only its union matters; keep the largest |I| per union.
        need = {}
        k = len(idx_root_sets)
        for size in range(1, k + 1):
            for fam in itertools.combinations(range(k), size):
                union = frozenset().union(*(idx_root_sets[i] for i in fam))
                if need.get(union, 0) < size:
                    need[union] = size
        covers = self.net.covers_all
        return all(covers(list(union), req, alive) for union, req in need.items())


def max_flow(d: StaticDigraph, sources, sink) -> int:
    """Maximum number of edge-disjoint paths from the source set to ``sink``."""
    if sink in set(sources):
        raise ValueError("sink must not be a source")
    ix = _Indexed(d)
    if sink not in ix.index:
        raise ValueError(f"unknown sink {sink!r}")
    return ix.net.max_flow([ix.index[s] for s in sources], ix.index[sink])


def edmonds_feasible(d: StaticDigraph, root_sets) -> bool:
    """Edmonds' cut condition checked through 2^k * |V| bounded max-flows."""
    if not root_sets:
        raise ValueError("need at least one root set")
    ix = _Indexed(d)
    return ix.feasible(ix.root_indices(root_sets))


def edmonds_construct(d: StaticDigraph, root_sets):
    """k edge-disjoint spanning branchings rooted at ``root_sets``, or None if infeasible.

    Branchings are grown one at a time.  An edge leaving the covered set is
    accepted only if the residual instance stays feasible, which Lovász's
    argument guarantees is always possible.
    """
    if not root_sets:
        raise ValueError("need at least one root set")
    ix = _Indexed(d)
    idx_roots = ix.root_indices(root_sets)
    alive = [True] * len(d.edges)
    if not ix.feasible(idx_roots, alive):
        return None
    # Scan in declaration order of (tail, head, edge) so the output is deterministic.
    order = sorted(range(len(d.edges)), key=lambda e: (ix.tails[e], ix.heads[e], e))
    result = []
    for i, roots in enumerate(idx_roots):
        covered = set(roots)
        chosen = []
        rest = idx_roots[i + 1 :]
        while len(covered) < ix.n:
            for e in order:
                if not alive[e] or ix.tails[e] not in covered or ix.heads[e] in covered:
                    continue
                alive[e] = False
                grown = frozenset(covered | {ix.heads[e]})
                if ix.feasible([grown] + rest, alive):
                    chosen.append(e)
                    covered.add(ix.heads[e])
                    break
                alive[e] = True
            else:
                raise RuntimeError("no admissible edge found; residual instance lost feasibility")
        result.append(
            StaticBranching(
                frozenset(d.edges[e][0] for e in chosen),
                frozenset(root_sets[i]),
            )
        )
    return result


def static_violation(d: StaticDigraph, branchings, root_sets) -> str | None:
    """First reason the branchings fail to be disjoint spanning branchings, or None."""
    emap = d.edge_map()
    vertices = set(d.vertices)
    if len(branchings) != len(root_sets):
        return "number of branchings differs from number of root sets"
    used = {}
    for i, (b, roots) in enumerate(zip(branchings, root_sets), 1):
        roots = set(roots)
        if set(b.roots) != roots:
            return f"branching {i}: root set mismatch"
        if not roots <= vertices:
            return f"branching {i}: root outside the digraph"
        parent = {}
        for eid in b.edges:
            if eid not in emap:
                return f"branching {i}: unknown edge {eid!r}"
            if eid in used:
                return f"edge {eid!r} used by branchings {used[eid]} and {i}"
            used[eid] = i
            u, v = emap[eid]
            if v in roots:
                return f"branching {i}: edge {eid!r} enters root {v!r}"
            if v in parent:
                return f"branching {i}: vertex {v!r} has in-degree 2"
            parent[v] = u
        for v in vertices - roots:
            if v not in parent:
                return f"branching {i}: vertex {v!r} not spanned"
        for v in parent:
            seen = {v}
            w = v
            while w in parent:
                w = parent[w]
                if w in seen:
                    return f"branching {i}: cycle through {w!r}"
                seen.add(w)
    return None


def verify_static(d: StaticDigraph, branchings, root_sets) -> bool:
    return static_violation(d, branchings, root_sets) is None
