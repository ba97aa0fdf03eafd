"""Temporal walks, walk multiplicity and verification of spanning branchings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .core import DISJOINT_MODES, SPANNING_MODES, InvalidInstance, TemporalDigraph

ZERO, ONE, MANY = "zero", "one", "many"


@dataclass(frozen=True)
class TemporalBranching:
    """A temporal subdigraph of ``host`` together with its root set."""

    host: TemporalDigraph
    gamma_sub: Mapping
    lam_sub: Mapping
    roots: frozenset

    def __init__(self, host, gamma_sub, lam_sub, roots):
        object.__setattr__(self, "host", host)
        object.__setattr__(
            self, "gamma_sub", {v: tuple(sorted(set(ts))) for v, ts in gamma_sub.items() if ts}
        )
        object.__setattr__(
            self,
            "lam_sub",
            {e: tuple(sorted(set(tuple(p) for p in ps))) for e, ps in lam_sub.items() if ps},
        )
        object.__setattr__(self, "roots", frozenset(tuple(r) for r in roots))

    def __hash__(self):
        return hash((tuple(sorted(self.lam_sub.items(), key=repr)), self.roots))

    def temporal_edges(self) -> list:
        return [(e, t, s) for e, ps in self.lam_sub.items() for t, s in ps]

    def nodes(self) -> list:
        return [(v, t) for v, ts in self.gamma_sub.items() for t in ts]

    def used_edges(self) -> set:
        return set(self.lam_sub)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def branching_violations(b: TemporalBranching) -> list[str]:
    host = b.host
    emap = host.edge_map()
    problems = []
    for v, ts in b.gamma_sub.items():
        extra = set(ts) - set(host.gamma.get(v, ()))
        if extra:
            problems.append(f"vertex {v!r} active at {sorted(extra)} only in the branching")
    for e, ps in b.lam_sub.items():
        if e not in emap:
            problems.append(f"unknown edge {e!r}")
            continue
        extra = set(ps) - set(host.lam[e])
        if extra:
            problems.append(f"edge {e!r} copies {sorted(extra)} not in the host")
        u, v = emap[e]
        for t, s in ps:
            if t not in b.gamma_sub.get(u, ()) or s not in b.gamma_sub.get(v, ()):
                problems.append(f"edge {e!r} copy ({t},{s}) has an endpoint outside the branching")
    for v, t in b.roots:
        if t not in b.gamma_sub.get(v, ()):
            problems.append(f"root ({v!r},{t}) is not a temporal vertex of the branching")
    return problems


def _ensure(b: TemporalBranching):
    problems = branching_violations(b)
    if problems:
        raise InvalidInstance("; ".join(problems))


def _arcs(b: TemporalBranching):
    """Arcs of the expanded digraph of ``b`` as (tail, head, is_temporal)."""
    emap = b.host.edge_map()
    arcs = []
    for e, ps in b.lam_sub.items():
        u, v = emap[e]
        for t, s in ps:
            arcs.append(((u, t), (v, s), True))
    for v, ts in b.gamma_sub.items():
        present = set(ts)
        for t in ts:
            if t + 1 in present:
                arcs.append(((v, t), (v, t + 1), False))
    return arcs


def _reachable(nodes, arcs, roots):
    out = {x: [] for x in nodes}
    for tail, head, _ in arcs:
        out[tail].append(head)
    seen = set(roots)
    queue = deque(roots)
    while queue:
        x = queue.popleft()
        for y in out[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def reachable(b: TemporalBranching) -> set:
    """Temporal vertices of ``b`` reachable from its roots (roots included)."""
    _ensure(b)
    return _reachable(b.nodes(), _arcs(b), b.roots)


def walk_counts(b: TemporalBranching) -> dict:
    """Number of root-to-node walks for every node of ``b``, capped at 2."""
    _ensure(b)
    return _walk_counts(b)


def _walk_counts(b):
    nodes = b.nodes()
    arcs = _arcs(b)
    reach = _reachable(nodes, arcs, b.roots)
    indeg = {x: 0 for x in reach}
    out = {x: [] for x in reach}
    for tail, head, _ in arcs:
        if tail in reach:
            indeg[head] += 1
            out[tail].append(head)
    count = {x: (1 if x in b.roots else 0) for x in reach}
    queue = deque(x for x in reach if indeg[x] == 0)
    done = set()
    while queue:
        x = queue.popleft()
        done.add(x)
        for y in out[x]:
            count[y] = min(2, count[y] + count[x])
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    result = {x: 0 for x in nodes}
    for x in reach:
        # Nodes never released lie on or behind a reachable cycle.
        result[x] = count[x] if x in done else 2
    return result


def walk_count(b: TemporalBranching, target) -> str:
    c = walk_counts(b).get(tuple(target), 0)
    return (ZERO, ONE, MANY)[c]


def verify_branching(b: TemporalBranching, spanning: str) -> Verdict:
    if spanning not in SPANNING_MODES:
        raise ValueError(f"unknown spanning mode {spanning!r}")
    _ensure(b)
    for r in b.roots:
        if not b.host.is_active(*r):
            raise InvalidInstance(f"root {r!r} is not a temporal vertex of the host")
    if spanning == "temporal":
        counts = _walk_counts(b)
        for x in b.host.temporal_vertices():
            c = counts.get(x, 0)
            if c != 1:
                return Verdict(False, f"temporal vertex {x!r} has {(ZERO, ONE, MANY)[c]} walks")
        return Verdict(True)

    nodes = b.nodes()
    arcs = _arcs(b)
    reach = _reachable(nodes, arcs, b.roots)
    incoming = {x: (1 if x in b.roots else 0) for x in reach}
    events = {v: 0 for v in b.host.vertices}
    for x in b.roots:
        events[x[0]] += 1
    for tail, head, temporal in arcs:
        if tail in reach:
            incoming[head] += 1
            if temporal:
                events[head[0]] += 1
    for x in sorted(reach, key=lambda n: (n[1], repr(n[0]))):
        if incoming[x] != 1:
            return Verdict(False, f"temporal vertex {x!r} is entered {incoming[x]} times")
    # With every reachable in-count equal to 1, a reachable cycle is impossible.
    for v in b.host.vertices:
        if events[v] != 1:
            return Verdict(False, f"vertex {v!r} is reached {events[v]} times")
    return Verdict(True)


def check_disjoint(bs, disjoint: str) -> Verdict:
    if disjoint not in DISJOINT_MODES:
        raise ValueError(f"unknown disjointness {disjoint!r}")
    if bs:
        host = bs[0].host
        for b in bs[1:]:
            if b.host is not host and b.host != host:
                raise InvalidInstance("branchings have different hosts")
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            if disjoint == "t-edge":
                for e, ps in bs[i].lam_sub.items():
                    common = set(ps) & set(bs[j].lam_sub.get(e, ()))
                    if common:
                        t, s = min(common)
                        return Verdict(
                            False, f"branchings {i + 1} and {j + 1} share copy ({t},{s}) of {e!r}"
                        )
            else:
                common = bs[i].used_edges() & bs[j].used_edges()
                if common:
                    e = min(common, key=repr)
                    return Verdict(False, f"branchings {i + 1} and {j + 1} share edge {e!r}")
    return Verdict(True)
