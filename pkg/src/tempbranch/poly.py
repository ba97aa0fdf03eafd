"""Polynomial solvers for the tractable variants and the variant dispatcher.

Complexity by variant (k fixed):

=====================  ==============  ===================================
spanning / disjoint    t-edge          edge
=====================  ==============  ===================================
temporal               polynomial      NP-complete; polynomial when every
                                       activity set is one interval
vertex                 NP-complete     NP-complete
=====================  ==============  ===================================
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .core import (
    InvalidInstance,
    ProblemVariant,
    StaticDigraph,
    TemporalDigraph,
    ensure_valid,
    expand,
    validate_roots,
)
from .reach import TemporalBranching
from .static_branchings import edmonds_construct

log = logging.getLogger(__name__)


class CapabilityError(ValueError):
    """A polynomial method was requested for a variant that has none."""


class PreconditionError(ValueError):
    pass


def _check_roots(g, root_sets):
    ensure_valid(g)
    problems = validate_roots(g, root_sets)
    if problems:
        raise InvalidInstance("; ".join(problems))


def waiting_root_conflict(g: TemporalDigraph, root_sets):
    """First (index, root) whose vertex is also active one step earlier.

    Such a root is reached both by its own zero-length walk and by waiting,
    so no temporal-spanning branching can have it as a root.
    """
    for i, roots in enumerate(root_sets):
        for v, t in sorted(roots, key=repr):
            if g.is_active(v, t - 1):
                return i, (v, t)
    return None


def _trivial(g, root_sets):
    """Handle empty root sets; returns (decided, result)."""
    k = len(root_sets)
    if k == 0:
        return True, []
    if not g.temporal_vertices():
        return True, [TemporalBranching(g, {}, {}, ()) for _ in range(k)]
    if any(not r for r in root_sets):
        return True, None
    return False, None


def solve_tedge_temporal(g: TemporalDigraph, root_sets):
    """k t-edge-disjoint temporal-spanning branchings, or None.

    Works on the time-expanded digraph with k copies of every waiting arc and
    maps a static Edmonds packing back.  Temporal arcs entering a temporal
    vertex that has a waiting predecessor are dropped on the way back, since
    in the temporal subdigraph that vertex is already reached by waiting.
    """
    _check_roots(g, root_sets)
    decided, result = _trivial(g, root_sets)
    if decided:
        return result
    conflict = waiting_root_conflict(g, root_sets)
    if conflict:
        log.debug("root %r of set %d is also reached by waiting", conflict[1], conflict[0] + 1)
        return None
    k = len(root_sets)
    h = expand(g, k).as_static()
    packing = edmonds_construct(h, [set(r) for r in root_sets])
    if packing is None:
        return None
    out = []
    for sb, roots in zip(packing, root_sets):
        lam_sub = {}
        for arc in sb.edges:
            if arc[0] != "te":
                continue
            _, eid, t, s = arc
            head = g.edge_map()[eid][1]
            if g.is_active(head, s - 1):
                continue
            lam_sub.setdefault(eid, []).append((t, s))
        out.append(TemporalBranching(g, dict(g.gamma), lam_sub, roots))
    return out


@dataclass(frozen=True)
class SnapshotDecomposition:
    """Per-arrival-time static digraphs with their root sets."""

    times: tuple
    graphs: tuple
    root_sets: tuple  # per time, k vertex sets
    common_wait_roots: tuple


def decompose(g: TemporalDigraph, root_sets, prune: bool = True) -> SnapshotDecomposition:
    """Arrival-time digraphs G_j with roots R^j_i.

    Besides the roots at j and the vertices already active at j-1, tails that
    are not active at j are roots of every branching: they were reached
    earlier.  With ``prune`` edges entering a vertex active at j-1 are dropped.
    """
    lifetime = g.lifetime
    times, graphs, rsets, waits = [], [], [], []
    if lifetime is None:
        return SnapshotDecomposition((), (), (), ())
    for j in range(0, lifetime + 1):
        active = set(g.active_at(j))
        wait = frozenset(u for u in active if g.is_active(u, j - 1))
        edges = [
            (eid, u, v)
            for eid, u, v in g.edges
            if any(s == j for _, s in g.lam[eid]) and not (prune and v in wait)
        ]
        tails = {u for _, u, _ in edges}
        vertices = [v for v in g.vertices if v in active or v in tails]
        if not vertices:
            continue
        inactive_tails = tails - active
        times.append(j)
        graphs.append(StaticDigraph(vertices, edges))
        waits.append(wait)
        rsets.append(
            tuple(
                frozenset({v for v, t in roots if t == j} | wait | inactive_tails)
                for roots in root_sets
            )
        )
    return SnapshotDecomposition(tuple(times), tuple(graphs), tuple(rsets), tuple(waits))


def interval_violation(g: TemporalDigraph):
    for v in g.vertices:
        ts = g.gamma[v]
        if ts and ts[-1] - ts[0] + 1 != len(ts):
            return v
    return None


def solve_edge_temporal_interval(g: TemporalDigraph, root_sets):
    """k edge-disjoint temporal-spanning branchings when activity sets are intervals."""
    _check_roots(g, root_sets)
    bad = interval_violation(g)
    if bad is not None:
        raise PreconditionError(f"activity of vertex {bad!r} is not one interval: {g.gamma[bad]}")
    decided, result = _trivial(g, root_sets)
    if decided:
        return result
    if waiting_root_conflict(g, root_sets):
        return None
    k = len(root_sets)
    lam_subs = [dict() for _ in range(k)]
    dec = decompose(g, root_sets)
    for j, gj, rj in zip(dec.times, dec.graphs, dec.root_sets):
        if any(not r for r in rj):
            return None
        packing = edmonds_construct(gj, list(rj))
        if packing is None:
            log.debug("arrival digraph at time %d violates the cut condition", j)
            return None
        for i, sb in enumerate(packing):
            for eid in sb.edges:
                copy = min(p for p in g.lam[eid] if p[1] == j)
                lam_subs[i].setdefault(eid, []).append(copy)
    return [TemporalBranching(g, dict(g.gamma), lam_subs[i], root_sets[i]) for i in range(k)]


def solve(g: TemporalDigraph, root_sets, variant: ProblemVariant, method: str = "auto"):
    """Route to the right solver.  Returns k branchings or None when infeasible."""
    from .exact import solve_exact

    if method not in ("auto", "poly", "exact"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact":
        return solve_exact(g, root_sets, variant)
    if variant.spanning == "temporal" and variant.disjoint == "t-edge":
        return solve_tedge_temporal(g, root_sets)
    if variant.spanning == "temporal" and variant.disjoint == "edge":
        if interval_violation(g) is None:
            return solve_edge_temporal_interval(g, root_sets)
        if method == "poly":
            raise CapabilityError(
                "edge-disjoint temporal-spanning is NP-complete unless every "
                "activity set is one interval"
            )
        return solve_exact(g, root_sets, variant)
    if method == "poly":
        raise CapabilityError(f"{variant} branchings are NP-complete; no polynomial method")
    return solve_exact(g, root_sets, variant)
