"""Seeded random temporal digraphs."""

from __future__ import annotations

import random
import string

from .core import TemporalDigraph


def vertex_names(n):
    letters = string.ascii_lowercase
    if n <= len(letters):
        return list(letters[:n])
    return [f"v{i}" for i in range(n)]


def random_activity(rng, lifetime, interval, first=1, density=0.6):
    times = list(range(first, lifetime + 1))
    if not times:
        return []
    if interval:
        a = rng.choice(times)
        b = rng.choice(times)
        a, b = min(a, b), max(a, b)
        return list(range(a, b + 1))
    ts = [t for t in times if rng.random() < density]
    return ts or [rng.choice(times)]


def random_instance(
    rng: random.Random,
    vertices: int,
    lifetime: int,
    edge_prob: float,
    *,
    interval: bool = False,
    k: int = 2,
    max_temporal_edges: int | None = None,
    parallel_prob: float = 0.0,
    root_prob: float = 0.5,
    stray_root_prob: float = 0.0,
    first_time: int = 1,
):
    """A random valid temporal digraph with ``k`` root sets.

    Every active-compatible pair (u,t),(v,t') with u != v and t <= t' becomes a
    temporal edge with probability ``edge_prob``; with ``parallel_prob`` a copy
    is put on a second, parallel base edge instead.  Root sets draw from the
    first temporal vertex of each activity run, plus any temporal vertex with
    ``stray_root_prob``.
    """
    names = vertex_names(vertices)
    gamma = {v: random_activity(rng, lifetime, interval, first_time) for v in names}
    copies = []
    for u in names:
        for v in names:
            if u == v:
                continue
            for t in gamma[u]:
                for s in gamma[v]:
                    if t <= s and rng.random() < edge_prob:
                        par = rng.random() < parallel_prob
                        copies.append((u, v, 2 if par else 1, t, s))
    if max_temporal_edges is not None and len(copies) > max_temporal_edges:
        copies = sorted(rng.sample(copies, max_temporal_edges))
    edges, lam, ids = [], {}, {}
    for u, v, which, t, s in copies:
        key = (u, v, which)
        if key not in ids:
            ids[key] = f"e{len(ids)}"
            edges.append((ids[key], u, v))
        lam.setdefault(ids[key], []).append((t, s))
    g = TemporalDigraph(names, edges, gamma, lam)
    starts = [(v, t) for v in names for t in gamma[v] if t - 1 not in gamma[v]]
    everything = g.temporal_vertices()
    root_sets = []
    for _ in range(k):
        roots = {x for x in starts if rng.random() < root_prob}
        roots |= {x for x in everything if rng.random() < stray_root_prob}
        if not roots and everything:
            roots.add(rng.choice(starts))
        root_sets.append(roots)
    return g, root_sets
