"""Temporal digraphs, their temporal vertices/edges, snapshots and expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

TemporalVertex = tuple  # (vertex, time)
TemporalEdge = tuple  # (edge_id, departure, arrival)

SPANNING_MODES = ("temporal", "vertex")
DISJOINT_MODES = ("edge", "t-edge")


class InvalidInstance(ValueError):
    """Raised when an operation receives a temporal digraph that breaks its invariants."""


@dataclass(frozen=True)
class ProblemVariant:
    spanning: str = "temporal"
    disjoint: str = "t-edge"

    def __post_init__(self):
        if self.spanning not in SPANNING_MODES:
            raise ValueError(f"unknown spanning mode {self.spanning!r}")
        if self.disjoint not in DISJOINT_MODES:
            raise ValueError(f"unknown disjointness {self.disjoint!r}")

    def __str__(self):
        return f"{self.disjoint}-disjoint {self.spanning}-spanning"


@dataclass(frozen=True)
class StaticDigraph:
    """A directed multigraph; parallel edges are told apart by edge id."""

    vertices: tuple
    edges: tuple  # (edge_id, tail, head)

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable[tuple] = ()):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in edges))

    def validate(self) -> list[str]:
        problems = []
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            problems.append("duplicate vertex ids")
        seen = set()
        for eid, u, v in self.edges:
            if eid in seen:
                problems.append(f"duplicate edge id {eid!r}")
            seen.add(eid)
            if u not in vs or v not in vs:
                problems.append(f"edge {eid!r} has an undeclared endpoint")
        return problems

    def edge_map(self) -> dict:
        return {eid: (u, v) for eid, u, v in self.edges}


@dataclass(frozen=True)
class TemporalDigraph:
    """The triple (G, gamma, lambda).

    ``gamma`` maps each vertex to the sorted tuple of times it is active and
    ``lam`` maps each edge id to the sorted tuple of (departure, arrival) pairs.
    Vertices or edges missing from the maps are treated as never active.
    """

    vertices: tuple
    edges: tuple
    gamma: Mapping
    lam: Mapping

    def __init__(self, vertices, edges, gamma, lam):
        vertices = tuple(vertices)
        edges = tuple(tuple(e) for e in edges)
        g = {v: tuple(sorted(set(gamma.get(v, ())))) for v in vertices}
        for v in gamma:
            if v not in g:
                g[v] = tuple(sorted(set(gamma[v])))
        l = {e[0]: tuple(sorted(set(tuple(p) for p in lam.get(e[0], ())))) for e in edges}
        for eid in lam:
            if eid not in l:
                l[eid] = tuple(sorted(set(tuple(p) for p in lam[eid])))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "lam", l)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    @property
    def base(self) -> StaticDigraph:
        return StaticDigraph(self.vertices, self.edges)

    def edge_map(self) -> dict:
        return {eid: (u, v) for eid, u, v in self.edges}

    @property
    def lifetime(self) -> int | None:
        times = [t for ts in self.gamma.values() for t in ts]
        return max(times) if times else None

    def temporal_vertices(self) -> list:
        return [(v, t) for v in self.vertices for t in self.gamma[v]]

    def temporal_edges(self) -> list:
        return [(eid, t, s) for eid, _, _ in self.edges for t, s in self.lam[eid]]

    def is_active(self, v, t) -> bool:
        return t in self.gamma.get(v, ())

    def active_at(self, t) -> list:
        return [v for v in self.vertices if t in self.gamma[v]]

    def has_interval_activity(self) -> bool:
        """True iff every nonempty activity set is a run of consecutive integers."""
        for ts in self.gamma.values():
            if ts and ts[-1] - ts[0] + 1 != len(ts):
                return False
        return True


def validate(g: TemporalDigraph) -> list[str]:
    """Return every invariant violation of ``g``; an empty list means valid."""
    problems = []
    vs = set(g.vertices)
    if len(vs) != len(g.vertices):
        problems.append("duplicate vertex ids")
    for v in g.gamma:
        if v not in vs:
            problems.append(f"activity given for undeclared vertex {v!r}")
        for t in g.gamma[v]:
            if not isinstance(t, int) or t < 0:
                problems.append(f"vertex {v!r}: timestamp {t!r} is not a non-negative integer")
    emap = {}
    for e in g.edges:
        if len(e) != 3:
            problems.append(f"malformed edge {e!r}")
            continue
        eid, u, v = e
        if eid in emap:
            problems.append(f"duplicate edge id {eid!r}")
        emap[eid] = (u, v)
        for w in (u, v):
            if w not in vs:
                problems.append(f"edge {eid!r}: endpoint {w!r} is not a declared vertex")
    for eid, pairs in g.lam.items():
        if eid not in emap:
            if pairs:
                problems.append(f"appearances given for undeclared edge {eid!r}")
            continue
        u, v = emap[eid]
        for t, s in pairs:
            if t > s:
                problems.append(f"edge {eid!r}: pair ({t},{s}) departs after it arrives")
            if not g.is_active(u, t):
                problems.append(f"edge {eid!r}: tail {u!r} is not active at {t}")
            if not g.is_active(v, s):
                problems.append(f"edge {eid!r}: head {v!r} is not active at {s}")
    if g.vertices and g.lifetime is None:
        problems.append("no vertex is ever active, lifetime undefined")
    return problems


def ensure_valid(g: TemporalDigraph) -> None:
    # Instances are immutable, so a passing check is remembered on the object.
    if g.__dict__.get("_valid"):
        return
    problems = validate(g)
    if problems:
        raise InvalidInstance("; ".join(problems))
    object.__setattr__(g, "_valid", True)


def validate_roots(g: TemporalDigraph, root_sets) -> list[str]:
    problems = []
    for i, roots in enumerate(root_sets, 1):
        for v, t in roots:
            if not g.is_active(v, t):
                problems.append(f"root set {i}: ({v!r},{t}) is not a temporal vertex")
    return problems


@dataclass(frozen=True)
class ExpandedDigraph:
    """Nodes are temporal vertices; arcs are temporal edges plus waiting arcs.

    Waiting arc (v,t)->(v,t+1) is stored once in ``waiting`` and stands for
    ``multiplicity`` parallel copies.
    """

    nodes: tuple
    temporal_arcs: tuple  # ((eid, dep, arr), (u, dep), (v, arr))
    waiting: tuple  # (v, t) meaning (v,t)->(v,t+1)
    multiplicity: int = 0

    def arc_count(self) -> int:
        return len(self.temporal_arcs) + self.multiplicity * len(self.waiting)

    def as_static(self) -> StaticDigraph:
        """Static multigraph with arc ids ``("te", eid, dep, arr)`` and ``("wait", v, t, copy)``."""
        edges = [(("te",) + te, tail, head) for te, tail, head in self.temporal_arcs]
        for v, t in self.waiting:
            for c in range(self.multiplicity):
                edges.append((("wait", v, t, c), (v, t), (v, t + 1)))
        return StaticDigraph(self.nodes, edges)


def expand(g: TemporalDigraph, waiting_multiplicity: int = 0) -> ExpandedDigraph:
    ensure_valid(g)
    if waiting_multiplicity < 0:
        raise ValueError("waiting multiplicity must be non-negative")
    emap = g.edge_map()
    arcs = tuple(
        ((eid, t, s), (emap[eid][0], t), (emap[eid][1], s)) for eid, t, s in g.temporal_edges()
    )
    waiting = tuple(
        (v, t) for v in g.vertices for t in g.gamma[v] if g.is_active(v, t + 1)
    )
    return ExpandedDigraph(tuple(g.temporal_vertices()), arcs, waiting, waiting_multiplicity)


def snapshot(g: TemporalDigraph, t: int) -> StaticDigraph:
    """Vertices active at ``t`` and the edges having the same-time copy (t, t)."""
    ensure_valid(g)
    return StaticDigraph(
        g.active_at(t),
        [e for e in g.edges if (t, t) in g.lam[e[0]]],
    )


def arrival_graph(g: TemporalDigraph, j: int) -> StaticDigraph:
    """Edges with a copy arriving at ``j``, on vertices active at ``j`` plus their endpoints."""
    ensure_valid(g)
    edges = [e for e in g.edges if any(s == j for _, s in g.lam[e[0]])]
    touched = {w for _, u, v in edges for w in (u, v)}
    vertices = [v for v in g.vertices if g.is_active(v, j) or v in touched]
    return StaticDigraph(vertices, edges)
