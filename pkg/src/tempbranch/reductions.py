"""Instance transformations: single-source and root lifting, plus the
NP-hardness gadgets from 2-WDP and NAE-3-SAT with their decoders and the
brute-force solvers for the source problems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    InvalidInstance,
    ProblemVariant,
    StaticDigraph,
    TemporalDigraph,
    ensure_valid,
)
from .exact import ScaleError
from .reach import TemporalBranching, check_disjoint, verify_branching

NAE_MAX_VARIABLES = 20
WDP_MAX_EDGES = 16


@dataclass(frozen=True)
class CnfFormula:
    """Positive 3-CNF: every clause lists three variable indices in 1..n."""

    num_variables: int
    clauses: tuple

    def __init__(self, num_variables: int, clauses):
        clauses = tuple(tuple(c) for c in clauses)
        for j, c in enumerate(clauses, 1):
            if len(c) != 3:
                raise ValueError(f"clause {j} has {len(c)} literals, expected 3")
            for lit in c:
                if not isinstance(lit, int) or lit < 1 or lit > num_variables:
                    raise ValueError(f"clause {j}: literal {lit!r} is not a variable in 1..{num_variables}")
        object.__setattr__(self, "num_variables", num_variables)
        object.__setattr__(self, "clauses", clauses)


def is_nae(phi: CnfFormula, assignment) -> bool:
    """Every clause has a true and a false literal; ``assignment[i-1]`` is x_i."""
    return all(len({assignment[i - 1] for i in c}) == 2 for c in phi.clauses)


@dataclass(frozen=True)
class WdpInstance:
    digraph: StaticDigraph
    requests: tuple

    def __init__(self, digraph: StaticDigraph, requests):
        requests = tuple(tuple(r) for r in requests)
        vs = set(digraph.vertices)
        for s, t in requests:
            if s not in vs or t not in vs:
                raise ValueError(f"request ({s!r},{t!r}) uses an undeclared vertex")
        object.__setattr__(self, "digraph", digraph)
        object.__setattr__(self, "requests", requests)


@dataclass(frozen=True)
class ReductionOutput:
    instance: TemporalDigraph
    root_sets: tuple
    tag: str
    source: object = None
    info: dict = field(default_factory=dict, compare=False)

    @property
    def variant(self) -> ProblemVariant | None:
        return {
            "wdp": ProblemVariant("temporal", "edge"),
            "nae-star": ProblemVariant("temporal", "edge"),
            "nae-vertex": ProblemVariant("vertex", "edge"),
        }.get(self.tag)


def _fresh(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


# --- root-set transformations -------------------------------------------------


def to_single_source(g: TemporalDigraph, root_sets) -> ReductionOutput:
    """Replace k root sets by one shared root (r, 0).

    Adds r_i active at 0 with an edge r_i -> u carrying (0, t) for every root
    (u, t) of set i, and k parallel edges r -> r_i at (0, 0) so each of the k
    branchings can reach r_i on its own copy.  If 0 is already used, every
    time is shifted up by one first.
    """
    ensure_valid(g)
    k = len(root_sets)
    shift = 1 if any(0 in ts for ts in g.gamma.values()) else 0
    taken = set(g.vertices)
    etaken = {e[0] for e in g.edges}
    gamma = {v: [t + shift for t in g.gamma[v]] for v in g.vertices}
    lam = {e: [(t + shift, s + shift) for t, s in g.lam[e]] for e, _, _ in g.edges}
    vertices = list(g.vertices)
    edges = list(g.edges)
    r = _fresh("r", taken)
    vertices.append(r)
    gamma[r] = [0]
    hubs = []
    for i, roots in enumerate(root_sets, 1):
        ri = _fresh(f"r{i}", taken)
        hubs.append(ri)
        vertices.append(ri)
        gamma[ri] = [0]
        per_vertex = {}
        for u, t in roots:
            per_vertex.setdefault(u, []).append((0, t + shift))
        for u in sorted(per_vertex, key=lambda x: vertices.index(x)):
            eid = _fresh(f"{ri}>{u}", etaken)
            edges.append((eid, ri, u))
            lam[eid] = per_vertex[u]
        for c in range(1, k + 1):
            eid = _fresh(f"{r}>{ri}#{c}", etaken)
            edges.append((eid, r, ri))
            lam[eid] = [(0, 0)]
    out = TemporalDigraph(vertices, edges, gamma, lam)
    return ReductionOutput(
        out,
        tuple(frozenset({(r, 0)}) for _ in range(k)),
        "single-source",
        source=(g, tuple(root_sets)),
        info={"shift": shift, "root": r, "hubs": hubs},
    )


def lift_roots(g: TemporalDigraph, root_sets, spanning: str = "temporal"):
    """Append a root set that admits an edgeless branching.

    For temporal spanning this is the first temporal vertex of every run of
    consecutive activity (all of V_T when no vertex is active at two
    consecutive times); for vertex spanning it is the first appearance of
    every vertex.
    """
    ensure_valid(g)
    if spanning == "temporal":
        extra = {(v, t) for v in g.vertices for t in g.gamma[v] if not g.is_active(v, t - 1)}
    elif spanning == "vertex":
        extra = {(v, g.gamma[v][0]) for v in g.vertices if g.gamma[v]}
    else:
        raise ValueError(f"unknown spanning mode {spanning!r}")
    return list(root_sets) + [frozenset(extra)]


# --- 2-WDP ---------------------------------------------------------------------


def is_normalized(w: WdpInstance) -> bool:
    if len(w.requests) != 2:
        return False
    (s1, t1), (s2, t2) = w.requests
    if len({s1, t1, s2, t2}) != 4:
        return False
    for _, u, v in w.digraph.edges:
        if v in (s1, s2) or u in (t1, t2):
            return False
    return True


def normalize_wdp(w: WdpInstance) -> WdpInstance:
    """Make sources sources, sinks sinks and all four endpoints distinct.

    Offending endpoints get a fresh pendant vertex: s' -> s for a source,
    t -> t' for a sink.  Answers are preserved.
    """
    if len(w.requests) != 2:
        raise ValueError("normalization is defined for two requests")
    if is_normalized(w):
        return w
    d = w.digraph
    endpoints = [p for req in w.requests for p in req]
    has_in = {v for _, _, v in d.edges}
    has_out = {u for _, u, _ in d.edges}
    taken = set(d.vertices)
    etaken = {e[0] for e in d.edges}
    vertices = list(d.vertices)
    edges = list(d.edges)
    requests = []
    for s, t in w.requests:
        if s in has_in or endpoints.count(s) > 1:
            s2 = _fresh(f"{s}'", taken)
            vertices.append(s2)
            edges.append((_fresh(f"{s2}>{s}", etaken), s2, s))
            s = s2
        if t in has_out or endpoints.count(t) > 1:
            t2 = _fresh(f"{t}'", taken)
            vertices.append(t2)
            edges.append((_fresh(f"{t}>{t2}", etaken), t, t2))
            t = t2
        requests.append((s, t))
    return WdpInstance(StaticDigraph(vertices, edges), requests)


def reduce_wdp(w: WdpInstance) -> ReductionOutput:
    """Lifetime-3 instance with 2 edge-disjoint temporal-spanning branchings iff 2-WDP is solvable."""
    if not is_normalized(w):
        raise ValueError("WDP instance must be normalized (see normalize_wdp)")
    d = w.digraph
    (s1, t1), (s2, t2) = w.requests
    V = list(d.vertices)
    taken = set(V)
    etaken = {e[0] for e in d.edges}
    x = _fresh("X", taken)
    y = _fresh("Y", taken)
    side1 = [v for v in V if v not in (s2, t2)]
    side3 = [v for v in V if v not in (s1, t1)]
    gamma = {v: [] for v in V}
    for v in side1:
        gamma[v].append(1)
    for v in side3:
        gamma[v].append(3)
    gamma[x] = [1]
    gamma[y] = [3]
    edges, lam, origin = [], {}, {}
    in1, in3 = set(side1), set(side3)
    for eid, u, v in d.edges:
        pairs = []
        if u in in1 and v in in1:
            pairs.append((1, 1))
        if u in in3 and v in in3:
            pairs.append((3, 3))
        if pairs:
            edges.append((eid, u, v))
            lam[eid] = pairs
            origin[eid] = eid

    def add(tail, head, t):
        eid = _fresh(f"{tail}>{head}", etaken)
        edges.append((eid, tail, head))
        lam[eid] = [(t, t)]

    for v in side1:
        add(x, v, 1)
    for v in side1 + [x]:
        if v not in (s1, t1):
            add(t1, v, 1)
    for v in side3:
        add(y, v, 3)
    for v in side3 + [y]:
        if v not in (s2, t2):
            add(t2, v, 3)
    g = TemporalDigraph(V + [x, y], edges, gamma, lam)
    roots = (frozenset({(s1, 1), (y, 3)}), frozenset({(s2, 3), (x, 1)}))
    return ReductionOutput(g, roots, "wdp", source=w, info={"x": x, "y": y, "origin": origin})


def _require_solution(output: ReductionOutput, branchings, variant: ProblemVariant):
    if len(branchings) != len(output.root_sets):
        raise InvalidInstance("wrong number of branchings")
    for i, (b, roots) in enumerate(zip(branchings, output.root_sets), 1):
        if b.roots != frozenset(roots):
            raise InvalidInstance(f"branching {i} is not rooted at root set {i}")
        verdict = verify_branching(b, variant.spanning)
        if not verdict:
            raise InvalidInstance(f"branching {i}: {verdict.reason}")
    verdict = check_disjoint(list(branchings), variant.disjoint)
    if not verdict:
        raise InvalidInstance(verdict.reason)


def _path_back(g, b, start, end, t):
    emap = g.edge_map()
    parent = {}
    for e, ps in b.lam_sub.items():
        for dep, arr in ps:
            if dep == arr == t:
                parent[emap[e][1]] = (e, emap[e][0])
    path = []
    v = end
    while v != start:
        e, v = parent[v]
        path.append(e)
    return path[::-1]


def decode_paths(output: ReductionOutput, branchings):
    """Edge-id paths s1 -> t1 and s2 -> t2 in the source digraph."""
    if output.tag != "wdp":
        raise ValueError("not a 2-WDP reduction")
    _require_solution(output, branchings, ProblemVariant("temporal", "edge"))
    (s1, t1), (s2, t2) = output.source.requests
    g = output.instance
    p1 = _path_back(g, branchings[0], s1, t1, 1)
    p2 = _path_back(g, branchings[1], s2, t2, 3)
    origin = output.info["origin"]
    return [origin[e] for e in p1], [origin[e] for e in p2]


def wdp_witness(output: ReductionOutput, p1, p2):
    """Branchings built from two edge-disjoint request paths (given as edge ids)."""
    g = output.instance
    w = output.source
    (s1, t1), (s2, t2) = w.requests
    x, y = output.info["x"], output.info["y"]
    emap = g.edge_map()
    V = list(w.digraph.vertices)
    by_pair = {}
    for eid, u, v in g.edges:
        if eid not in output.info["origin"]:
            by_pair[(u, v)] = eid

    def on_path(path, start):
        verts = {start}
        for e in path:
            verts.add(emap[e][1])
        return verts

    lam1 = {e: [(1, 1)] for e in p1}
    for v in V:
        if v not in (s1, t1):
            lam1.setdefault(by_pair[(y, v)], []).append((3, 3))
    covered = on_path(p1, s1)
    for v in V + [x]:
        if v not in covered and v not in (s2, t2):
            lam1.setdefault(by_pair[(t1, v)], []).append((1, 1))
    lam2 = {e: [(3, 3)] for e in p2}
    for v in V:
        if v not in (s2, t2):
            lam2.setdefault(by_pair[(x, v)], []).append((1, 1))
    covered = on_path(p2, s2)
    for v in V + [y]:
        if v not in covered and v not in (s1, t1):
            lam2.setdefault(by_pair[(t2, v)], []).append((3, 3))
    return [
        TemporalBranching(g, g.gamma, lam1, output.root_sets[0]),
        TemporalBranching(g, g.gamma, lam2, output.root_sets[1]),
    ]


def _simple_paths(d: StaticDigraph, s, t):
    out = {}
    for eid, u, v in d.edges:
        out.setdefault(u, []).append((eid, v))
    paths = []

    def walk(v, seen, path):
        if v == t:
            paths.append(list(path))
            return
        for eid, w in out.get(v, ()):
            if w not in seen:
                seen.add(w)
                path.append(eid)
                walk(w, seen, path)
                path.pop()
                seen.discard(w)

    walk(s, {s}, [])
    return paths


def solve_wdp_bruteforce(w: WdpInstance, max_edges=WDP_MAX_EDGES):
    """Pairwise edge-disjoint request paths by exhaustive enumeration, or None."""
    if len(w.digraph.edges) > max_edges:
        raise ScaleError(f"{len(w.digraph.edges)} edges exceed the brute-force limit of {max_edges}")
    options = [_simple_paths(w.digraph, s, t) for s, t in w.requests]
    for combo in itertools.product(*options):
        used = [e for p in combo for e in p]
        if len(used) == len(set(used)):
            return [list(p) for p in combo]
    return None


# --- NAE-3-SAT -----------------------------------------------------------------


def solve_nae3sat_bruteforce(phi: CnfFormula, max_variables=NAE_MAX_VARIABLES):
    """First not-all-equal assignment in lexicographic order (False < True), or None."""
    if phi.num_variables > max_variables:
        raise ScaleError(f"{phi.num_variables} variables exceed the brute-force limit of {max_variables}")
    for bits in itertools.product((False, True), repeat=phi.num_variables):
        if is_nae(phi, bits):
            return bits
    return None


def _var(i):
    return f"x#{i}"


def reduce_nae3sat_star(phi: CnfFormula) -> ReductionOutput:
    """Star-shaped instance, one constant-size snapshot per variable and clause.

    Odd time 2i-1 carries x_i -> T and xbar_i -> T; odd time 2(n+j)-1 carries
    the three literal edges of clause j; even times are empty.  Both root sets
    are all non-T temporal vertices.
    """
    n, m = phi.num_variables, len(phi.clauses)
    gamma = {"T": [2 * i - 1 for i in range(1, n + m + 1)]}
    lam = {}
    vertices = ["T"]
    edges = []
    for i in range(1, n + 1):
        for name in (_var(i), f"xbar#{i}"):
            vertices.append(name)
            gamma[name] = [2 * i - 1]
            eid = f"{name}>T"
            edges.append((eid, name, "T"))
            lam[eid] = [(2 * i - 1, 2 * i - 1)]
    for j, clause in enumerate(phi.clauses, 1):
        t = 2 * (n + j) - 1
        for lit in set(clause):
            gamma[_var(lit)].append(t)
            lam[f"{_var(lit)}>T"].append((t, t))
    g = TemporalDigraph(vertices, edges, gamma, lam)
    roots = frozenset(x for x in g.temporal_vertices() if x[0] != "T")
    return ReductionOutput(g, (roots, roots), "nae-star", source=phi)


def reduce_nae3sat_vertex(phi: CnfFormula) -> ReductionOutput:
    """Lifetime-2 DAG whose vertex-spanning branchings encode NAE assignments.

    Time 1 holds the variable gadgets x_i -> {T_i, F_i} -> a_i, the clause
    edges T_i -> c_j for each variable of clause j, and g, r -> x_i.  Time 2
    holds g, r and every T_i, F_i with all edges from {g, r} into them.
    """
    n = phi.num_variables
    vertices = ["g", "r"]
    gamma = {"g": [1, 2], "r": [1, 2]}
    edges, lam = [], {}

    def add(tail, head, t):
        eid = f"{tail}>{head}"
        edges.append((eid, tail, head))
        lam[eid] = [(t, t)]

    for i in range(1, n + 1):
        x, T, F, a = _var(i), f"T#{i}", f"F#{i}", f"a#{i}"
        vertices += [x, T, F, a]
        gamma.update({x: [1], T: [1, 2], F: [1, 2], a: [1]})
    for j in range(1, len(phi.clauses) + 1):
        vertices.append(f"c#{j}")
        gamma[f"c#{j}"] = [1]
    for i in range(1, n + 1):
        x, T, F, a = _var(i), f"T#{i}", f"F#{i}", f"a#{i}"
        add(x, T, 1)
        add(x, F, 1)
        add(T, a, 1)
        add(F, a, 1)
    for j, clause in enumerate(phi.clauses, 1):
        for lit in sorted(set(clause)):
            add(f"T#{lit}", f"c#{j}", 1)
    for i in range(1, n + 1):
        add("g", _var(i), 1)
        add("r", _var(i), 1)
    for i in range(1, n + 1):
        for src in ("g", "r"):
            add(src, f"T#{i}", 2)
            add(src, f"F#{i}", 2)
    g = TemporalDigraph(vertices, edges, gamma, lam)
    roots = frozenset({("g", 1), ("r", 1)})
    return ReductionOutput(g, (roots, roots), "nae-vertex", source=phi)


def nae_vertex_witness(output: ReductionOutput, assignment):
    """Branchings built from a NAE assignment; branching 1 owns g's edges."""
    phi = output.source
    g = output.instance
    lams = ({}, {})
    reached = (set(), set())
    for i in range(1, phi.num_variables + 1):
        x, T, F, a = _var(i), f"T#{i}", f"F#{i}", f"a#{i}"
        for b, src in enumerate(("g", "r")):
            # branching 1 takes the T side of true variables, branching 2 of false ones
            via, other = (T, F) if assignment[i - 1] == (b == 0) else (F, T)
            lam = lams[b]
            for eid in (f"{src}>{x}", f"{x}>{via}", f"{via}>{a}"):
                lam[eid] = [(1, 1)]
            lam[f"{src}>{other}"] = [(2, 2)]
            if via == T:
                for j, clause in enumerate(phi.clauses, 1):
                    if i in clause and j not in reached[b]:
                        reached[b].add(j)
                        lam[f"{T}>c#{j}"] = [(1, 1)]
    out = []
    for b in range(2):
        lam = lams[b]
        gamma = {}
        for eid, ps in lam.items():
            u, v = g.edge_map()[eid]
            for t, s in ps:
                gamma.setdefault(u, set()).add(t)
                gamma.setdefault(v, set()).add(s)
        for v, t in output.root_sets[b]:
            gamma.setdefault(v, set()).add(t)
        for src in ("g", "r"):
            # waiting from (src, 1) to (src, 2) when a time-2 edge leaves src
            if 2 in gamma.get(src, ()):
                gamma[src].add(1)
        out.append(TemporalBranching(g, gamma, lam, output.root_sets[b]))
    return out


def nae_star_witness(output: ReductionOutput, assignment):
    phi = output.source
    g = output.instance
    n = phi.num_variables
    lams = ({}, {})
    for i in range(1, n + 1):
        t = 2 * i - 1
        true_side = f"{_var(i)}>T"
        false_side = f"xbar#{i}>T"
        first, second = (true_side, false_side) if assignment[i - 1] else (false_side, true_side)
        lams[0][first] = [(t, t)]
        lams[1][second] = [(t, t)]
    for j, clause in enumerate(phi.clauses, 1):
        t = 2 * (n + j) - 1
        trues = [i for i in clause if assignment[i - 1]]
        falses = [i for i in clause if not assignment[i - 1]]
        if not trues or not falses:
            raise ValueError("assignment is not NAE")
        lams[0][f"{_var(trues[0])}>T"].append((t, t))
        lams[1][f"{_var(falses[0])}>T"].append((t, t))
    return [TemporalBranching(g, g.gamma, lams[b], output.root_sets[b]) for b in range(2)]


def decode_assignment(output: ReductionOutput, branchings):
    """Truth assignment read off branching 1; NAE for the source formula."""
    phi = output.source
    if output.tag == "nae-vertex":
        _require_solution(output, branchings, ProblemVariant("vertex", "t-edge"))
        return tuple(
            f"{_var(i)}>T#{i}" in branchings[0].lam_sub for i in range(1, phi.num_variables + 1)
        )
    if output.tag == "nae-star":
        _require_solution(output, branchings, ProblemVariant("temporal", "edge"))
        return tuple(
            (2 * i - 1, 2 * i - 1) in branchings[0].lam_sub.get(f"{_var(i)}>T", ())
            for i in range(1, phi.num_variables + 1)
        )
    raise ValueError(f"no assignment decoder for reduction {output.tag!r}")
