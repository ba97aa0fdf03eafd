"""Exact exponential search and a brute-force enumeration oracle.

Both decide any of the four variants.  The search treats a branching as a
choice of parent arcs: in temporal mode every temporal vertex that is neither
a root nor reached by waiting picks exactly one incoming temporal edge; in
vertex mode every base vertex without a root picks the one temporal edge by
which it is first entered.  The oracle knows nothing of this and simply
checks every subset of temporal edges with the verifier.
"""

from __future__ import annotations

import itertools
import sys
from typing import NamedTuple

from .core import InvalidInstance, ProblemVariant, TemporalDigraph, ensure_valid, validate_roots
from .reach import TemporalBranching, check_disjoint, reachable, verify_branching
from .static_branchings import sort_key

ORACLE_MAX_TEMPORAL_EDGES = 16


class ScaleError(ValueError):
    """The instance is larger than an enumeration routine accepts."""


class OracleResult(NamedTuple):
    feasible: bool
    witness: list | None


def _check(g, root_sets):
    ensure_valid(g)
    problems = validate_roots(g, root_sets)
    if problems:
        raise InvalidInstance("; ".join(problems))


def _run_end(gamma_v, t):
    present = set(gamma_v)
    while t + 1 in present:
        t += 1
    return t


def trim_to_reachable(b: TemporalBranching) -> TemporalBranching:
    """Restrict ``b`` to the part reachable from its roots."""
    reach = reachable(b)
    emap = b.host.edge_map()
    gamma_sub = {}
    for v, t in reach:
        gamma_sub.setdefault(v, []).append(t)
    lam_sub = {}
    for e, ps in b.lam_sub.items():
        u = emap[e][0]
        kept = [(t, s) for t, s in ps if (u, t) in reach]
        if kept:
            lam_sub[e] = kept
    return TemporalBranching(b.host, gamma_sub, lam_sub, b.roots)


def oracle_enumerate(
    g: TemporalDigraph,
    root_sets,
    variant: ProblemVariant,
    max_temporal_edges=ORACLE_MAX_TEMPORAL_EDGES,
    prune: bool = True,
) -> OracleResult:
    """Decide by checking every subset of temporal edges for every branching.

    Each branching keeps the full activity of the host; in vertex mode the
    witness is trimmed to its reachable part afterwards.  ``prune=False``
    hands every subset to the verifier, even in temporal mode.
    """
    _check(g, root_sets)
    tes = sorted(g.temporal_edges(), key=sort_key)
    if len(tes) > max_temporal_edges:
        raise ScaleError(
            f"{len(tes)} temporal edges exceed the oracle limit of {max_temporal_edges}"
        )
    k = len(root_sets)
    if k == 0:
        return OracleResult(True, [])
    eids = sorted({te[0] for te in tes}, key=sort_key)
    ebit = {e: 1 << i for i, e in enumerate(eids)}

    emap = g.edge_map()
    into = {}  # temporal vertex -> bitmask of temporal edges arriving there
    for i, (e, t, s) in enumerate(tes):
        head = (emap[e][1], s)
        into[head] = into.get(head, 0) | 1 << i
    temporal = variant.spanning == "temporal"
    into_bits = {x: [1 << i for i in range(len(tes)) if m >> i & 1] for x, m in into.items()}
    valid_cache = {}

    def candidate_masks(roots):
        """Every subset in vertex mode; in temporal mode only the subsets that
        pass a necessary condition, and the verifier still has the final word.

        In a temporal-spanning subdigraph every arc has a reachable tail, so
        each temporal vertex is a root, waits, or has one chosen arc, exactly
        once.  Every temporal edge enters exactly one temporal vertex, so the
        subsets meeting this are a product of per-vertex choices.
        """
        if not (temporal and prune):
            yield from range(1 << len(tes))
            return
        picks = []
        for x in g.temporal_vertices():
            need = 1 - (x in roots) - g.is_active(x[0], x[1] - 1)
            bits = into_bits.get(x, ())
            if need < 0 or (need == 1 and not bits):
                return
            if need == 1:
                picks.append(bits)
        for combo in itertools.product(*picks):
            yield sum(combo)

    def valid_subsets(roots):
        key = frozenset(roots)
        if key in valid_cache:
            return valid_cache[key]
        found = []
        for mask in candidate_masks(key):
            lam_sub = {}
            emask = 0
            for i, (e, t, s) in enumerate(tes):
                if mask >> i & 1:
                    lam_sub.setdefault(e, []).append((t, s))
                    emask |= ebit[e]
            b = TemporalBranching(g, g.gamma, lam_sub, roots)
            if verify_branching(b, variant.spanning):
                found.append((mask, emask, b))
        valid_cache[key] = found
        return found

    options = [valid_subsets(r) for r in root_sets]
    pick = 1 if variant.disjoint == "edge" else 0
    chosen = []

    def extend(i, used):
        if i == k:
            return True
        for opt in options[i]:
            m = opt[pick]
            if m & used:
                continue
            chosen.append(opt[2])
            if extend(i + 1, used | m):
                return True
            chosen.pop()
        return False

    if not extend(0, 0):
        return OracleResult(False, None)
    witness = list(chosen)
    if variant.spanning == "vertex":
        witness = [trim_to_reachable(b) for b in witness]
    assert check_disjoint(witness, variant.disjoint)
    return OracleResult(True, witness)


class _Search:
    def __init__(self, g: TemporalDigraph, root_sets, variant: ProblemVariant):
        self.g = g
        self.k = len(root_sets)
        self.root_sets = [frozenset(r) for r in root_sets]
        self.temporal = variant.spanning == "temporal"
        self.edge_mode = variant.disjoint == "edge"
        self.emap = g.edge_map()
        order = {}
        incoming = {}
        for te in sorted(g.temporal_edges(), key=lambda te: (te[2], sort_key(te[0]), te[1])):
            order[te] = len(order)
            head = (self.emap[te[0]][1], te[2])
            key = head if self.temporal else head[0]
            incoming.setdefault(key, []).append(te)
        self.order = order
        self.incoming = incoming
        self.assign = {}  # (i, target) -> te
        self.te_user = {}  # te -> i
        self.owner = {}  # eid -> [i, count]
        self.children = {}  # (i, tail vertex) -> set of targets, vertex mode
        self.forced = []  # vertex mode: per branching {vertex: root time}
        self.variables = []
        self.infeasible = False
        self.sym_target = None
        self._setup()

    def _setup(self):
        g = self.g
        if self.temporal:
            self.precovered = []
            for roots in self.root_sets:
                cov = set()
                for v, t in g.temporal_vertices():
                    waiting = g.is_active(v, t - 1)
                    if (v, t) in roots and waiting:
                        self.infeasible = True
                    if (v, t) in roots or waiting:
                        cov.add((v, t))
                self.precovered.append(cov)
            targets_per = [
                [x for x in g.temporal_vertices() if x not in cov] for cov in self.precovered
            ]
        else:
            targets_per = []
            for roots in self.root_sets:
                forced = {}
                for v, t in roots:
                    if v in forced:
                        self.infeasible = True
                    forced[v] = t
                self.forced.append(forced)
                targets = [v for v in g.vertices if v not in forced]
                if any(not g.gamma[v] for v in targets):
                    self.infeasible = True
                targets_per.append(targets)
        for i, targets in enumerate(targets_per):
            for x in targets:
                self.variables.append((i, x))
        if self.k > 1 and len(set(self.root_sets)) == 1 and targets_per[0]:
            self.sym_target = targets_per[0][0]

    # vertex-mode helpers
    def _event_time(self, i, v):
        if v in self.forced[i]:
            return self.forced[i][v]
        te = self.assign.get((i, v))
        return None if te is None else te[2]

    def _window_ok(self, i, w, dep):
        e = self._event_time(i, w)
        if e is None:
            return True
        return e <= dep <= _run_end(self.g.gamma[w], e)

    def _parent(self, i, x):
        """Parent of target ``x`` in branching i, or None when unknown or a root."""
        if self.temporal:
            if x in self.precovered[i]:
                v, t = x
                return (v, t - 1) if self.g.is_active(v, t - 1) else None
            te = self.assign.get((i, x))
            return None if te is None else (self.emap[te[0]][0], te[1])
        if x in self.forced[i]:
            return None
        te = self.assign.get((i, x))
        return None if te is None else self.emap[te[0]][0]

    def _creates_cycle(self, i, x, tail):
        y = tail
        steps = 0
        while y is not None:
            if y == x:
                return True
            y = self._parent(i, y)
            steps += 1
            if steps > len(self.variables) + len(self.order) + 2:
                return True
        return False

    def _valid(self, i, x, te):
        eid, dep, _ = te
        if self.edge_mode:
            own = self.owner.get(eid)
            if own is not None and own[0] != i:
                return False
        else:
            user = self.te_user.get(te)
            if user is not None and user != i:
                return False
        tail_v = self.emap[eid][0]
        if self.temporal:
            tail = (tail_v, dep)
        else:
            tail = tail_v
            if tail_v == x or not self._window_ok(i, tail_v, dep):
                return False
            arr = te[2]
            end = _run_end(self.g.gamma[x], arr)
            for child in self.children.get((i, x), ()):
                d = self.assign[(i, child)][1]
                if not arr <= d <= end:
                    return False
        if x == self.sym_target:
            rank = self.order[te]
            for j in range(self.k):
                other = self.assign.get((j, x))
                if other is None or j == i:
                    continue
                if (j < i and self.order[other] >= rank) or (j > i and self.order[other] <= rank):
                    return False
        return not self._creates_cycle(i, x, tail)

    def _apply(self, i, x, te):
        self.assign[(i, x)] = te
        self.te_user[te] = i
        own = self.owner.setdefault(te[0], [i, 0])
        own[1] += 1
        if not self.temporal:
            self.children.setdefault((i, self.emap[te[0]][0]), set()).add(x)

    def _undo(self, i, x, te):
        del self.assign[(i, x)]
        del self.te_user[te]
        own = self.owner[te[0]]
        own[1] -= 1
        if own[1] == 0:
            del self.owner[te[0]]
        if not self.temporal:
            self.children[(i, self.emap[te[0]][0])].discard(x)

    def run(self):
        if self.infeasible:
            return False
        return self._search(list(self.variables))

    def _search(self, unassigned):
        if not unassigned:
            return True
        best = None
        best_cands = None
        for var in unassigned:
            i, x = var
            cands = [te for te in self.incoming.get(x, ()) if self._valid(i, x, te)]
            if not cands:
                return False
            if best is None or len(cands) < len(best_cands):
                best, best_cands = var, cands
                if len(cands) == 1:
                    break
        rest = [v for v in unassigned if v != best]
        i, x = best
        for te in best_cands:
            self._apply(i, x, te)
            if self._search(rest):
                return True
            self._undo(i, x, te)
        return False

    def branchings(self):
        g = self.g
        out = []
        for i in range(self.k):
            lam_sub = {}
            for (j, x), te in self.assign.items():
                if j == i:
                    lam_sub.setdefault(te[0], []).append(te[1:])
            if self.temporal:
                gamma_sub = dict(g.gamma)
            else:
                gamma_sub = {}
                for v in g.vertices:
                    e = self._event_time(i, v)
                    if e is None:
                        continue
                    last = e
                    for child in self.children.get((i, v), ()):
                        last = max(last, self.assign[(i, child)][1])
                    gamma_sub[v] = list(range(e, last + 1))
            out.append(TemporalBranching(g, gamma_sub, lam_sub, self.root_sets[i]))
        return out


def solve_exact(g: TemporalDigraph, root_sets, variant: ProblemVariant):
    """k disjoint spanning branchings for any variant, or None when none exist."""
    _check(g, root_sets)
    if not root_sets:
        return []
    search = _Search(g, root_sets, variant)
    limit = sys.getrecursionlimit()
    need = len(search.variables) + 100
    if need > limit:
        sys.setrecursionlimit(need)
    if not search.run():
        return None
    return search.branchings()
