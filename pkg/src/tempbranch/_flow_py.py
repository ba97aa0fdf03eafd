"""Unit-capacity multi-source max-flow by BFS augmenting paths (pure Python)."""

from collections import deque


class FlowNetwork:
    """Static multigraph on nodes ``0..n-1`` with one unit of capacity per edge.

    Vertices are uncapacitated.  ``alive`` masks let callers delete edges
    without rebuilding the adjacency.
    """

    def __init__(self, n, tails, heads):
        self.n = n
        self.tails = list(tails)
        self.heads = list(heads)
        self.m = len(self.tails)
        self.out = [[] for _ in range(n)]
        self.inc = [[] for _ in range(n)]
        for i in range(self.m):
            self.out[self.tails[i]].append(i)
            self.inc[self.heads[i]].append(i)

    def max_flow(self, sources, sink, alive=None, limit=-1):
        """Number of edge-disjoint paths from ``sources`` to ``sink``, stopping at ``limit``."""
        n, tails, heads, out, inc = self.n, self.tails, self.heads, self.out, self.inc
        is_src = [False] * n
        for s in sources:
            is_src[s] = True
        if is_src[sink]:
            raise ValueError("sink is one of the sources")
        if alive is None:
            alive = [True] * self.m
        flow = [0] * self.m
        total = 0
        while limit < 0 or total < limit:
            pred = [-2] * n  # -2 unseen, -1 source, else encoded residual edge
            queue = deque()
            for s in range(n):
                if is_src[s]:
                    pred[s] = -1
                    queue.append(s)
            found = False
            while queue and not found:
                u = queue.popleft()
                for e in out[u]:
                    if alive[e] and not flow[e]:
                        w = heads[e]
                        if pred[w] == -2:
                            pred[w] = 2 * e
                            if w == sink:
                                found = True
                                break
                            queue.append(w)
                if found:
                    break
                for e in inc[u]:
                    if flow[e]:
                        w = tails[e]
                        if pred[w] == -2:
                            pred[w] = 2 * e + 1
                            queue.append(w)
            if not found:
                break
            w = sink
            while pred[w] != -1:
                code = pred[w]
                e = code >> 1
                if code & 1:
                    flow[e] = 0
                    w = heads[e]
                else:
                    flow[e] = 1
                    w = tails[e]
            total += 1
        return total

    def covers_all(self, sources, need, alive=None):
        """True iff every non-source node receives at least ``need`` units."""
        srcs = set(sources)
        return all(
            self.max_flow(sources, v, alive, need) >= need for v in range(self.n) if v not in srcs
        )
