# cython: language_level=3, boundscheck=False, wraparound=False
"""Unit-capacity multi-source max-flow by BFS augmenting paths (compiled)."""

from libc.stdlib cimport malloc, free


cdef class FlowNetwork:
    cdef public int n, m
    cdef int* tails
    cdef int* heads
    cdef int* out_start
    cdef int* out_edges
    cdef int* in_start
    cdef int* in_edges

    def __cinit__(self, int n, tails, heads):
        cdef int i, m = len(tails)
        self.n = n
        self.m = m
        self.tails = <int*> malloc(max(m, 1) * sizeof(int))
        self.heads = <int*> malloc(max(m, 1) * sizeof(int))
        self.out_start = <int*> malloc((n + 1) * sizeof(int))
        self.in_start = <int*> malloc((n + 1) * sizeof(int))
        self.out_edges = <int*> malloc(max(m, 1) * sizeof(int))
        self.in_edges = <int*> malloc(max(m, 1) * sizeof(int))
        for i in range(n + 1):
            self.out_start[i] = 0
            self.in_start[i] = 0
        for i in range(m):
            self.tails[i] = tails[i]
            self.heads[i] = heads[i]
            self.out_start[self.tails[i] + 1] += 1
            self.in_start[self.heads[i] + 1] += 1
        for i in range(n):
            self.out_start[i + 1] += self.out_start[i]
            self.in_start[i + 1] += self.in_start[i]
        cdef int* ofill = <int*> malloc((n + 1) * sizeof(int))
        cdef int* ifill = <int*> malloc((n + 1) * sizeof(int))
        for i in range(n):
            ofill[i] = self.out_start[i]
            ifill[i] = self.in_start[i]
        for i in range(m):
            self.out_edges[ofill[self.tails[i]]] = i
            ofill[self.tails[i]] += 1
            self.in_edges[ifill[self.heads[i]]] = i
            ifill[self.heads[i]] += 1
        free(ofill)
        free(ifill)

    def __dealloc__(self):
        free(self.tails)
        free(self.heads)
        free(self.out_start)
        free(self.in_start)
        free(self.out_edges)
        free(self.in_edges)

    cdef int _augment(self, char* is_src, int sink, char* live, int limit,
                      char* flow, int* pred, int* queue):
        """Augment from the marked sources to ``sink``; ``flow`` must start zeroed."""
        cdef int n = self.n, i, j, e, u, w, code, head_q, tail_q, total = 0
        cdef bint found
        while limit < 0 or total < limit:
            head_q = 0
            tail_q = 0
            for i in range(n):
                if is_src[i]:
                    pred[i] = -1
                    queue[tail_q] = i
                    tail_q += 1
                else:
                    pred[i] = -2
            found = False
            while head_q < tail_q and not found:
                u = queue[head_q]
                head_q += 1
                for j in range(self.out_start[u], self.out_start[u + 1]):
                    e = self.out_edges[j]
                    if live[e] and not flow[e]:
                        w = self.heads[e]
                        if pred[w] == -2:
                            pred[w] = 2 * e
                            if w == sink:
                                found = True
                                break
                            queue[tail_q] = w
                            tail_q += 1
                if found:
                    break
                for j in range(self.in_start[u], self.in_start[u + 1]):
                    e = self.in_edges[j]
                    if flow[e]:
                        w = self.tails[e]
                        if pred[w] == -2:
                            pred[w] = 2 * e + 1
                            queue[tail_q] = w
                            tail_q += 1
            if not found:
                break
            w = sink
            while pred[w] != -1:
                code = pred[w]
                e = code >> 1
                if code & 1:
                    flow[e] = 0
                    w = self.heads[e]
                else:
                    flow[e] = 1
                    w = self.tails[e]
            total += 1
        return total

    def max_flow(self, sources, int sink, alive=None, int limit=-1):
        return self._run(sources, sink, alive, limit, False)

    def covers_all(self, sources, int need, alive=None):
        """True iff every non-source node receives at least ``need`` units."""
        return bool(self._run(sources, -1, alive, need, True))

    cdef int _run(self, sources, int sink, alive, int limit, bint every) except -1:
        cdef int n = self.n, m = self.m, i, v, result = 1
        cdef char* is_src = <char*> malloc(max(n, 1))
        cdef char* live = <char*> malloc(max(m, 1))
        cdef char* flow = <char*> malloc(max(m, 1))
        cdef int* pred = <int*> malloc(max(n, 1) * sizeof(int))
        cdef int* queue = <int*> malloc(max(n, 1) * sizeof(int))
        try:
            for i in range(n):
                is_src[i] = 0
            for s in sources:
                is_src[<int> s] = 1
            for i in range(m):
                live[i] = 1 if alive is None else (1 if alive[i] else 0)
            if not every:
                if is_src[sink]:
                    raise ValueError("sink is one of the sources")
                for i in range(m):
                    flow[i] = 0
                return self._augment(is_src, sink, live, limit, flow, pred, queue)
            for v in range(n):
                if is_src[v]:
                    continue
                for i in range(m):
                    flow[i] = 0
                if self._augment(is_src, v, live, limit, flow, pred, queue) < limit:
                    result = 0
                    break
            return result
        finally:
            free(is_src)
            free(live)
            free(flow)
            free(pred)
            free(queue)
