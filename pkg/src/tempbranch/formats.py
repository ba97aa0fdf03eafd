"""Line-oriented text formats: instances, solutions, DIMACS CNF and 2-WDP inputs.

Instance grammar (one directive per line, '#' starts a comment)::

    tdg 1 [lifetime T]
    v <id>
    active <id> <t>... | <t1>-<t2>
    e <eid> <tail> <head>
    te <eid> <dep> <arr>
    roots <i>
    r <vertex> <t>

Identifiers are any whitespace-free token that does not start with '#', so
``x#3`` is a valid vertex name.
"""

from __future__ import annotations

from .core import InvalidInstance, ProblemVariant, StaticDigraph, TemporalDigraph, validate, validate_roots
from .reach import TemporalBranching
from .reductions import CnfFormula, WdpInstance

INSTANCE_MAGIC = "tdg"
SOLUTION_MAGIC = "sol"
WDP_MAGIC = "wdp"
FORMAT_VERSION = "1"
INFEASIBLE = "INFEASIBLE"


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text):
    """Yield (line number, tokens) for every non-blank line, comments stripped."""
    for no, raw in enumerate(text.splitlines(), 1):
        tokens = []
        for tok in raw.split():
            if tok.startswith("#"):
                break
            tokens.append(tok)
        if tokens:
            yield no, tokens


def _int(tok, no, what="timestamp"):
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", no) from None
    if value < 0:
        raise ParseError(f"{what} {tok!r} is negative", no)
    return value


def _times(tokens, no):
    out = []
    for tok in tokens:
        if "-" in tok[1:]:
            a, b = tok.split("-", 1)
            lo, hi = _int(a, no), _int(b, no)
            if lo > hi:
                raise ParseError(f"empty interval {tok!r}", no)
            out.extend(range(lo, hi + 1))
        else:
            out.append(_int(tok, no))
    return out


def _arity(tokens, n, no, usage):
    if len(tokens) != n:
        raise ParseError(f"expected `{usage}`", no)


def _header(lines, magic):
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"empty document, expected `{magic} {FORMAT_VERSION}`") from None
    if tokens[0] != magic:
        raise ParseError(f"expected header `{magic} {FORMAT_VERSION}`, got {tokens[0]!r}", no)
    if len(tokens) < 2 or tokens[1] != FORMAT_VERSION:
        raise ParseError(f"unsupported format version, expected {FORMAT_VERSION}", no)
    return no, tokens


def parse_instance(text: str):
    """Parse an instance document into ``(TemporalDigraph, root_sets)``."""
    lines = _lines(text)
    hno, head = _header(lines, INSTANCE_MAGIC)
    hint = None
    if len(head) > 2:
        if len(head) != 4 or head[2] != "lifetime":
            raise ParseError("header is `tdg 1 [lifetime T]`", hno)
        hint = _int(head[3], hno, "lifetime")

    vertices, seen_v = [], set()
    gamma = {}
    edges, emap = [], {}
    lam = {}
    root_sets = []
    for no, tok in lines:
        d = tok[0]
        if d == "v":
            _arity(tok, 2, no, "v <id>")
            if tok[1] in seen_v:
                raise ParseError(f"vertex {tok[1]!r} declared twice", no)
            seen_v.add(tok[1])
            vertices.append(tok[1])
        elif d == "active":
            if len(tok) < 3:
                raise ParseError("expected `active <id> <t>...`", no)
            if tok[1] not in seen_v:
                raise ParseError(f"activity for undeclared vertex {tok[1]!r}", no)
            gamma.setdefault(tok[1], []).extend(_times(tok[2:], no))
        elif d == "e":
            _arity(tok, 4, no, "e <eid> <tail> <head>")
            eid, u, v = tok[1:]
            if eid in emap:
                raise ParseError(f"edge {eid!r} declared twice", no)
            for w in (u, v):
                if w not in seen_v:
                    raise ParseError(f"edge {eid!r} uses undeclared vertex {w!r}", no)
            emap[eid] = (u, v)
            edges.append((eid, u, v))
        elif d == "te":
            _arity(tok, 4, no, "te <eid> <dep> <arr>")
            eid = tok[1]
            if eid not in emap:
                raise ParseError(f"temporal edge refers to undeclared edge {eid!r}", no)
            t, s = _int(tok[2], no), _int(tok[3], no)
            u, v = emap[eid]
            if t > s:
                raise ParseError(f"edge {eid!r} departs at {t} after arriving at {s}", no)
            if t not in gamma.get(u, ()) or s not in gamma.get(v, ()):
                raise ParseError(f"edge {eid!r} copy ({t},{s}) has an inactive endpoint", no)
            lam.setdefault(eid, []).append((t, s))
        elif d == "roots":
            _arity(tok, 2, no, "roots <i>")
            i = _int(tok[1], no, "root set index")
            if i != len(root_sets) + 1:
                raise ParseError(f"root set {i} out of order, expected {len(root_sets) + 1}", no)
            root_sets.append(set())
        elif d == "r":
            _arity(tok, 3, no, "r <vertex> <t>")
            if not root_sets:
                raise ParseError("`r` line before any `roots` block", no)
            v, t = tok[1], _int(tok[2], no)
            if not (v in seen_v and t in gamma.get(v, ())):
                raise ParseError(f"root ({v},{t}) is not a temporal vertex", no)
            root_sets[-1].add((v, t))
        else:
            raise ParseError(f"unknown directive {d!r}", no)

    g = TemporalDigraph(vertices, edges, gamma, lam)
    problems = validate(g) + validate_roots(g, root_sets)
    if problems:
        raise ParseError("; ".join(problems))
    if hint is not None and hint != g.lifetime:
        raise ParseError(f"header says lifetime {hint} but the instance has lifetime {g.lifetime}", hno)
    return g, root_sets


def _format_times(ts):
    ts = sorted(ts)
    if len(ts) > 1 and ts[-1] - ts[0] + 1 == len(ts):
        return f"{ts[0]}-{ts[-1]}"
    return " ".join(map(str, ts))


def _activity_lines(vertices, gamma):
    return [f"active {v} {_format_times(gamma[v])}" for v in vertices if gamma.get(v)]


def _check_token(x):
    s = str(x)
    if not s or s.startswith("#") or any(c.isspace() for c in s):
        raise ValueError(f"identifier {s!r} cannot be written as a token")
    return s


def serialize_instance(g: TemporalDigraph, root_sets=()) -> str:
    """Canonical text for ``g``; parsing it back gives an equal instance."""
    for x in list(g.vertices) + [e[0] for e in g.edges]:
        _check_token(x)
    order = {v: i for i, v in enumerate(g.vertices)}
    out = [f"{INSTANCE_MAGIC} {FORMAT_VERSION}" + (f" lifetime {g.lifetime}" if g.lifetime is not None else "")]
    out += [f"v {v}" for v in g.vertices]
    out += _activity_lines(g.vertices, g.gamma)
    for eid, u, v in g.edges:
        out.append(f"e {eid} {u} {v}")
    for eid, _, _ in g.edges:
        out += [f"te {eid} {t} {s}" for t, s in g.lam[eid]]
    for i, roots in enumerate(root_sets, 1):
        out.append(f"roots {i}")
        out += [f"r {v} {t}" for v, t in sorted(roots, key=lambda r: (r[1], order.get(r[0], -1)))]
    return "\n".join(out) + "\n"


def serialize_solution(g: TemporalDigraph, variant: ProblemVariant, branchings) -> str:
    """Solution document for ``branchings``, or the INFEASIBLE marker for None."""
    if branchings is None:
        return INFEASIBLE + "\n"
    out = [f"{SOLUTION_MAGIC} {FORMAT_VERSION}", f"variant {variant.spanning} {variant.disjoint}"]
    for i, b in enumerate(branchings, 1):
        out.append(f"b {i}")
        out += _activity_lines(g.vertices, b.gamma_sub)
        for eid, _, _ in g.edges:
            out += [f"te {eid} {t} {s}" for t, s in b.lam_sub.get(eid, ())]
    return "\n".join(out) + "\n"


def parse_solution(text: str, g: TemporalDigraph, root_sets):
    """Parse a solution document against its instance.

    Returns ``(variant, branchings)``; both are None for an INFEASIBLE
    document.  Block i is paired with root set i.
    """
    stripped = [tok for _, tok in _lines(text)]
    if stripped == [[INFEASIBLE]]:
        return None, None
    lines = _lines(text)
    _header(lines, SOLUTION_MAGIC)
    variant = None
    blocks = []
    emap = g.edge_map()
    for no, tok in lines:
        d = tok[0]
        if d == "variant":
            _arity(tok, 3, no, "variant <spanning> <disjoint>")
            try:
                variant = ProblemVariant(tok[1], tok[2])
            except ValueError as exc:
                raise ParseError(str(exc), no) from None
        elif d == "b":
            _arity(tok, 2, no, "b <i>")
            i = _int(tok[1], no, "branching index")
            if i != len(blocks) + 1:
                raise ParseError(f"branching {i} out of order, expected {len(blocks) + 1}", no)
            blocks.append(({}, {}))
        elif d in ("active", "te"):
            if not blocks:
                raise ParseError(f"`{d}` line before any `b` block", no)
            gamma_sub, lam_sub = blocks[-1]
            if d == "active":
                if len(tok) < 3:
                    raise ParseError("expected `active <id> <t>...`", no)
                if tok[1] not in g.gamma:
                    raise ParseError(f"unknown vertex {tok[1]!r}", no)
                gamma_sub.setdefault(tok[1], []).extend(_times(tok[2:], no))
            else:
                _arity(tok, 4, no, "te <eid> <dep> <arr>")
                if tok[1] not in emap:
                    raise ParseError(f"unknown edge {tok[1]!r}", no)
                lam_sub.setdefault(tok[1], []).append((_int(tok[2], no), _int(tok[3], no)))
        else:
            raise ParseError(f"unknown directive {d!r}", no)
    if variant is None:
        raise ParseError("missing `variant` line")
    if len(blocks) != len(root_sets):
        raise ParseError(f"{len(blocks)} branchings for {len(root_sets)} root sets")
    try:
        bs = [TemporalBranching(g, gs, ls, r) for (gs, ls), r in zip(blocks, root_sets)]
    except InvalidInstance as exc:
        raise ParseError(str(exc)) from None
    return variant, bs


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF restricted to clauses of exactly 3 positive literals."""
    n = m = None
    clauses, current = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] in ("c", "%") or tok[0].startswith("c"):
            if tok and tok[0] == "%":
                break
            continue
        if tok[0] == "p":
            if n is not None:
                raise ParseError("second problem line", no)
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("expected `p cnf <variables> <clauses>`", no)
            n, m = _int(tok[2], no, "variable count"), _int(tok[3], no, "clause count")
            continue
        if n is None:
            raise ParseError("clause before the `p cnf` line", no)
        for t in tok:
            try:
                lit = int(t)
            except ValueError:
                raise ParseError(f"literal {t!r} is not an integer", no) from None
            if lit < 0:
                raise ParseError(
                    f"negative literal {lit}: only positive 3-CNF is accepted "
                    "(exactly 3 positive literals per clause)",
                    no,
                )
            if lit == 0:
                if len(current) != 3:
                    raise ParseError(
                        f"clause has {len(current)} literals, expected exactly 3 positive literals", no
                    )
                clauses.append(tuple(current))
                current = []
                continue
            if lit > n:
                raise ParseError(f"literal {lit} exceeds the declared {n} variables", no)
            current.append(lit)
    if n is None:
        raise ParseError("missing `p cnf` line")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses but {len(clauses)} were given")
    return CnfFormula(n, clauses)


def serialize_cnf(phi: CnfFormula) -> str:
    out = [f"p cnf {phi.num_variables} {len(phi.clauses)}"]
    out += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(out) + "\n"


def parse_wdp(text: str) -> WdpInstance:
    """``wdp 1`` then ``v``/``e`` lines as in instances and two ``req <s> <t>`` lines."""
    lines = _lines(text)
    _header(lines, WDP_MAGIC)
    vertices, seen, edges, eids, requests = [], set(), [], set(), []
    for no, tok in lines:
        d = tok[0]
        if d == "v":
            _arity(tok, 2, no, "v <id>")
            if tok[1] in seen:
                raise ParseError(f"vertex {tok[1]!r} declared twice", no)
            seen.add(tok[1])
            vertices.append(tok[1])
        elif d == "e":
            _arity(tok, 4, no, "e <eid> <tail> <head>")
            if tok[1] in eids:
                raise ParseError(f"edge {tok[1]!r} declared twice", no)
            for w in tok[2:]:
                if w not in seen:
                    raise ParseError(f"edge {tok[1]!r} uses undeclared vertex {w!r}", no)
            eids.add(tok[1])
            edges.append(tuple(tok[1:]))
        elif d == "req":
            _arity(tok, 3, no, "req <s> <t>")
            for w in tok[1:]:
                if w not in seen:
                    raise ParseError(f"request uses undeclared vertex {w!r}", no)
            requests.append(tuple(tok[1:]))
        else:
            raise ParseError(f"unknown directive {d!r}", no)
    if len(requests) != 2:
        raise ParseError(f"expected 2 requests, got {len(requests)}")
    return WdpInstance(StaticDigraph(vertices, edges), requests)


def serialize_wdp(w: WdpInstance) -> str:
    d = w.digraph
    out = [f"{WDP_MAGIC} {FORMAT_VERSION}"]
    out += [f"v {_check_token(v)}" for v in d.vertices]
    out += [f"e {eid} {u} {v}" for eid, u, v in d.edges]
    out += [f"req {s} {t}" for s, t in w.requests]
    return "\n".join(out) + "\n"
