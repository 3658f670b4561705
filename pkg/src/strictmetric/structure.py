"""Halos, subdivision and minor containment, and the structure classifier.

Every search returns a model that is checked by a separate verifier before
it leaves this module.  Searches are exhaustive backtracking with explicit
budgets: an in-budget ``None`` is a proof of absence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .errors import BudgetExceeded, InternalInvariantError, InvalidInput
from .graph import (
    Edge,
    Graph,
    Path,
    compliant_edges,
    compliant_reduction,
    components,
    edge,
    find_disjoint_cycles,
    is_connected,
    is_path_in,
    is_two_connected,
    simple_cycles,
    suppress_degree_two,
)
from .zoo import EXACT_ONLY_BASES, MINOR_TO_TOPOLOGICAL, base_graphs, minor_zoo, topological_zoo

DEFAULT_SEARCH_BUDGET = 2_000_000


class HaloPreconditionError(InvalidInput):
    """``find_halo`` was called outside its hypotheses; ``which`` names the failed one."""

    def __init__(self, which: str, message: str):
        super().__init__(f"{which}: {message}")
        self.which = which


# ---------------------------------------------------------------------------
# halos

@dataclass(frozen=True)
class HaloWitness:
    cycle: Path  # vertex sequence, closing edge implied
    leg1: Path  # from x1 to a cycle vertex
    leg2: Path

    @property
    def u1(self) -> int:
        return self.leg1[-1]

    @property
    def u2(self) -> int:
        return self.leg2[-1]

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "leg1": list(self.leg1), "leg2": list(self.leg2)}


def _cycle_ok(g: Graph, c: Sequence[int]) -> bool:
    return (len(c) >= 3 and len(set(c)) == len(c)
            and all(0 <= v < g.n for v in c)
            and all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))))


def verify_halo(g: Graph, x1: int, x2: int, w: HaloWitness) -> bool:
    c = tuple(w.cycle)
    if not _cycle_ok(g, c):
        return False
    for leg, x in ((w.leg1, x1), (w.leg2, x2)):
        if not leg or leg[0] != x:
            return False
        if len(leg) > 1 and not is_path_in(g, leg):
            return False
        if len(leg) == 1 and not 0 <= leg[0] < g.n:
            return False
        if set(leg) & set(c) != {leg[-1]}:
            return False
    if set(w.leg1) & set(w.leg2):
        return False
    i, j = c.index(w.u1), c.index(w.u2)
    gap = abs(i - j)
    return min(gap, len(c) - gap) >= 2


def _paths_avoiding(g: Graph, s: int, t: int, allowed: set) -> Iterator[Path]:
    """Simple s-t paths whose vertices all lie in ``allowed`` (DFS order)."""
    if s == t:
        yield (s,)
        return
    path = [s]
    on = {s}

    def dfs(x):
        for y in g.adj[x]:
            if y in on or y not in allowed:
                continue
            if y == t:
                yield tuple(path) + (t,)
                continue
            on.add(y)
            path.append(y)
            yield from dfs(y)
            path.pop()
            on.discard(y)

    yield from dfs(s)


def _bfs_path(g: Graph, s: int, t: int, allowed: set) -> Optional[Path]:
    if s == t:
        return (s,)
    prev = {s: None}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y in prev or y not in allowed:
                continue
            prev[y] = x
            if y == t:
                out = [t]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return tuple(reversed(out))
            q.append(y)
    return None


def find_halo(g: Graph, x: int, y: int, component: Optional[Sequence[int]] = None) -> Optional[HaloWitness]:
    """An xy-halo inside ``component`` plus {x, y}, found by exhaustive search.

    ``component`` is the vertex set (or any vertex) of a component of
    G - {x, y}; when omitted the first component admitting a non-flat
    (xy)-path of length >= 2 is used.
    """
    if x == y:
        raise HaloPreconditionError("distinct", "x and y must differ")
    if not is_two_connected(g):
        raise HaloPreconditionError("two-connected", "host graph is not 2-connected")
    if compliant_edges(g):
        raise HaloPreconditionError("no-compliant-edges", "host graph has compliant edges")
    comps = [set(c) for c in components(g, (x, y))]
    if component is not None:
        want = {component} if isinstance(component, int) else set(component)
        comps = [c for c in comps if want <= c]
        if not comps:
            raise HaloPreconditionError("component", "given vertices are not inside one component of G - {x, y}")
    for s in comps:
        if _has_non_flat_path(g, x, y, s):
            return _search_halo(g, x, y, s | {x, y})
        if component is not None:
            break
    raise HaloPreconditionError("non-flat-path", "no non-flat (xy)-path of length >= 2 through the component")


def _has_non_flat_path(g: Graph, x: int, y: int, s: set) -> bool:
    for p in _paths_avoiding(g, x, y, s | {x, y}):
        if len(p) >= 3 and any(g.degree(v) != 2 for v in p[1:-1]):
            return True
    return False


def _search_halo(g: Graph, x: int, y: int, allowed: set) -> Optional[HaloWitness]:
    sub, old = g.induced(sorted(allowed))
    for c_local in simple_cycles(sub):
        c = tuple(old[v] for v in c_local)
        cset = set(c)
        L = len(c)
        for i in range(L):
            for j in range(L):
                if min(abs(i - j), L - abs(i - j)) < 2:
                    continue
                u1, u2 = c[i], c[j]
                if (x in cset and x != u1) or (y in cset and y != u2):
                    continue
                room1 = (allowed - cset) | {u1}
                room1.discard(y)
                for leg1 in _paths_avoiding(g, x, u1, room1):
                    room2 = (allowed - cset - set(leg1)) | {u2}
                    leg2 = _bfs_path(g, y, u2, room2)
                    if leg2 is not None:
                        w = HaloWitness(c, leg1, leg2)
                        if not verify_halo(g, x, y, w):
                            raise InternalInvariantError("halo search produced an invalid witness")
                        return w
    return None


# ---------------------------------------------------------------------------
# subdivision (topological minor) models

@dataclass(frozen=True)
class SubdivisionModel:
    branch_map: tuple  # H-vertex -> G-vertex
    path_map: dict  # H-edge (a<b) -> G-path from branch_map[a] to branch_map[b]

    def to_json(self) -> dict:
        return {"branch_map": list(self.branch_map),
                "path_map": [[a, b, list(p)] for (a, b), p in sorted(self.path_map.items())]}

    def to_minor_model(self) -> "MinorModel":
        sets = [{v} for v in self.branch_map]
        wit = {}
        for (a, b), p in self.path_map.items():
            sets[a].update(p[1:-1])
            wit[(a, b)] = (p[-2], p[-1])
        return MinorModel(tuple(frozenset(s) for s in sets), wit)


def verify_subdivision_model(g: Graph, h: Graph, m: SubdivisionModel) -> bool:
    bm = tuple(m.branch_map)
    if len(bm) != h.n or len(set(bm)) != h.n or not all(0 <= v < g.n for v in bm):
        return False
    if set(m.path_map) != set(h.edges):
        return False
    branch = set(bm)
    inner_seen: set = set()
    for (a, b), p in m.path_map.items():
        p = tuple(p)
        if len(p) < 2 or p[0] != bm[a] or p[-1] != bm[b] or not is_path_in(g, p):
            return False
        inner = set(p[1:-1])
        if inner & branch or inner & inner_seen:
            return False
        inner_seen |= inner
    return True


def _degree_dominated(g: Graph, h: Graph) -> bool:
    dg = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    dh = sorted((h.degree(v) for v in range(h.n)), reverse=True)
    return all(a <= b for a, b in zip(dh, dg))


def _h_order(h: Graph) -> list[int]:
    """Vertices by decreasing degree, preferring neighbours of placed ones."""
    order: list[int] = []
    left = set(range(h.n))
    while left:
        touching = [v for v in left if any(u in order for u in h.adj[v])]
        pool = touching or list(left)
        v = max(pool, key=lambda z: (h.degree(z), -z))
        order.append(v)
        left.discard(v)
    return order


class _Counter:
    def __init__(self, budget: int, what: str):
        self.budget = budget
        self.n = 0
        self.what = what

    def tick(self) -> None:
        self.n += 1
        if self.n > self.budget:
            raise BudgetExceeded(self.what, self.budget)


def topological_minor(g: Graph, h: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[SubdivisionModel]:
    """A subdivision of ``h`` inside ``g``, or None.  Raises BudgetExceeded."""
    if h.n > g.n or h.m > g.m or not _degree_dominated(g, h):
        return None
    order = _h_order(h)
    pos = {v: i for i, v in enumerate(order)}
    # edges routed when their later endpoint is placed
    back = [[u for u in h.adj[v] if pos[u] < pos[v]] for v in order]
    bmap: dict[int, int] = {}
    used: set[int] = set()
    paths: dict[Edge, Path] = {}
    ctr = _Counter(budget, "topological minor search")

    def route(k: int, todo: list) -> Iterator[None]:
        if not todo:
            yield from place(k + 1)
            return
        a = order[k]
        b = todo[0]
        allowed = set(range(g.n)) - used
        allowed |= {bmap[a], bmap[b]}
        for p in _paths_avoiding(g, bmap[a], bmap[b], allowed):
            ctr.tick()
            inner = p[1:-1]
            used.update(inner)
            paths[edge(a, b)] = p if a < b else p[::-1]
            yield from route(k, todo[1:])
            del paths[edge(a, b)]
            used.difference_update(inner)

    def place(k: int) -> Iterator[None]:
        if k == len(order):
            yield None
            return
        v = order[k]
        for x in range(g.n):
            if x in used or g.degree(x) < h.degree(v):
                continue
            ctr.tick()
            bmap[v] = x
            used.add(x)
            yield from route(k, back[k])
            used.discard(x)
            del bmap[v]

    for _ in place(0):
        model = SubdivisionModel(tuple(bmap[v] for v in range(h.n)), dict(paths))
        if not verify_subdivision_model(g, h, model):
            raise InternalInvariantError("subdivision search produced an invalid model")
        return model
    return None


# ---------------------------------------------------------------------------
# minor models

@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple  # H-vertex -> frozenset of G-vertices
    edge_witness: dict  # H-edge -> G-edge (endpoint in set a, endpoint in set b)

    def to_json(self) -> dict:
        return {"branch_sets": [sorted(s) for s in self.branch_sets],
                "edge_witness": [[a, b, list(e)] for (a, b), e in sorted(self.edge_witness.items())]}


def verify_minor_model(g: Graph, h: Graph, m: MinorModel) -> bool:
    sets = [frozenset(s) for s in m.branch_sets]
    if len(sets) != h.n or any(not s for s in sets):
        return False
    seen: set = set()
    for s in sets:
        if s & seen or not all(0 <= v < g.n for v in s):
            return False
        seen |= s
        sub, _ = g.induced(sorted(s))
        if not is_connected(sub):
            return False
    if set(m.edge_witness) != set(h.edges):
        return False
    for (a, b), (p, q) in m.edge_witness.items():
        if not g.has_edge(p, q) or p not in sets[a] or q not in sets[b]:
            return False
    return True


def _quotient(g: Graph, parts: Sequence[frozenset]) -> nx.Graph:
    where = {}
    for i, s in enumerate(parts):
        for v in s:
            where[v] = i
    q = nx.Graph()
    q.add_nodes_from(range(len(parts)))
    q.add_edges_from((where[a], where[b]) for a, b in g.edges if where[a] != where[b])
    return q


def minor(g: Graph, h: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[MinorModel]:
    """A minor model of ``h`` in ``g``, or None.  Raises BudgetExceeded.

    Explores connected partitions of V(G) reachable by edge contractions and
    tests each quotient for a subgraph isomorphic to ``h`` (deletions are
    covered by allowing extra quotient vertices and edges).
    """
    if h.n > g.n or h.m > g.m:
        return None
    hx = h.to_networkx()
    ctr = _Counter(budget, "minor search")
    start = frozenset(frozenset({v}) for v in range(g.n))
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        ctr.tick()
        parts = sorted(state, key=min)
        q = _quotient(g, parts)
        if q.number_of_edges() < h.m:
            continue
        gm = GraphMatcher(q, hx)
        for mapping in gm.subgraph_monomorphisms_iter():
            inv = {hv: qv for qv, hv in mapping.items()}
            sets = tuple(parts[inv[v]] for v in range(h.n))
            wit = {}
            for a, b in h.edges:
                wit[(a, b)] = next((u, v) for u in sorted(sets[a]) for v in sorted(g.adj[u]) if v in sets[b])
            model = MinorModel(sets, wit)
            if not verify_minor_model(g, h, model):
                raise InternalInvariantError("minor search produced an invalid model")
            return model
        if len(parts) <= h.n:
            continue
        for i, j in sorted(q.edges()):
            merged = (state - {parts[i], parts[j]}) | {parts[i] | parts[j]}
            if merged not in seen:
                seen.add(merged)
                stack.append(merged)
    return None


# ---------------------------------------------------------------------------
# forbidden graphs

BUDGET = "budget_exceeded"


@dataclass
class ForbiddenReport:
    minors: dict = field(default_factory=dict)  # name -> MinorModel | None | BUDGET
    topminors: dict = field(default_factory=dict)

    @property
    def minors_found(self) -> list[str]:
        return [k for k, v in self.minors.items() if isinstance(v, MinorModel)]

    @property
    def topminors_found(self) -> list[str]:
        return [k for k, v in self.topminors.items() if isinstance(v, SubdivisionModel)]

    @property
    def budget_exceeded(self) -> list[str]:
        return [k for d in (self.minors, self.topminors) for k, v in d.items() if v == BUDGET]

    def to_json(self) -> dict:
        def enc(v):
            if v is None:
                return None
            if v == BUDGET:
                return BUDGET
            return v.to_json()

        return {"minors": {k: enc(v) for k, v in self.minors.items()},
                "topminors": {k: enc(v) for k, v in self.topminors.items()}}


def forbidden_scan(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> ForbiddenReport:
    rep = ForbiddenReport()
    for name, h in topological_zoo().items():
        try:
            rep.topminors[name] = topological_minor(g, h, budget)
        except BudgetExceeded:
            rep.topminors[name] = BUDGET
    for k, (name, h) in enumerate(minor_zoo().items(), start=1):
        top = rep.topminors.get(f"zoo{MINOR_TO_TOPOLOGICAL[k]}")
        if isinstance(top, SubdivisionModel):
            model = top.to_minor_model()
            if not verify_minor_model(g, h, model):
                raise InternalInvariantError("converted subdivision model is not a minor model")
            rep.minors[name] = model
            continue
        try:
            rep.minors[name] = minor(g, h, budget)
        except BudgetExceeded:
            rep.minors[name] = BUDGET
    return rep


# ---------------------------------------------------------------------------
# classifier

NOT_TWO_CONNECTED = "NotTwoConnected"
COMPLIANT = "CompliantEdgesPresent"
DISJOINT_CYCLES = "DisjointCycles"
BASE = "Base"
UNMATCHED = "Unmatched"


@dataclass
class StructureClass:
    tag: str
    removed: tuple = ()  # compliant edges deleted (COMPLIANT)
    inner: Optional["StructureClass"] = None  # classification of the reduction
    cycles: Optional[tuple] = None  # DISJOINT_CYCLES
    base: Optional[str] = None  # BASE
    model: Optional[SubdivisionModel] = None  # BASE: base graph inside the classified host
    host: Optional[Graph] = None

    @property
    def final(self) -> "StructureClass":
        return self.inner.final if self.tag == COMPLIANT and self.inner else self

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.tag == COMPLIANT:
            out["removed"] = [list(e) for e in self.removed]
            out["inner"] = self.inner.to_json()
        elif self.tag == DISJOINT_CYCLES:
            out["cycles"] = [list(c) for c in self.cycles]
        elif self.tag == BASE:
            out["base"] = self.base
            out["model"] = self.model.to_json()
        return out


def classify_structure(g: Graph) -> StructureClass:
    if g.n < 3 or not is_two_connected(g):
        return StructureClass(NOT_TWO_CONNECTED, host=g)
    reduced, removed = compliant_reduction(g)
    if removed:
        return StructureClass(COMPLIANT, removed=tuple(removed), inner=classify_structure(reduced), host=g)
    dc = find_disjoint_cycles(g)
    if dc is not None:
        return StructureClass(DISJOINT_CYCLES, cycles=dc, host=g)
    return _match_base(g)


def _match_base(g: Graph) -> StructureClass:
    sup = suppress_degree_two(g)
    kept = sup.kept
    if sup.multigraph:
        if sup.base.n == 2 and sup.multiplicity == {(0, 1): 3}:
            ps = sup.flat_paths[(0, 1)]
            x, y = kept
            bm = (x, y) + tuple(p[1] for p in ps)
            pm = {}
            for k, p in enumerate(ps):
                pm[(0, 2 + k)] = p[:2]
                pm[(1, 2 + k)] = tuple(reversed(p[1:]))
            return _base_result(g, "K2,3", SubdivisionModel(bm, pm))
        return StructureClass(UNMATCHED, host=g)
    for name, b in base_graphs().items():
        if name == "K2,3" or b.n != sup.base.n or b.m != sup.base.m:
            continue
        if name in EXACT_ONLY_BASES and g.n != b.n:
            continue
        gm = GraphMatcher(b.to_networkx(), sup.base.to_networkx())
        iso = next(gm.isomorphisms_iter(), None)
        if iso is None:
            continue
        bm = tuple(kept[iso[v]] for v in range(b.n))
        pm = {}
        for a, c in b.sorted_edges:
            ia, ic = iso[a], iso[c]
            p = sup.flat_paths[edge(ia, ic)][0]
            pm[(a, c)] = p if p[0] == bm[a] else p[::-1]
        return _base_result(g, name, SubdivisionModel(bm, pm))
    return StructureClass(UNMATCHED, host=g)


def _base_result(g: Graph, name: str, model: SubdivisionModel) -> StructureClass:
    b = base_graphs()[name]
    if not verify_subdivision_model(g, b, model) or sum(len(p) - 1 for p in model.path_map.values()) != g.m:
        raise InternalInvariantError(f"base model for {name} does not cover the host")
    return StructureClass(BASE, base=name, model=model, host=g)
