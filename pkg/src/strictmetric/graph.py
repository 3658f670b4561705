"""Simple undirected graphs and the structural primitives used everywhere else.

Vertices are dense 0-based integers.  Edges are stored as sorted pairs.
Every operation here is a pure function returning new objects; whenever a
transformation renumbers vertices the map is returned explicitly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx

from .errors import BudgetExceeded, Graph6Error, InvalidInput

Edge = tuple[int, int]
Path = tuple[int, ...]

DEFAULT_PATH_CAP = 100_000


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def path_edges(p: Sequence[int]) -> tuple[Edge, ...]:
    return _path_edges(p if isinstance(p, tuple) else tuple(p))


@lru_cache(maxsize=1 << 18)
def _path_edges(p: tuple) -> tuple[Edge, ...]:
    return tuple(edge(a, b) for a, b in zip(p, p[1:]))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {e} out of range for n={self.n}")
            norm.add(edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = edge(u, v)
            if e in seen:
                raise InvalidInput(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.sorted_edges)}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {edge(*e) for e in removed}
        return Graph(self.n, self.edges - drop)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, renumbered.  Returns (graph, new->old vertex list)."""
        old = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(old)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph.from_edges(len(old), es), old

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"


def graph_from_json(obj) -> Graph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        es = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad JSON graph: {exc}") from exc
    return Graph.from_edges(n, es)


def is_path_in(g: Graph, p: Sequence[int]) -> bool:
    """True when ``p`` is a simple path (possibly a single vertex) in ``g``."""
    if not p or len(set(p)) != len(p):
        return False
    if any(not (0 <= v < g.n) for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


# ---------------------------------------------------------------------------
# graph6

def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
        base = len(">>graph6<<")
    else:
        base = 0
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside graph6 range", base + i)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 8-byte size header", base + len(s))
        n, pos = 0, 8
        for ch in s[2:8]:
            n = (n << 6) | (ord(ch) - 63)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte size header", base + len(s))
        n, pos = 0, 4
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} adjacency bytes, got {len(body)}", base + len(s))
    if len(body) > need:
        raise Graph6Error("trailing garbage after adjacency data", base + pos + need)
    bits = []
    for ch in body:
        x = ord(ch) - 63
        bits.extend((x >> s_) & 1 for s_ in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    es = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                es.append((i, j))
            k += 1
    return Graph(n, frozenset(es))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield parse_graph6(line)


# ---------------------------------------------------------------------------
# connectivity

def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    gone = set(removed)
    seen = set(gone)
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp, stack = [s], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_two_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    return not any(len(components(g, [v])) > 1 for v in range(g.n))


def blocks(g: Graph) -> list[frozenset]:
    """Vertex sets of the biconnected components (bridges count as blocks)."""
    return sorted(
        (frozenset(b) for b in nx.biconnected_components(g.to_networkx())),
        key=lambda b: sorted(b),
    )


def bfs_distances(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# degree structure

def branch_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if g.degree(v) >= 3}


def _walk_flat(g: Graph, start: int, first: int, target: Optional[int] = None) -> Path:
    """Follow start -> first -> ... through degree-2 vertices until leaving them."""
    p = [start, first]
    while g.degree(p[-1]) == 2 and p[-1] != start and p[-1] != target:
        a, b = g.adj[p[-1]]
        nxt = a if a != p[-2] else b
        if nxt in p[1:]:
            break
        p.append(nxt)
    return tuple(p)


def flat_paths_between(g: Graph, x: int, y: int) -> list[Path]:
    """Flat (x,y)-paths of length >= 2: internal vertices all of degree 2."""
    out = []
    for z in g.adj[x]:
        if z == y or g.degree(z) != 2:
            continue
        p = _walk_flat(g, x, z, y)
        if p[-1] == y:
            out.append(p)
    return out


def compliant_edges(g: Graph) -> set[Edge]:
    return {(x, y) for x, y in g.edges if flat_paths_between(g, x, y)}


def compliant_reduction(g: Graph, descending: bool = False) -> tuple[Graph, list[Edge]]:
    """Delete compliant edges one at a time (lexicographic order) until none remain."""
    removed = []
    while True:
        ce = compliant_edges(g)
        if not ce:
            return g, removed
        e = max(ce) if descending else min(ce)
        removed.append(e)
        g = g.without_edges([e])


def remove_compliant_edges(g: Graph, descending: bool = False) -> Graph:
    return compliant_reduction(g, descending)[0]


@dataclass(frozen=True)
class SuppressionResult:
    """Outcome of suppressing every degree-2 vertex.

    ``base`` is the underlying simple graph of the suppressed multigraph;
    ``multiplicity`` counts parallel copies per base edge (loops appear as
    ``(a, a)``).  ``vertex_map[v]`` is the base vertex of ``v`` or ``None``
    when ``v`` was absorbed into an edge.  ``flat_paths[e]`` lists the
    original flat paths realising base edge ``e``, oriented low-to-high.
    """

    base: Graph
    multiplicity: dict
    multigraph: bool
    vertex_map: tuple
    flat_paths: dict
    unchanged: bool = False

    @property
    def kept(self) -> list[int]:
        return [v for v, b in enumerate(self.vertex_map) if b is not None]


def suppress_degree_two(g: Graph) -> SuppressionResult:
    kept = [v for v in range(g.n) if g.degree(v) != 2]
    if not kept:
        # a cycle (or the empty graph): nothing to suppress onto
        fp = {e: [e] for e in g.sorted_edges}
        return SuppressionResult(g, {e: 1 for e in g.edges}, False,
                                 tuple(range(g.n)), fp, unchanged=True)
    idx = {v: i for i, v in enumerate(kept)}
    seen_paths = set()
    flat: dict = {}
    for a in kept:
        for z in g.adj[a]:
            p = _walk_flat(g, a, z)
            key = min(p, p[::-1])
            if key in seen_paths:
                continue
            seen_paths.add(key)
            be = (idx[key[0]], idx[key[-1]])
            be = be if be[0] <= be[1] else be[::-1]
            flat.setdefault(be, []).append(key)
    mult = {e: len(ps) for e, ps in flat.items()}
    multigraph = any(c > 1 for c in mult.values()) or any(a == b for a, b in mult)
    base = Graph(len(kept), frozenset(e for e in mult if e[0] != e[1]))
    vmap = tuple(idx.get(v) for v in range(g.n))
    for ps in flat.values():
        ps.sort()
    return SuppressionResult(base, mult, multigraph, vmap, flat)


def subdivide(g: Graph, e: Edge, times: int = 1) -> Graph:
    """Replace edge ``e`` by a path with ``times`` new internal vertices."""
    u, v = edge(*e)
    if not g.has_edge(u, v):
        raise InvalidInput(f"edge {e} not in graph")
    es = set(g.edges) - {(u, v)}
    chain = [u] + list(range(g.n, g.n + times)) + [v]
    es.update(edge(a, b) for a, b in zip(chain, chain[1:]))
    return Graph(g.n + times, frozenset(es))


def subdivide_all(g: Graph, times: int = 1) -> Graph:
    out = g
    for e in g.sorted_edges:
        out = subdivide(out, e, times)
    return out


def contract_edge(g: Graph, e: Sequence[int]) -> tuple[Graph, list[int]]:
    """Contract ``e``; parallels merge, the loop is dropped.

    Returns the contracted graph and ``vertex_map`` (old vertex -> new vertex).
    The merged vertex keeps the position of the smaller endpoint.
    """
    u, v = edge(*e)
    if not g.has_edge(u, v):
        raise InvalidInput(f"edge {tuple(e)} not in graph")
    vmap = []
    k = 0
    for x in range(g.n):
        if x == v:
            vmap.append(-1)
        else:
            vmap.append(k)
            k += 1
    vmap[v] = vmap[u]
    es = {edge(vmap[a], vmap[b]) for a, b in g.edges if vmap[a] != vmap[b]}
    return Graph(g.n - 1, frozenset(es)), vmap


# ---------------------------------------------------------------------------
# paths and cycles

def enumerate_simple_paths(g: Graph, u: int, v: int, cap: int = DEFAULT_PATH_CAP) -> tuple[Path, ...]:
    """All simple (u,v)-paths in lexicographic order; BudgetExceeded beyond ``cap``.

    Results are memoised per (graph, u, v, cap).
    """
    return _simple_paths(g, u, v, cap)


@lru_cache(maxsize=65536)
def _simple_paths(g: Graph, u: int, v: int, cap: int) -> tuple[Path, ...]:
    if u == v:
        raise InvalidInput("path endpoints must differ")
    out: list[Path] = []
    path = [u]
    on = [False] * g.n
    on[u] = True

    def dfs(x: int) -> None:
        for y in g.adj[x]:
            if on[y]:
                continue
            if y == v:
                out.append(tuple(path) + (v,))
                if len(out) > cap:
                    raise BudgetExceeded(f"simple paths {u}-{v}", cap)
                continue
            on[y] = True
            path.append(y)
            dfs(y)
            path.pop()
            on[y] = False

    dfs(u)
    return tuple(out)


def simple_cycles(g: Graph) -> list[Path]:
    """Each simple cycle once, rooted at its minimum vertex, sorted by (length, sequence)."""
    out = []
    for s in range(g.n):
        path = [s]
        on = {s}

        def dfs(x: int) -> None:
            for y in g.adj[x]:
                if y == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif y > s and y not in on:
                    on.add(y)
                    path.append(y)
                    dfs(y)
                    path.pop()
                    on.discard(y)

        dfs(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def has_cycle(g: Graph, avoid: Iterable[int] = ()) -> bool:
    gone = set(avoid)
    vs = [v for v in range(g.n) if v not in gone]
    es = [e for e in g.edges if e[0] not in gone and e[1] not in gone]
    return len(es) > len(vs) - len(components(g, gone))


def find_disjoint_cycles(g: Graph) -> Optional[tuple[Path, Path]]:
    for c1 in simple_cycles(g):
        if not has_cycle(g, c1):
            continue
        vs, old = g.induced(set(range(g.n)) - set(c1))
        c2 = simple_cycles(vs)[0]
        return c1, tuple(old[x] for x in c2)
    return None


# ---------------------------------------------------------------------------
# named graphs

def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset(edge(i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def wheel(k: int) -> Graph:
    """W_k: a k-cycle on 1..k plus hub 0."""
    es = {(0, i) for i in range(1, k + 1)}
    es |= {edge(i, i % k + 1) for i in range(1, k + 1)}
    return Graph(k + 1, frozenset(es))


def wheel_with_chord() -> Graph:
    """W4': W4 plus one rim chord (5 vertices, 9 edges)."""
    w = wheel(4)
    return Graph(5, w.edges | {(1, 3)})


def prism() -> Graph:
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def from_one_based(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph.from_edges(n, [(u - 1, v - 1) for u, v in edges])


def disjoint_union(*gs: Graph) -> Graph:
    es = set()
    off = 0
    for g in gs:
        es |= {(u + off, v + off) for u, v in g.edges}
        off += g.n
    return Graph(off, frozenset(es))


def degree_sequence(g: Graph) -> list[int]:
    return sorted((g.degree(v) for v in range(g.n)), reverse=True)


def edge_multiset(paths: Iterable[Sequence[int]]) -> Counter:
    c: Counter = Counter()
    for p in paths:
        c.update(path_edges(p))
    return c
