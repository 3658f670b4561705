"""Consistent path systems: validation, trees, persistence, contraction, enumeration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Optional, Sequence, Union

from .errors import BudgetExceeded, InconsistentSystem, InvalidInput, NotPersistent
from .graph import (
    DEFAULT_PATH_CAP,
    Edge,
    Graph,
    Path,
    bfs_distances,
    contract_edge,
    edge,
    enumerate_simple_paths,
    graph_from_json,
    is_connected,
    is_path_in,
    path_edges,
)

DEFAULT_ENUM_BUDGET = 10_000_000


def _orient(p: Sequence[int]) -> Path:
    p = tuple(p)
    return p if p[0] < p[-1] else p[::-1]


class PathSystem:
    """One chosen simple path per unordered pair of distinct vertices.

    Paths are stored oriented from the smaller endpoint; ``path(u, v)``
    returns the chosen path read from ``u`` to ``v``.  Instances are
    immutable and hashable.
    """

    __slots__ = ("host", "_paths", "_hash")

    def __init__(self, host: Graph, paths: Union[Mapping, Sequence[Sequence[int]]]):
        if isinstance(paths, Mapping):
            items = list(paths.values())
        else:
            items = list(paths)
        table: dict[Edge, Path] = {}
        for p in items:
            p = tuple(int(x) for x in p)
            if len(p) < 2:
                raise InvalidInput(f"path {p} has fewer than two vertices")
            if not is_path_in(host, p):
                raise InvalidInput(f"{p} is not a simple path of the host")
            key = edge(p[0], p[-1])
            if key in table:
                raise InvalidInput(f"two paths given for pair {key}")
            table[key] = _orient(p)
        need = host.n * (host.n - 1) // 2
        if len(table) != need:
            missing = [pr for pr in combinations(range(host.n), 2) if pr not in table]
            raise InvalidInput(f"missing paths for pairs {missing[:5]}")
        self.host = host
        self._paths = table
        self._hash = hash((host, tuple(sorted(table.items()))))

    def path(self, u: int, v: int) -> Path:
        p = self._paths[edge(u, v)]
        return p if p[0] == u else p[::-1]

    def pairs(self) -> list[Edge]:
        return sorted(self._paths)

    def paths(self) -> list[Path]:
        return [self._paths[k] for k in sorted(self._paths)]

    def items(self):
        return sorted(self._paths.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, PathSystem) and self.host == other.host
                and self._paths == other._paths)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PathSystem(n={self.host.n}, paths={self.paths()})"

    def to_json(self) -> dict:
        return {"graph": self.host.to_json(), "paths": [list(p) for p in self.paths()]}

    @classmethod
    def from_json(cls, obj) -> "PathSystem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            g = graph_from_json(obj["graph"])
            return cls(g, obj["paths"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad JSON path system: {exc}") from exc

    @property
    def used_edges(self) -> frozenset:
        return frozenset(e for p in self._paths.values() for e in path_edges(p))


# ---------------------------------------------------------------------------
# consistency

@dataclass(frozen=True)
class Violation:
    first: Path
    second: Path
    shared_vertices: frozenset
    shared_edges: frozenset
    reason: str


def _intersection(p: Path, q: Path) -> tuple[frozenset, frozenset]:
    vs = frozenset(p) & frozenset(q)
    es = frozenset(path_edges(p)) & frozenset(path_edges(q))
    return vs, es


def _as_path(vs: frozenset, es: frozenset) -> Optional[Path]:
    """The vertex sequence if (vs, es) is a path, else None."""
    if len(vs) == 1:
        return (next(iter(vs)),)
    deg = {v: 0 for v in vs}
    nb: dict[int, list[int]] = {v: [] for v in vs}
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
        nb[a].append(b)
        nb[b].append(a)
    ends = [v for v in vs if deg[v] == 1]
    if len(es) != len(vs) - 1 or max(deg.values()) > 2 or len(ends) != 2:
        return None
    start = min(ends)
    seq = [start]
    prev = None
    while len(seq) < len(vs):
        cur = seq[-1]
        nxt = [w for w in nb[cur] if w != prev]
        if not nxt:
            return None
        prev = cur
        seq.append(nxt[0])
    return tuple(seq)


def check_consistent(s: PathSystem) -> Optional[Violation]:
    """None when ``s`` is intersection-closed, else the first violating pair of paths.

    Checked literally: for every two stored paths with a non-empty
    intersection, that intersection must be a path, and when it has at least
    one edge it must be the stored path for its endpoints.
    """
    ps = s.paths()
    for p, q in combinations(ps, 2):
        vs, es = _intersection(p, q)
        if not vs:
            continue
        seq = _as_path(vs, es)
        if seq is None:
            return Violation(p, q, vs, es, "intersection is not a path")
        if len(seq) >= 2 and _orient(seq) != s.path(*sorted((seq[0], seq[-1]))):
            return Violation(p, q, vs, es, f"intersection {seq} is not the chosen path")
    return None


def check_partial(paths: Sequence[Sequence[int]]) -> Optional[Violation]:
    """Intersection-closure restricted to a partial list of paths.

    At most one path per pair; every non-empty pairwise intersection is a
    path, and it equals the listed path for its endpoints when one is listed.
    """
    table: dict[Edge, Path] = {}
    for p in paths:
        p = _orient(tuple(p))
        key = (p[0], p[-1])
        if key in table and table[key] != p:
            return Violation(table[key], p, frozenset(), frozenset(), "two paths listed for one pair")
        table[key] = p
    for p, q in combinations(sorted(table.values()), 2):
        vs, es = _intersection(p, q)
        if not vs:
            continue
        seq = _as_path(vs, es)
        if seq is None:
            return Violation(p, q, vs, es, "intersection is not a path")
        if len(seq) >= 2:
            o = _orient(seq)
            listed = table.get((o[0], o[-1]))
            if listed is not None and listed != o:
                return Violation(p, q, vs, es, f"intersection {seq} differs from the listed path")
    return None


def is_consistent(s: PathSystem) -> bool:
    return check_consistent(s) is None


def is_neighborly(s: PathSystem) -> bool:
    return all(s.path(u, v) == (u, v) for u, v in s.host.edges)


# ---------------------------------------------------------------------------
# trees and persistence

@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: dict

    def path_to(self, x: int) -> Path:
        seq = [x]
        while seq[-1] != self.root:
            seq.append(self.parent[seq[-1]])
        return tuple(reversed(seq))

    @property
    def edges(self) -> frozenset:
        return frozenset(edge(c, p) for c, p in self.parent.items())


def tree_of_root(s: PathSystem, x: int) -> RootedTree:
    parent: dict[int, int] = {}
    for y in range(s.host.n):
        if y == x:
            continue
        p = s.path(x, y)
        for a, b in zip(p, p[1:]):
            if parent.setdefault(b, a) != a:
                raise InconsistentSystem(
                    f"paths from {x} reach {b} via both {parent[b]} and {a}")
    t = RootedTree(x, parent)
    for y in parent:
        if t.path_to(y) != s.path(x, y):
            raise InconsistentSystem(f"tree at {x} does not reproduce P[{x},{y}]")
    return t


def persistent_edges(s: PathSystem) -> set[Edge]:
    """Edges uv such that every x reaches v through u or u through v."""
    out = set()
    n = s.host.n
    for u, v in s.host.edges:
        ok = True
        for x in range(n):
            if x == u:
                good = s.path(u, v) == (u, v)
            elif x == v:
                good = s.path(v, u) == (v, u)
            else:
                pu, pv = s.path(x, u), s.path(x, v)
                good = pv == pu + (v,) or pu == pv + (u,)
            if not good:
                ok = False
                break
        if ok:
            out.add((u, v))
    return out


def persistent_edges_by_trees(s: PathSystem) -> set[Edge]:
    common = set(s.host.edges)
    for x in range(s.host.n):
        common &= tree_of_root(s, x).edges
    return common


def _non_persistence_witness(s: PathSystem, u: int, v: int) -> int:
    for x in range(s.host.n):
        if x in (u, v):
            if s.path(u, v) != (u, v):
                return x
            continue
        pu, pv = s.path(x, u), s.path(x, v)
        if not (pv == pu + (v,) or pu == pv + (u,)):
            return x
    raise AssertionError("edge is persistent")


def contract_path(p: Path, vmap: Sequence[int]) -> Path:
    out = []
    for x in p:
        y = vmap[x]
        if not out or out[-1] != y:
            out.append(y)
    return tuple(out)


def contract_system(s: PathSystem, e: Sequence[int]) -> tuple[PathSystem, list[int]]:
    """The system P/e on G/e.  Returns (system, vertex map old -> new)."""
    u, v = edge(*e)
    if not s.host.has_edge(u, v):
        raise InvalidInput(f"edge {tuple(e)} not in host")
    if (u, v) not in persistent_edges(s):
        raise NotPersistent((u, v), _non_persistence_witness(s, u, v))
    h, vmap = contract_edge(s.host, (u, v))
    reps: dict[int, list[int]] = {}
    for x in range(s.host.n):
        reps.setdefault(vmap[x], []).append(x)
    chosen = []
    for a, b in combinations(range(h.n), 2):
        images = {contract_path(s.path(x, y), vmap) for x in reps[a] for y in reps[b]}
        if len(images) != 1:
            raise InconsistentSystem(f"contracted path for {(a, b)} is not well defined")
        chosen.append(images.pop())
    return PathSystem(h, chosen), vmap


# ---------------------------------------------------------------------------
# enumeration

class PathCatalog:
    """All simple paths per vertex pair of a graph, computed once."""

    def __init__(self, g: Graph, cap: int = DEFAULT_PATH_CAP):
        self.graph = g
        self.cap = cap
        self._cache: dict[Edge, list[Path]] = {}

    def between(self, u: int, v: int) -> list[Path]:
        key = edge(u, v)
        if key not in self._cache:
            self._cache[key] = enumerate_simple_paths(self.graph, key[0], key[1], self.cap)
        return self._cache[key]


def pair_order(g: Graph) -> list[Edge]:
    dist = [bfs_distances(g, s) for s in range(g.n)]
    return sorted(combinations(range(g.n), 2), key=lambda pr: (dist[pr[0]][pr[1]], pr))


class _Search:
    """Backtracking over pair choices with subpath-closure propagation.

    A choice for pair {u,v} forces every subpath of it.  A complete,
    subpath-closed assignment is exactly an intersection-closed system.
    """

    def __init__(self, g: Graph, budget: int, cap: int, fixed: Sequence[Sequence[int]] = ()):
        self.g = g
        self.budget = budget
        self.expansions = 0
        self.catalog = PathCatalog(g, cap)
        self.order = pair_order(g)
        self.assigned: dict[Edge, Path] = {}
        self.trail: list[Edge] = []
        self.fixed_ok = True
        for p in fixed:
            if not self._assign(_orient(p)):
                self.fixed_ok = False
                break

    def _assign(self, p: Path) -> bool:
        mark = len(self.trail)
        k = len(p)
        for i in range(k - 1):
            for j in range(i + 1, k):
                sub = p[i:j + 1]
                key = (sub[0], sub[-1]) if sub[0] < sub[-1] else (sub[-1], sub[0])
                cur = self.assigned.get(key)
                if cur is None:
                    self.assigned[key] = sub if sub[0] < sub[-1] else sub[::-1]
                    self.trail.append(key)
                elif cur != (sub if sub[0] < sub[-1] else sub[::-1]):
                    self._undo(mark)
                    return False
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            del self.assigned[self.trail.pop()]

    def run(self) -> Iterator[dict]:
        if not self.fixed_ok:
            return
        yield from self._rec(0)

    def _rec(self, k: int) -> Iterator[dict]:
        order = self.order
        while k < len(order) and order[k] in self.assigned:
            k += 1
        if k == len(order):
            yield dict(self.assigned)
            return
        u, v = order[k]
        for p in self.catalog.between(u, v):
            self.expansions += 1
            if self.expansions > self.budget:
                raise BudgetExceeded("consistent system enumeration", self.budget)
            mark = len(self.trail)
            if self._assign(p):
                yield from self._rec(k + 1)
                self._undo(mark)


def enumerate_consistent_systems(
    g: Graph,
    budget: int = DEFAULT_ENUM_BUDGET,
    cap: int = DEFAULT_PATH_CAP,
    fixed: Sequence[Sequence[int]] = (),
    stats: Optional[dict] = None,
) -> Iterator[PathSystem]:
    """Every consistent path system on ``g`` exactly once, deterministically.

    ``fixed`` paths (and all their subpaths) are imposed before the search.
    Exceeding ``budget`` node expansions raises BudgetExceeded.
    """
    if not is_connected(g):
        raise InvalidInput("host graph must be connected")
    for p in fixed:
        if not is_path_in(g, p) or len(p) < 2:
            raise InvalidInput(f"fixed path {tuple(p)} is not a path of the host")
    search = _Search(g, budget, cap, fixed)
    try:
        for table in search.run():
            yield PathSystem(g, table)
    finally:
        if stats is not None:
            stats["expansions"] = search.expansions


def count_consistent_systems(g: Graph, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    return sum(1 for _ in enumerate_consistent_systems(g, budget))


def unique_path_system(g: Graph) -> PathSystem:
    """The only path system of a tree."""
    systems = list(enumerate_consistent_systems(g))
    if len(systems) != 1:
        raise InvalidInput("graph is not a tree")
    return systems[0]
