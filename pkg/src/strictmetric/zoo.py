"""Known non-strictly-metrizable graphs, as 1-based edge lists.

``TOPOLOGICAL_EDGES`` holds nine topologically minimal examples, numbered
1-9.  The six minor-minimal ones are a subset: the first five coincide with
topological graphs 1-5 and the sixth is the theta graph with three length-3
paths (topological graph 9).
"""

from __future__ import annotations

from .graph import Graph, complete_bipartite, complete_graph, cycle_graph, from_one_based, wheel, wheel_with_chord

TOPOLOGICAL_EDGES = {
    1: (6, [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)]),
    2: (6, [(1, 2), (1, 3), (2, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)]),
    3: (6, [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]),
    4: (7, [(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6), (1, 7), (3, 7), (5, 7)]),
    5: (7, [(1, 2), (1, 5), (1, 6), (2, 3), (3, 4), (3, 7), (4, 5), (4, 7), (6, 7)]),
    6: (7, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 6), (3, 6), (1, 7), (4, 7)]),
    7: (8, [(1, 2), (1, 5), (1, 8), (2, 3), (3, 4), (3, 6), (4, 5), (4, 7), (6, 8), (7, 8)]),
    8: (8, [(1, 2), (1, 7), (1, 4), (2, 3), (3, 5), (3, 4), (5, 6), (5, 8), (6, 7), (7, 8)]),
    9: (8, [(1, 2), (1, 6), (2, 3), (2, 7), (3, 4), (4, 5), (5, 6), (5, 8), (7, 8)]),
}

TOPOLOGICAL_NAMES = {1: "K2,4", 2: "prism", 3: "K3,3"}

# minor-minimal graph k -> topological graph it equals
MINOR_TO_TOPOLOGICAL = {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 9}


def topological_graph(k: int) -> Graph:
    n, es = TOPOLOGICAL_EDGES[k]
    return from_one_based(n, es)


def minor_graph(k: int) -> Graph:
    return topological_graph(MINOR_TO_TOPOLOGICAL[k])


def topological_zoo() -> dict[str, Graph]:
    return {f"zoo{k}": topological_graph(k) for k in TOPOLOGICAL_EDGES}


def minor_zoo() -> dict[str, Graph]:
    return {f"minor{k}": minor_graph(k) for k in MINOR_TO_TOPOLOGICAL}


# bases recognised by the structure classifier; K5 and W5 only unsubdivided
def base_graphs() -> dict[str, Graph]:
    return {
        "K2,3": complete_bipartite(2, 3),
        "K4": complete_graph(4),
        "W4": wheel(4),
        "W4'": wheel_with_chord(),
        "K5": complete_graph(5),
        "W5": wheel(5),
    }


EXACT_ONLY_BASES = ("K5", "W5")


def named_graph(name: str) -> Graph:
    """Resolve a target name used on the command line."""
    key = name.strip()
    table = {**base_graphs(), **topological_zoo(), **minor_zoo()}
    table.update({"K2,4": complete_bipartite(2, 4), "K3,3": complete_bipartite(3, 3),
                  "prism": topological_graph(2)})
    if key in table:
        return table[key]
    low = key.lower()
    if low.startswith("k") and low[1:].isdigit():
        return complete_graph(int(low[1:]))
    if low.startswith("c") and low[1:].isdigit():
        return cycle_graph(int(low[1:]))
    if low.startswith("w") and low[1:].isdigit():
        return wheel(int(low[1:]))
    raise KeyError(name)
