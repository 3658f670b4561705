"""Write every connected graph on 1..6 vertices (up to isomorphism) as graph6.

Source: the networkx graph atlas, which lists all graphs on up to 7 vertices.
Output order: atlas order (vertices, then edges, then degree sequence).
"""

import argparse
from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from strictmetric.graph import Graph, to_graph6

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "strictmetric" / "data" / "connected_le6.g6"


def connected_atlas(max_n: int):
    for h in graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield Graph.from_edges(h.number_of_nodes(), h.edges())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    lines = [to_graph6(g) for g in connected_atlas(args.max_n)]
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {args.out}")


if __name__ == "__main__":
    main()
