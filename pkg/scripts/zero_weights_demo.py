"""Walk through the seven-vertex weighting with a persistent edge.

The weighting induces a consistent system whose only persistent edge is
3-4 (1-based).  The system is strictly metric, but no simply-inducing
weighting can vanish on 3-4; contracting that edge exposes a K2,4 system.
"""

from strictmetric.certificates import certificate
from strictmetric.metric import decide_strictly_metric, induced_system, realize_zero_on_persistent
from strictmetric.paths import contract_system, persistent_edges


def main() -> None:
    c = certificate("persistent")
    s = induced_system(c.graph, c.weights).system
    one = lambda p: "-".join(str(v + 1) for v in p)  # noqa: E731
    print("chosen paths:")
    for p in s.paths():
        print("  ", one(p))
    print("persistent edges:", [one(e) for e in sorted(persistent_edges(s))])
    print("strictly metric:", decide_strictly_metric(s).feasible)
    z = realize_zero_on_persistent(s)
    print("zero on persistent edges possible:", z.feasible)
    for i, m in z.farkas:
        p, q = z.direct.constraints.constraints[i]
        print(f"   {m} x [ |{one(p)}| < |{one(q)}| ]")
    k, vmap = contract_system(s, (2, 3))
    res = decide_strictly_metric(k)
    print(f"after contracting 3-4: {k.host.n} vertices, {k.host.m} edges, strictly metric: {res.feasible}")


if __name__ == "__main__":
    main()
