"""Non-strict-metricity certificates: a graph, a partial path system and a
list of strict inequalities whose sum telescopes to ``0 < 0``.

Data lives in ``data/certificates.json`` with 1-based vertex labels; this
module converts to 0-based on load and back on output.  Inequalities are
stored as edge lists and rebuilt into paths here.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .errors import InvalidInput
from .graph import DEFAULT_PATH_CAP, Edge, Graph, Path, edge, is_path_in, path_edges
from .metric import STRICT, WeightFunction, constraints_for_paths, feasibility, verify_farkas
from .paths import DEFAULT_ENUM_BUDGET, PathSystem, check_partial, enumerate_consistent_systems

OFFSET = 1  # data files are 1-based


@dataclass
class Certificate:
    label: str
    graph: Graph
    listed_paths: list  # 0-based Paths
    inequalities: list  # (lhs Path, rhs Path); lhs is strictly shorter
    forced_zero: frozenset = frozenset()
    residual: dict = field(default_factory=dict)  # expected all-ones combination
    weights: Optional[dict] = None  # optional reference weighting

    def to_json(self) -> dict:
        one = lambda p: [v + OFFSET for v in p]  # noqa: E731
        out = {
            "label": self.label,
            "n": self.graph.n,
            "edges": [one(e) for e in self.graph.sorted_edges],
            "paths": [one(p) for p in self.listed_paths],
            "inequalities": [{"lhs": [one(e) for e in path_edges(l)], "rhs": [one(e) for e in path_edges(r)]}
                             for l, r in self.inequalities],
        }
        if self.forced_zero:
            out["forced_zero"] = [one(e) for e in sorted(self.forced_zero)]
        if self.residual:
            out["residual"] = [one(e) + [int(k)] for e, k in sorted(self.residual.items())]
        if self.weights is not None:
            out["weights"] = [one(e) + [int(w)] for e, w in sorted(self.weights.items())]
        return out


def _path_from_edges(es: Sequence[Edge], start: int, end: int) -> Optional[Path]:
    """Order an edge list into a simple start-end path, or None."""
    left = Counter(edge(*e) for e in es)
    if any(k > 1 for k in left.values()):
        return None
    seq = [start]
    while left:
        cur = seq[-1]
        nxt = [e for e in left if cur in e]
        if len(nxt) != 1:
            return None
        e = nxt[0]
        del left[e]
        seq.append(e[0] if e[1] == cur else e[1])
    if seq[-1] != end or len(set(seq)) != len(seq):
        return None
    return tuple(seq)


def certificate_from_json(obj) -> Certificate:
    try:
        label = str(obj["label"])
        n = int(obj["n"])
        zero = lambda p: tuple(int(v) - OFFSET for v in p)  # noqa: E731
        g = Graph.from_edges(n, [zero(e) for e in obj["edges"]])
        listed = [zero(p) for p in obj["paths"]]
        by_edges = {frozenset(path_edges(p)): p for p in listed}
        ineqs = []
        for k, item in enumerate(obj["inequalities"]):
            lhs_e = frozenset(edge(*zero(e)) for e in item["lhs"])
            lhs = by_edges.get(lhs_e)
            if lhs is None:
                raise InvalidInput(f"{label}: inequality {k + 1} lhs is not a listed path")
            rhs = _path_from_edges([zero(e) for e in item["rhs"]], lhs[0], lhs[-1])
            if rhs is None:
                raise InvalidInput(f"{label}: inequality {k + 1} rhs edges do not form a path between the lhs endpoints")
            ineqs.append((lhs, rhs))
        fz = frozenset(edge(*zero(e)) for e in obj.get("forced_zero", []))
        res = {edge(*zero(r[:2])): int(r[2]) for r in obj.get("residual", [])}
        w = obj.get("weights")
        weights = {edge(*zero(r[:2])): Fraction(r[2]) for r in w} if w is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed certificate: {exc}") from exc
    return Certificate(label, g, listed, ineqs, fz, res, weights)


def load_certificates(text: str) -> list[Certificate]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"certificate file is not JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("vertex_numbering") != "1-based" or "certificates" not in doc:
        raise InvalidInput("certificate file must declare 1-based numbering and a certificate list")
    return [certificate_from_json(c) for c in doc["certificates"]]


def builtin_certificates() -> list[Certificate]:
    text = resources.files("strictmetric").joinpath("data/certificates.json").read_text()
    certs = load_certificates(text)
    for c in certs:
        bad = structural_failures(c)
        if bad:
            raise InvalidInput(f"built-in certificate {c.label}: {bad[0]}")
    return certs


def certificate(label: str) -> Certificate:
    for c in builtin_certificates():
        if c.label == label:
            return c
    raise KeyError(label)


# ---------------------------------------------------------------------------
# verification

def structural_failures(c: Certificate) -> list[str]:
    out = []
    g = c.graph
    for p in c.listed_paths:
        if not is_path_in(g, p):
            out.append(f"listed path {_one(p)} is not a simple path of the graph")
    listed = {tuple(p) for p in c.listed_paths} | {tuple(p[::-1]) for p in c.listed_paths}
    for k, (l, r) in enumerate(c.inequalities, start=1):
        if tuple(l) not in listed:
            out.append(f"inequality {k}: lhs {_one(l)} is not listed")
        if {l[0], l[-1]} != {r[0], r[-1]}:
            out.append(f"inequality {k}: lhs and rhs endpoints differ")
        if tuple(l) == tuple(r) or tuple(l) == tuple(r[::-1]):
            out.append(f"inequality {k}: rhs equals lhs")
        if not is_path_in(g, r):
            out.append(f"inequality {k}: rhs {_one(r)} is not a simple path of the graph")
    if not c.forced_zero <= g.edges:
        out.append("forced-zero edge missing from the graph")
    viol = check_partial(c.listed_paths)
    if viol is not None:
        out.append(f"listed paths {_one(viol.first)} and {_one(viol.second)}: {viol.reason}")
    return out


def _one(p) -> tuple:
    return tuple(v + OFFSET for v in p)


def combination(c: Certificate) -> dict[Edge, int]:
    """All-ones sum of the (rhs - lhs) edge-incidence vectors, nonzero entries only."""
    tot: Counter = Counter()
    for l, r in c.inequalities:
        tot.update(path_edges(r))
        tot.subtract(path_edges(l))
    return {e: k for e, k in tot.items() if k}


@dataclass
class CertificateReport:
    label: str
    structural: list  # failure messages for clause (i)
    cancellation_ok: bool
    combination: dict
    lp_infeasible: bool
    farkas: Optional[list] = None
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "failures": self.failures,
            "combination": [[u + OFFSET, v + OFFSET, k] for (u, v), k in sorted(self.combination.items())],
            "lp_infeasible": self.lp_infeasible,
        }


def verify_certificate(c: Certificate, cap: int = DEFAULT_PATH_CAP) -> CertificateReport:
    failures = []
    structural = structural_failures(c)
    failures += [f"(i) {m}" for m in structural]

    comb = combination(c)
    expected = {e: k for e, k in c.residual.items() if k}
    cancel = comb == expected and all(e in c.forced_zero for e in expected)
    if not cancel:
        offenders = [k for k, (l, r) in enumerate(c.inequalities, start=1)
                     if set(path_edges(l)) & set(comb) or set(path_edges(r)) & set(comb)]
        failures.append(f"(ii) all-ones combination leaves {_fmt_vec(comb)}; inequalities involved {offenders}")

    lp_ok = False
    farkas = None
    if not structural:
        cs = constraints_for_paths(c.graph, c.listed_paths, STRICT, c.forced_zero, cap)
        res = feasibility(cs)
        if res.feasible:
            failures.append("(iii) strict constraints on the listed pairs are feasible")
        elif not verify_farkas(cs, res.farkas):
            failures.append("(iii) Farkas certificate failed verification")
        else:
            lp_ok = True
            farkas = [(cs.constraints[i], m) for i, m in res.farkas]
    return CertificateReport(c.label, structural, cancel, comb, lp_ok, farkas, failures)


def _fmt_vec(v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(f"{k}*w{a + OFFSET}{b + OFFSET}" for (a, b), k in sorted(v.items()))


def weights_satisfy(c: Certificate) -> bool:
    """True when the reference weights make every inequality hold strictly."""
    if c.weights is None:
        return False
    w = WeightFunction(c.graph, c.weights)
    return all(w.length(l) < w.length(r) for l, r in c.inequalities)


def extend_to_full_system(c: Certificate, budget: int = DEFAULT_ENUM_BUDGET) -> Optional[PathSystem]:
    """First consistent system on the certificate graph containing every listed path."""
    viol = check_partial(c.listed_paths)
    if viol is not None:
        raise InvalidInput(f"listed paths are not intersection-closed: {viol.reason}")
    for s in enumerate_consistent_systems(c.graph, budget=budget, fixed=c.listed_paths):
        return s
    return None
