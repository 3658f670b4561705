"""Deciding whether a graph is strictly metrizable.

A graph is strictly metrizable when every consistent path system on it is
strictly metric.  The decision reduces the graph (compliant edges, blocks)
and then checks each remaining 2-connected piece:

* a known non-strictly-metrizable graph found as a topological minor gives
  a partial system whose lift already forces infeasibility, so the first
  consistent extension of it is a witness;
* otherwise every consistent system is enumerated and tested by LP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .certificates import Certificate, builtin_certificates
from .config import Budgets
from .errors import BudgetExceeded, InternalInvariantError, InvalidInput
from .graph import Graph, Path, blocks, compliant_reduction, is_connected, is_two_connected
from .metric import FeasibilityResult, decide_strictly_metric
from .paths import PathSystem, enumerate_consistent_systems
from .structure import SubdivisionModel, topological_minor

SM = "SM"
NOT_SM = "NotSM"
BUDGET = "budget_exceeded"


@dataclass
class SMVerdict:
    status: str
    witness: Optional[PathSystem] = None  # consistent, not strictly metric
    witness_vertices: Optional[tuple] = None  # witness host vertex -> input vertex
    certificate: Optional[FeasibilityResult] = None
    source: Optional[str] = None  # "zoo:<label>" or "enumeration"
    removed: list = field(default_factory=list)  # compliant edges deleted along the way
    systems_checked: int = 0
    expansions: int = 0
    budget_what: Optional[str] = None
    lifted: bool = False  # witness lives on the whole input graph

    def to_json(self) -> dict:
        out = {"verdict": self.status, "systems_checked": self.systems_checked,
               "expansions": self.expansions}
        if self.removed:
            out["compliant_removed"] = [list(e) for e in self.removed]
        if self.status == NOT_SM:
            out["source"] = self.source
            out["witness"] = self.witness.to_json()
            out["witness_vertices"] = list(self.witness_vertices)
            out["lifted"] = self.lifted
            out["farkas"] = self.certificate.to_json()["farkas"]
        if self.status == BUDGET:
            out["budget"] = self.budget_what
        return out


@dataclass
class _Tally:
    systems: int = 0
    expansions: int = 0
    removed: list = field(default_factory=list)


def _lift_path(p: Path, model: SubdivisionModel) -> Path:
    out = [model.branch_map[p[0]]]
    for a, b in zip(p, p[1:]):
        seg = model.path_map[(a, b)] if a < b else model.path_map[(b, a)][::-1]
        out.extend(seg[1:])
    return tuple(out)


def _certificates_by_size() -> list[Certificate]:
    certs = [c for c in builtin_certificates() if not c.forced_zero]
    return sorted(certs, key=lambda c: (c.graph.n, c.graph.m, c.label))


def _via_zoo(b: Graph, budgets: Budgets, tally: _Tally):
    for cert in _certificates_by_size():
        model = topological_minor(b, cert.graph, budgets.search)
        if model is None:
            continue
        fixed = [_lift_path(p, model) for p in cert.listed_paths]
        stats: dict = {}
        try:
            first = next(enumerate_consistent_systems(b, budgets.enumeration, budgets.path_cap, fixed, stats), None)
        finally:
            tally.expansions += stats.get("expansions", 0)
        if first is None:
            continue
        tally.systems += 1
        res = decide_strictly_metric(first, budgets.path_cap)
        if res.feasible:
            raise InternalInvariantError(f"lifted {cert.label} certificate produced a strictly metric system")
        return first, res, f"zoo:{cert.label}"
    return None


def _exhaust(b: Graph, budgets: Budgets, tally: _Tally):
    stats: dict = {}
    try:
        for s in enumerate_consistent_systems(b, budgets.enumeration, budgets.path_cap, (), stats):
            tally.systems += 1
            if tally.systems > budgets.systems:
                raise BudgetExceeded("consistent systems examined", budgets.systems)
            res = decide_strictly_metric(s, budgets.path_cap)
            if not res.feasible:
                return s, res, "enumeration"
    finally:
        tally.expansions += stats.get("expansions", 0)
    return None


def _decide_piece(h: Graph, verts: tuple, budgets: Budgets, tally: _Tally, use_zoo: bool):
    """Recursive reduction; returns (system, result, source, vertex map) or None."""
    reduced, removed = compliant_reduction(h)
    tally.removed.extend((verts[a], verts[b]) for a, b in removed)
    if reduced.n >= 3 and is_two_connected(reduced):
        found = _via_zoo(reduced, budgets, tally) if use_zoo else None
        if found is None:
            found = _exhaust(reduced, budgets, tally)
        return None if found is None else found + (verts,)
    for blk in blocks(reduced):
        if len(blk) < 3:
            continue
        sub, old = reduced.induced(sorted(blk))
        hit = _decide_piece(sub, tuple(verts[v] for v in old), budgets, tally, use_zoo)
        if hit is not None:
            return hit
    return None


def decide_sm_graph(g: Graph, budgets: Budgets = Budgets(), use_zoo: bool = True,
                    lift: bool = True) -> SMVerdict:
    """Three-valued strict-metrizability verdict for a connected graph.

    With ``use_zoo`` off, every block is settled by plain enumeration and the
    witness is the first failing system in enumeration order.
    """
    if not is_connected(g):
        raise InvalidInput("graph must be connected")
    tally = _Tally()
    try:
        hit = _decide_piece(g, tuple(range(g.n)), budgets, tally, use_zoo)
    except BudgetExceeded as exc:
        return SMVerdict(BUDGET, removed=tally.removed, systems_checked=tally.systems,
                         expansions=tally.expansions, budget_what=str(exc))
    if hit is None:
        return SMVerdict(SM, removed=tally.removed, systems_checked=tally.systems, expansions=tally.expansions)
    system, res, source, verts = hit
    verdict = SMVerdict(NOT_SM, system, verts, res, source, tally.removed, tally.systems, tally.expansions)
    if system.host == g and verts == tuple(range(g.n)):
        verdict.lifted = True
    elif lift:
        ext = lift_witness(g, system, verts, budgets)
        if ext is not None:
            verdict.witness, verdict.certificate = ext
            verdict.witness_vertices = tuple(range(g.n))
            verdict.lifted = True
    return verdict


def lift_witness(g: Graph, s: PathSystem, verts: tuple, budgets: Budgets):
    """Extend a witness on a piece of ``g`` to a consistent system on all of ``g``.

    Simple paths between vertices of a block stay inside it and extra edges
    only add constraints, so any extension is again not strictly metric.
    """
    fixed = [tuple(verts[v] for v in p) for p in s.paths()]
    try:
        ext = next(enumerate_consistent_systems(g, budgets.enumeration, budgets.path_cap, fixed), None)
    except BudgetExceeded:
        return None
    if ext is None:
        return None
    res = decide_strictly_metric(ext, budgets.path_cap)
    if res.feasible:
        raise InternalInvariantError("lifted witness became strictly metric")
    return ext, res
