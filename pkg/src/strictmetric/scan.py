"""Corpus scan comparing forbidden-minor containment with the LP verdict.

One JSON line per input graph, keyed by graph6.  A strictly metrizable
graph containing a known minor-minimal non-s.m. graph contradicts minor
closure and aborts the scan; a minor-free graph that is not strictly
metrizable is only reported.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Optional

from .config import Budgets
from .errors import Graph6Error, InternalInvariantError
from .graph import is_connected, parse_graph6
from .sm import NOT_SM, SM, decide_sm_graph
from .structure import DISJOINT_CYCLES, UNMATCHED, classify_structure, forbidden_scan

SCHEMA_VERSION = 1


def corpus_lines() -> list[str]:
    """graph6 lines of every connected graph on at most six vertices."""
    text = resources.files("strictmetric").joinpath("data/connected_le6.g6").read_text()
    return [ln for ln in text.splitlines() if ln.strip()]


def _classifier_label(c) -> str:
    parts = []
    while c is not None:
        parts.append(f"{c.tag}({c.base})" if c.base else c.tag)
        c = c.inner
    return ">".join(parts)


def scan_record(g6: str, budgets: Budgets, timings: bool = False) -> dict:
    rec: dict = {"v": SCHEMA_VERSION, "graph6": g6}
    try:
        g = parse_graph6(g6)
    except Graph6Error as exc:
        rec["error"] = str(exc)
        return rec
    rec["n"], rec["m"] = g.n, g.m
    if not is_connected(g):
        rec["error"] = "graph is not connected"
        return rec
    dur = {}
    t = time.perf_counter()
    rep = forbidden_scan(g, budgets.search)
    dur["forbidden"] = (time.perf_counter() - t) * 1000
    t = time.perf_counter()
    cls = classify_structure(g)
    dur["classify"] = (time.perf_counter() - t) * 1000
    t = time.perf_counter()
    verdict = decide_sm_graph(g, budgets)
    dur["decide"] = (time.perf_counter() - t) * 1000

    rec["sm_verdict"] = verdict.status
    rec["forbidden_minors"] = rep.minors_found
    rec["forbidden_topminors"] = rep.topminors_found
    rec["search_budget_exceeded"] = rep.budget_exceeded
    rec["classifier"] = _classifier_label(cls)
    rec["budgets_used"] = {"systems": verdict.systems_checked, "expansions": verdict.expansions}
    if verdict.status == NOT_SM:
        rec["witness_source"] = verdict.source
    if timings:
        rec["durations_ms"] = {k: round(v, 3) for k, v in dur.items()}
    final = cls.final
    rec["_final_tag"] = final.tag
    return rec


@dataclass
class ScanSummary:
    records: int = 0
    skipped: int = 0
    errors: int = 0
    sm: int = 0
    not_sm: int = 0
    budget: int = 0
    hard_violations: list = field(default_factory=list)
    minor_free_not_sm: list = field(default_factory=list)  # open direction: reported only
    classifier_disagreements: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _check(rec: dict, summary: ScanSummary) -> None:
    if "error" in rec:
        summary.errors += 1
        return
    v = rec["sm_verdict"]
    summary.sm += v == SM
    summary.not_sm += v == NOT_SM
    summary.budget += v not in (SM, NOT_SM)
    hit = bool(rec["forbidden_minors"] or rec["forbidden_topminors"])
    if v == SM and hit:
        summary.hard_violations.append(rec["graph6"])
    if v == NOT_SM and not rec["forbidden_minors"] and not rec["search_budget_exceeded"]:
        summary.minor_free_not_sm.append(rec["graph6"])
    # matching a base is necessary, not sufficient: only an SM verdict on a
    # graph without a base match contradicts the classifier
    tag = rec["_final_tag"]
    if v == SM and tag in (DISJOINT_CYCLES, UNMATCHED):
        summary.classifier_disagreements.append(rec["graph6"])


def _worker(args):
    g6, budgets, timings = args
    return scan_record(g6, budgets, timings)


def existing_keys(out: Path) -> set[str]:
    keys = set()
    if out.exists():
        for line in out.read_text().splitlines():
            if line.strip():
                try:
                    keys.add(json.loads(line)["graph6"])
                except (json.JSONDecodeError, KeyError):
                    continue
    return keys


def conjecture_scan(
    graphs: Iterable[str],
    budgets: Budgets = Budgets(),
    out: Optional[Path] = None,
    workers: int = 1,
    timings: bool = False,
    strict: bool = True,
) -> ScanSummary:
    """Scan graph6 strings, appending records to ``out`` in input order.

    Keys already present in ``out`` are skipped.  With ``strict`` a hard
    violation raises InternalInvariantError after its record is written.
    """
    summary = ScanSummary()
    done = existing_keys(out) if out is not None else set()
    todo = []
    seen = set()
    for g6 in graphs:
        g6 = g6.strip()
        if not g6:
            continue
        if g6 in done or g6 in seen:
            summary.skipped += 1
            continue
        seen.add(g6)
        todo.append(g6)
    fh = open(out, "a") if out is not None else None
    try:
        jobs = [(g6, budgets, timings) for g6 in todo]
        if workers > 1 and len(jobs) > 1:
            with Pool(workers) as pool:
                results = pool.imap(_worker, jobs, chunksize=1)
                _consume(results, summary, fh, strict)
        else:
            _consume(map(_worker, jobs), summary, fh, strict)
    finally:
        if fh is not None:
            fh.close()
    return summary


def _consume(results, summary: ScanSummary, fh, strict: bool) -> None:
    for rec in results:
        _check(rec, summary)
        rec.pop("_final_tag", None)
        summary.records += 1
        if fh is not None:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
            fh.flush()
        if strict and summary.hard_violations:
            raise InternalInvariantError(
                f"graph {summary.hard_violations[-1]} is strictly metrizable yet contains a forbidden graph")
