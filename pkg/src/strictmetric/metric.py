"""Exact feasibility of (strict) shortest-path constraints on edge weights.

A path system is strictly metric when some positive weighting makes every
chosen path the unique shortest path between its endpoints.  Each pair
contributes one linear constraint per alternate simple path, so deciding
strict metricity is an LP feasibility question.  Homogeneity lets us replace
the strict inequalities by margin maximisation over the unit box.

Witnesses and infeasibility certificates are re-checked by code that does not
look at the solver's internals (``verify_witness`` / ``verify_farkas``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InconsistentSystem, InternalInvariantError, InvalidInput
from .graph import (
    DEFAULT_PATH_CAP,
    Edge,
    Graph,
    Path,
    edge,
    enumerate_simple_paths,
    is_connected,
    path_edges,
)
from .paths import PathSystem, Violation, check_consistent, contract_system, persistent_edges
from .simplex import OPTIMAL, solve_standard

STRICT = "strict"
NON_STRICT = "non-strict"


# ---------------------------------------------------------------------------
# rationals in JSON

def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InvalidInput(f"rational must be a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad rational {s!r}") from exc


def _integer_scale(values: Iterable[Fraction]) -> Fraction:
    """Factor that turns ``values`` into coprime integers (1 if all zero)."""
    vals = [Fraction(v) for v in values if v]
    if not vals:
        return Fraction(1)
    den = lcm(*(v.denominator for v in vals))
    g = 0
    for v in vals:
        g = gcd(g, v.numerator * (den // v.denominator))
    return Fraction(den, g)


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class WeightFunction:
    host: Graph
    weights: Mapping[Edge, Fraction]

    def __post_init__(self):
        w = {edge(*e): Fraction(v) for e, v in dict(self.weights).items()}
        if set(w) != set(self.host.edges):
            raise InvalidInput("weight domain must equal the host edge set")
        object.__setattr__(self, "weights", w)

    def __getitem__(self, e: Sequence[int]) -> Fraction:
        return self.weights[edge(*e)]

    def length(self, p: Sequence[int]) -> Fraction:
        return sum((self.weights[e] for e in path_edges(p)), Fraction(0))

    def scaled(self, lam) -> "WeightFunction":
        return WeightFunction(self.host, {e: v * lam for e, v in self.weights.items()})

    def zero_edges(self) -> set[Edge]:
        return {e for e, v in self.weights.items() if v == 0}

    def to_json(self) -> dict:
        return {"weights": [[u, v, fraction_to_str(self.weights[(u, v)])] for u, v in self.host.sorted_edges]}

    @classmethod
    def from_json(cls, host: Graph, obj) -> "WeightFunction":
        try:
            items = obj["weights"]
            return cls(host, {edge(int(u), int(v)): fraction_from_str(x) for u, v, x in items})
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed weight JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# constraints

@dataclass
class ConstraintSystem:
    host: Graph
    constraints: list  # (chosen, alternate) path pairs
    forced_zero: frozenset = frozenset()
    comparison: str = STRICT

    def __post_init__(self):
        if self.comparison not in (STRICT, NON_STRICT):
            raise InvalidInput(f"unknown comparison {self.comparison!r}")
        self.forced_zero = frozenset(edge(*e) for e in self.forced_zero)
        if not self.forced_zero <= self.host.edges:
            raise InvalidInput("forced-zero edges must belong to the host")
        for p, q in self.constraints:
            if p == q or {p[0], p[-1]} != {q[0], q[-1]}:
                raise InvalidInput(f"bad constraint {p} vs {q}")

    @property
    def free_edges(self) -> list[Edge]:
        return [e for e in self.host.sorted_edges if e not in self.forced_zero]

    def vector(self, i: int) -> dict[Edge, int]:
        """Edge incidence of (alternate - chosen), all edges included."""
        p, q = self.constraints[i]
        vec: dict[Edge, int] = {}
        for e in path_edges(q):
            vec[e] = vec.get(e, 0) + 1
        for e in path_edges(p):
            vec[e] = vec.get(e, 0) - 1
        return {e: c for e, c in vec.items() if c}


def build_constraints(
    s: PathSystem,
    comparison: str = STRICT,
    forced_zero: Iterable[Sequence[int]] = (),
    cap: int = DEFAULT_PATH_CAP,
) -> ConstraintSystem:
    return constraints_for_paths(s.host, s.paths(), comparison, forced_zero, cap)


def constraints_for_paths(
    g: Graph,
    paths: Iterable[Sequence[int]],
    comparison: str = STRICT,
    forced_zero: Iterable[Sequence[int]] = (),
    cap: int = DEFAULT_PATH_CAP,
) -> ConstraintSystem:
    """Constraints for an arbitrary list of chosen paths (one per pair)."""
    out = []
    for p in paths:
        p = tuple(p)
        if p[0] > p[-1]:
            p = p[::-1]
        for q in enumerate_simple_paths(g, p[0], p[-1], cap):
            if q != p:
                out.append((p, q))
    return ConstraintSystem(g, out, frozenset(edge(*e) for e in forced_zero), comparison)


# ---------------------------------------------------------------------------
# results

@dataclass
class FeasibilityResult:
    feasible: bool
    constraints: ConstraintSystem = field(repr=False)
    witness: Optional[WeightFunction] = None
    margin: Optional[Fraction] = None
    farkas: Optional[list] = None  # [(constraint index, multiplier)]
    lp_solves: int = 0

    def residual(self) -> dict[Edge, Fraction]:
        if self.farkas is None:
            raise ValueError("no certificate")
        return farkas_residual(self.constraints, self.farkas)

    def to_json(self) -> dict:
        out = {"feasible": self.feasible, "comparison": self.constraints.comparison}
        if self.feasible:
            out["witness"] = self.witness.to_json()["weights"]
            out["margin"] = fraction_to_str(self.margin)
        else:
            out["farkas"] = [
                {"chosen": list(self.constraints.constraints[i][0]),
                 "alternate": list(self.constraints.constraints[i][1]),
                 "multiplier": fraction_to_str(m)}
                for i, m in self.farkas
            ]
        return out


def farkas_residual(c: ConstraintSystem, farkas) -> dict[Edge, Fraction]:
    """Combined (alternate - chosen) vector on free edges."""
    total = {e: Fraction(0) for e in c.free_edges}
    for i, mult in farkas:
        for e, k in c.vector(i).items():
            if e in total:
                total[e] += mult * k
    return total


def verify_witness(c: ConstraintSystem, w: WeightFunction) -> Optional[Fraction]:
    """Smallest slack if ``w`` satisfies ``c``, else None.

    Recomputes path lengths directly from the paths.  In strict mode every
    alternate must be strictly longer; in non-strict mode no alternate may be
    shorter and free edges must weigh at least 1.
    """
    if w.host != c.host:
        return None
    if any(w[e] < 0 for e in c.host.edges):
        return None
    if any(w[e] != 0 for e in c.forced_zero):
        return None
    # integer lengths on a common denominator, memoised per path
    den = lcm(*(v.denominator for v in w.weights.values())) if w.weights else 1
    iw = {e: v.numerator * (den // v.denominator) for e, v in w.weights.items()}
    memo: dict = {}

    def length(p):
        x = memo.get(p)
        if x is None:
            x = memo[p] = sum(iw[e] for e in path_edges(p))
        return x

    slack = None
    for p, q in c.constraints:
        d = length(q) - length(p)
        slack = d if slack is None else min(slack, d)
    if slack is not None:
        slack = Fraction(slack, den)
    if c.comparison == STRICT:
        if slack is not None and slack <= 0:
            return None
        return slack if slack is not None else Fraction(1)
    if any(w[e] < 1 for e in c.free_edges):
        return None
    if slack is not None and slack < 0:
        return None
    return slack if slack is not None else Fraction(0)


def verify_farkas(c: ConstraintSystem, farkas) -> bool:
    """Mechanical contradiction check.

    Strict: positive multipliers whose combination has no positive entry on a
    free edge, so summing the inequalities gives ``0 < (something <= 0)``.
    Non-strict: the combination must also have a negative entry, which
    contradicts ``w >= 1`` on free edges.
    """
    if not farkas:
        return False
    seen = set()
    for i, mult in farkas:
        if not (0 <= i < len(c.constraints)) or i in seen or Fraction(mult) <= 0:
            return False
        seen.add(i)
    res = farkas_residual(c, farkas)
    if any(v > 0 for v in res.values()):
        return False
    if c.comparison == NON_STRICT:
        return any(v < 0 for v in res.values())
    return True


# ---------------------------------------------------------------------------
# the LP

def _margin_lp(vectors: list, deltas: list, d: int):
    """max t  s.t.  r_k.w >= delta_k t,  0 <= w <= 1, solved via its dual.

    Dual: min sum z  s.t.  z_e - sum_k y_k r_ke - s_e = 0,  sum delta_k y_k = 1.
    Returns (t, w, y).
    """
    K = len(vectors)
    n = K + 2 * d
    A = []
    for e in range(d):
        row = [0] * n
        for k in range(K):
            if vectors[k][e]:
                row[k] = -vectors[k][e]
        row[K + e] = 1
        row[K + d + e] = -1
        A.append(row)
    A.append(list(deltas) + [0] * (2 * d))
    b = [0] * d + [1]
    c = [0] * K + [1] * d + [0] * d
    sol = solve_standard(c, A, b)
    if sol.status != OPTIMAL:  # pragma: no cover - the dual is always feasible and bounded
        raise InternalInvariantError(f"margin LP ended {sol.status}")
    return sol.y[d], sol.y[:d], sol.x[:K]


def _zero_residual(vectors: list, d: int) -> Optional[list]:
    """Nonnegative y with sum 1 and sum_k y_k r_k == 0, if one exists."""
    K = len(vectors)
    A = [[vectors[k][e] for k in range(K)] for e in range(d)]
    A.append([1] * K)
    sol = solve_standard([0] * K, A, [0] * d + [1])
    return sol.x if sol.status == OPTIMAL else None


def _normalized(pairs: list) -> list:
    lam = _integer_scale(m for _, m in pairs)
    return [(i, m * lam) for i, m in pairs if m]


def _initial_rows(c: ConstraintSystem, per_pair: int = 1) -> list[int]:
    by_pair: dict = {}
    for i, (p, q) in enumerate(c.constraints):
        by_pair.setdefault(edge(p[0], p[-1]), []).append((len(q), q, i))
    rows = []
    for key in sorted(by_pair):
        rows.extend(i for _, _, i in sorted(by_pair[key])[:per_pair])
    return sorted(rows)


def feasibility(c: ConstraintSystem, hints: Sequence[WeightFunction] = ()) -> FeasibilityResult:
    """Decide ``c`` exactly, returning a witness or a Farkas certificate.

    ``hints`` are candidate weightings tried (and verified) before any LP is
    solved.  The LP runs as a cutting-plane loop over constraint rows.
    """
    for h in hints:
        if h.host == c.host:
            slack = verify_witness(c, h)
            if slack is not None:
                return FeasibilityResult(True, c, h, slack)

    free = c.free_edges
    col = {e: j for j, e in enumerate(free)}
    d = len(free)
    dense = []
    for i in range(len(c.constraints)):
        row = [0] * d
        for e, k in c.vector(i).items():
            if e in col:
                row[col[e]] += k
        dense.append(row)

    strict = c.comparison == STRICT
    if not c.constraints:
        w = {e: Fraction(0 if e in c.forced_zero else 1) for e in c.host.edges}
        return FeasibilityResult(True, c, WeightFunction(c.host, w), Fraction(1) if strict else Fraction(0))
    if d == 0:
        # everything forced to zero: every alternate ties with its chosen path
        if strict:
            return FeasibilityResult(False, c, farkas=[(0, Fraction(1))])
        w = {e: Fraction(0) for e in c.host.edges}
        return FeasibilityResult(True, c, WeightFunction(c.host, w), Fraction(0))

    active = _initial_rows(c)
    solves = 0
    while True:
        vectors = [dense[i] for i in active]
        if strict:
            deltas = [1] * len(active)
        else:
            vectors = vectors + [[1 if j == e else 0 for j in range(d)] for e in range(d)]
            deltas = [0] * len(active) + [1] * d
        t, wv, y = _margin_lp(vectors, deltas, d)
        solves += 1
        if t <= 0:
            return _infeasible(c, active, dense, y, d, solves)
        lam = _integer_scale(wv)
        iw = [int(v * lam) for v in wv]
        dots = [sum(r[j] * iw[j] for j in range(d) if r[j]) for r in dense]
        if strict:
            bad = [i for i, v in enumerate(dots) if v <= 0]
        else:
            bad = [i for i, v in enumerate(dots) if v < 0]
        if not bad:
            break
        active = sorted(set(active) | set(bad))

    full = {e: Fraction(0) for e in c.forced_zero}
    if strict:
        lam = _integer_scale(wv)
        full.update({e: wv[col[e]] * lam for e in free})
    else:
        lo = min(wv)
        full.update({e: wv[col[e]] / lo for e in free})
    wf = WeightFunction(c.host, full)
    slack = verify_witness(c, wf)
    if slack is None:
        raise InternalInvariantError("LP witness failed independent verification")
    return FeasibilityResult(True, c, wf, slack, lp_solves=solves)


def _infeasible(c, active, dense, y, d, solves) -> FeasibilityResult:
    k = len(active)
    mult = [(active[j], y[j]) for j in range(k) if y[j]]
    if c.comparison == STRICT:
        res = farkas_residual(c, mult)
        if any(res.values()):
            # prefer a certificate that telescopes to the zero vector
            rows = list(range(len(dense)))
            z = _zero_residual([dense[i] for i in rows], d)
            if z is not None:
                mult = [(rows[j], z[j]) for j in range(len(rows)) if z[j]]
    farkas = _normalized(mult)
    if not verify_farkas(c, farkas):
        raise InternalInvariantError("Farkas certificate failed independent verification")
    return FeasibilityResult(False, c, farkas=farkas, lp_solves=solves)


# ---------------------------------------------------------------------------
# system-level decisions

def _max_chosen_length(s: PathSystem) -> int:
    return max((len(p) - 1 for p in s.paths()), default=1)


def _shift(w: WeightFunction, eps: Fraction, skip: frozenset = frozenset()) -> WeightFunction:
    return WeightFunction(w.host, {e: v if e in skip else v + eps for e, v in w.weights.items()})


def decide_strictly_metric(
    s: PathSystem, cap: int = DEFAULT_PATH_CAP, hints: Sequence[WeightFunction] = ()
) -> FeasibilityResult:
    """Strict feasibility of ``s``; a feasible answer carries positive weights."""
    c = build_constraints(s, STRICT, (), cap)
    res = feasibility(c, hints)
    if not res.feasible:
        return res
    w = res.witness
    if w.zero_edges():
        eps = res.margin / (_max_chosen_length(s) + 1)
        w = _shift(w, eps)
        w = w.scaled(_integer_scale(w.weights.values()))
    if not simply_induces_check(s.host, w, s, cap):
        raise InternalInvariantError("strict witness does not simply induce the system")
    margin = verify_witness(c, w)
    return FeasibilityResult(True, c, w, margin, lp_solves=res.lp_solves)


def decide_metric(s: PathSystem, cap: int = DEFAULT_PATH_CAP) -> FeasibilityResult:
    """Non-strict feasibility: every chosen path is a shortest path, weights >= 1."""
    return feasibility(build_constraints(s, NON_STRICT, (), cap))


def simply_induces_check(g: Graph, w: WeightFunction, s: PathSystem, cap: int = DEFAULT_PATH_CAP) -> bool:
    """True iff each chosen path is strictly shorter than every other simple path."""
    den = lcm(*(x.denominator for x in w.weights.values())) if w.weights else 1
    iw = {e: x.numerator * (den // x.denominator) for e, x in w.weights.items()}
    for (u, v), p in s.items():
        lp = sum(iw[e] for e in path_edges(p))
        for q in enumerate_simple_paths(g, u, v, cap):
            if q != p and sum(iw[e] for e in path_edges(q)) <= lp:
                return False
    return True


@dataclass
class InducedVerdict:
    kind: str  # "system" | "tie" | "inconsistent"
    system: Optional[PathSystem] = None
    pair: Optional[Edge] = None
    tied: Optional[tuple] = None
    violation: Optional[Violation] = None
    paths: Optional[dict] = None


def induced_system(
    g: Graph, w: Mapping, allow_negative: bool = False, cap: int = DEFAULT_PATH_CAP
) -> InducedVerdict:
    """Unique shortest simple path per pair, then a consistency check."""
    if not is_connected(g):
        raise InvalidInput("host graph must be connected")
    weights = {edge(*e): Fraction(v) for e, v in dict(w.weights if isinstance(w, WeightFunction) else w).items()}
    if set(weights) != set(g.edges):
        raise InvalidInput("weight domain must equal the host edge set")
    if not allow_negative and any(v < 0 for v in weights.values()):
        raise InvalidInput("negative weights require allow_negative")

    def length(p):
        return sum((weights[e] for e in path_edges(p)), Fraction(0))

    chosen: dict[Edge, Path] = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            best: list = []
            best_len = None
            for q in enumerate_simple_paths(g, u, v, cap):
                lq = length(q)
                if best_len is None or lq < best_len:
                    best, best_len = [q], lq
                elif lq == best_len:
                    best.append(q)
            if len(best) > 1:
                return InducedVerdict("tie", pair=(u, v), tied=(best[0], best[1]))
            chosen[(u, v)] = best[0]
    s = PathSystem(g, chosen)
    viol = check_consistent(s)
    if viol is not None:
        return InducedVerdict("inconsistent", violation=viol, paths=chosen)
    return InducedVerdict("system", system=s)


# ---------------------------------------------------------------------------
# zero weights on persistent edges

@dataclass
class ZeroRealization:
    feasible: bool
    weights: Optional[WeightFunction] = None  # direct route
    inductive_weights: Optional[WeightFunction] = None
    farkas: Optional[list] = None
    direct: Optional[FeasibilityResult] = None
    persistent: frozenset = frozenset()


def _realize_direct(s: PathSystem, persistent: frozenset, cap: int) -> FeasibilityResult:
    c = build_constraints(s, STRICT, persistent, cap)
    res = feasibility(c)
    if not res.feasible:
        return res
    w = res.witness
    if w.zero_edges() - persistent:
        eps = res.margin / (_max_chosen_length(s) + 1)
        w = _shift(w, eps, skip=persistent)
        w = w.scaled(_integer_scale(w.weights.values()))
    return FeasibilityResult(True, c, w, verify_witness(c, w), lp_solves=res.lp_solves)


def realize_inductive(s: PathSystem, cap: int = DEFAULT_PATH_CAP) -> Optional[WeightFunction]:
    """Contract persistent edges one at a time, solve the base, extend by zeros.

    Unused edges are dropped first (their weight is then set above the total
    of all other weights).  Returns None if some contracted base system is not
    strictly metric.
    """
    g = s.host
    used = s.used_edges
    unused = g.edges - used
    if unused:
        inner = realize_inductive(PathSystem(g.without_edges(unused), s.paths()), cap)
        if inner is None:
            return None
        big = 1 + sum(inner.weights.values(), Fraction(0))
        full = dict(inner.weights)
        full.update({e: big for e in unused})
        w = WeightFunction(g, full)
    else:
        pers = persistent_edges(s)
        if g.n <= 1:
            return WeightFunction(g, {})
        if not pers:
            res = decide_strictly_metric(s, cap)
            return res.witness if res.feasible else None
        e = min(pers)
        s2, vmap = contract_system(s, e)
        inner = realize_inductive(s2, cap)
        if inner is None:
            return None
        full = {}
        for f in g.edges:
            if f == e:
                full[f] = Fraction(0)
            else:
                full[f] = inner[edge(vmap[f[0]], vmap[f[1]])]
        w = WeightFunction(g, full)
    if not simply_induces_check(g, w, s, cap):
        raise InternalInvariantError("inductive extension does not simply induce the system")
    return w


def realize_zero_on_persistent(s: PathSystem, cap: int = DEFAULT_PATH_CAP) -> ZeroRealization:
    """Weights that simply induce ``s`` and vanish exactly on its persistent edges.

    Both the direct LP route and the contraction route are run; they must
    agree on feasibility.
    """
    if check_consistent(s) is not None:
        raise InconsistentSystem("system is not consistent")
    pers = frozenset(persistent_edges(s))
    direct = _realize_direct(s, pers, cap)
    ind = realize_inductive(s, cap)
    if direct.feasible != (ind is not None):
        raise InternalInvariantError("direct and inductive routes disagree")
    if not direct.feasible:
        return ZeroRealization(False, farkas=direct.farkas, direct=direct, persistent=pers)
    for w in (direct.witness, ind):
        if w.zero_edges() != set(pers) or not simply_induces_check(s.host, w, s, cap):
            raise InternalInvariantError("zero realization failed verification")
    return ZeroRealization(True, direct.witness, ind, None, direct, pers)
