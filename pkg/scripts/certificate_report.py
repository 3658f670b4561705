"""Verify the bundled non-strict-metricity certificates and print one row each."""

import time

from strictmetric.certificates import builtin_certificates, combination, extend_to_full_system, verify_certificate
from strictmetric.metric import decide_strictly_metric


def _vec(comb: dict) -> str:
    return " + ".join(f"{k}*w{a + 1}{b + 1}" for (a, b), k in sorted(comb.items())) or "0"


def main() -> None:
    print(f"{'label':<8} {'n':>2} {'m':>3} {'ineq':>4}  {'sum of rhs-lhs':<14} {'LP':<10} {'full system':<12} time")
    for c in builtin_certificates():
        t = time.perf_counter()
        r = verify_certificate(c)
        full = "-"
        if not c.forced_zero:
            s = extend_to_full_system(c)
            full = "not s.m." if s is not None and not decide_strictly_metric(s).feasible else "CHECK"
        lp = "infeasible" if r.lp_infeasible else "FEASIBLE"
        print(f"{c.label:<8} {c.graph.n:>2} {c.graph.m:>3} {len(c.inequalities):>4}  {_vec(combination(c)):<14} "
              f"{lp:<10} {full:<12} {time.perf_counter() - t:.3f}s")
        for f in r.failures:
            print("    ", f)


if __name__ == "__main__":
    main()
