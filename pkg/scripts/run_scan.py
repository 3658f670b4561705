"""Scan the bundled corpus of connected graphs on at most six vertices.

Writes one JSON record per graph and prints a table of final classifier
tag against strict-metrizability verdict, followed by the summary counts.
Rerunning with the same --out resumes where the previous run stopped.
"""

import argparse
import json
from collections import Counter
from pathlib import Path

from strictmetric.config import load_budgets
from strictmetric.scan import conjecture_scan, corpus_lines


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("scan_le6.jsonl"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--config", help="TOML budgets file")
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    lines = [ln for ln in corpus_lines() if ord(ln[0]) - 63 <= args.max_n]
    summary = conjecture_scan(lines, load_budgets(args.config), args.out, args.workers)

    table = Counter()
    for line in args.out.read_text().splitlines():
        rec = json.loads(line)
        if "error" not in rec:
            table[(rec["classifier"].split(">")[-1], rec["sm_verdict"])] += 1
    width = max(len(k[0]) for k in table) if table else 10
    for (tag, verdict), k in sorted(table.items()):
        print(f"{tag:<{width}}  {verdict:<16} {k:>4}")
    print(json.dumps(summary.to_json(), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
