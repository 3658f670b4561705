"""Search budgets and their TOML configuration."""

from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import InvalidInput


@dataclass(frozen=True)
class Budgets:
    """Explicit limits; exceeding one yields a budget verdict, never a guess."""

    enumeration: int = 10_000_000  # node expansions per consistent-system enumeration
    path_cap: int = 100_000  # simple paths per vertex pair
    search: int = 2_000_000  # states per minor / subdivision search
    systems: int = 1_000_000  # consistent systems examined per block

    def to_json(self) -> dict:
        return asdict(self)

    def updated(self, **kw) -> "Budgets":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def load_budgets(path: Optional[str], base: Budgets = Budgets()) -> Budgets:
    """Read a ``[budgets]`` table (or top-level keys) from a TOML file."""
    if path is None:
        return base
    try:
        data = tomllib.loads(Path(path).read_text())
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}") from exc
    table = data.get("budgets", data)
    known = {f.name for f in fields(Budgets)}
    unknown = set(table) - known
    if unknown:
        raise InvalidInput(f"unknown budget keys in {path}: {sorted(unknown)}")
    for k, v in table.items():
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise InvalidInput(f"budget {k} must be a positive integer")
    return replace(base, **table)
