"""Resource budgets.

Every expensive routine takes its limits from a :class:`Budgets` instance.
Defaults can be overridden with ``COXKL_BUDGET_<NAME>`` environment variables,
for example ``COXKL_BUDGET_WORD_LENGTH=30``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, fields
from typing import Mapping


@dataclass(frozen=True)
class Budgets:
    word_length: int = 24        # longest word accepted by closure-based routines
    closure_size: int = 200_000  # reduced words kept for a single element
    interval_length: int = 14    # longest y for which [e, y] is materialised
    group_order: int = 1200      # largest finite group enumerated
    certify_k: int = 5           # largest k for witness certification
    star_states: int = 200_000   # states visited by star-reduction search
    fc_elements: int = 500_000   # elements produced by FC enumeration

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> "Budgets":
        env = os.environ if environ is None else environ
        overrides = {}
        for f in fields(cls):
            raw = env.get("COXKL_BUDGET_" + f.name.upper())
            if raw is None:
                continue
            try:
                overrides[f.name] = int(raw)
            except ValueError:
                raise ValueError(f"COXKL_BUDGET_{f.name.upper()} must be an integer, got {raw!r}")
        return cls(**overrides)

    def replace(self, **changes) -> "Budgets":
        return dataclasses.replace(self, **changes)


def default_budgets() -> Budgets:
    return Budgets.from_env()
