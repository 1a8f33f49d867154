"""Pass/fail verdicts with reproducible witnesses.

A Verdict is the uniform result type of every randomized or exact check
in the package.  Witnesses are plain JSON-able dicts whose rational
values are already formatted as "p/q" strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Verdict:
    property: str
    result: str  # "pass" | "fail"
    witness: Optional[dict] = None
    trials: int = 0
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def to_jsonable(self) -> dict:
        return {
            "property": self.property,
            "result": self.result,
            "witness": self.witness,
            "trials": self.trials,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


def passed(prop: str, trials: int = 0, seed: Optional[int] = None,
           witness: Optional[dict] = None) -> Verdict:
    return Verdict(prop, "pass", witness, trials, seed)


def failed(prop: str, witness: dict, trials: int = 0,
           seed: Optional[int] = None) -> Verdict:
    return Verdict(prop, "fail", witness, trials, seed)
