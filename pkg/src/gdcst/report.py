"""Result record shared by the solvers and the oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class Verdict(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"


class SolverPath(str, Enum):
    MATCHING = "MatchingCase"
    PARTITION = "PartitionCase"
    GENERIC = "Generic"
    ORACLE = "Oracle"


@dataclass
class SolveStats:
    nodes: int = 0
    oracle_calls: int = 0
    ms: float = 0.0


@dataclass
class SolveReport:
    verdict: Verdict
    witness: Optional[tuple] = None
    optimal_weight: Optional[int] = None
    path: SolverPath = SolverPath.GENERIC
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE

    def to_dict(self) -> dict:
        """JSON form; witness ids are 1-based like the instance file format."""
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else [e + 1 for e in self.witness],
            "weight": self.optimal_weight,
            "path": self.path.value,
            "stats": {
                "nodes": self.stats.nodes,
                "oracle_calls": self.stats.oracle_calls,
                "ms": round(self.stats.ms, 3),
            },
        }
