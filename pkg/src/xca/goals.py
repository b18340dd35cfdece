"""Goal derivation: from applicable regulations to required explanatory goals.

A goal is required as soon as one applicable regulation demands it; the
requirement records every applicable regulation doing so, because goals
and regulations are many-to-many and the report must cite all
overlapping duties.  Required goals are then partitioned into the
XAI-addressable set and the manual-only set (per-goal KB flag).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import GoalId, KnowledgeBase, RegulationId


@dataclass(frozen=True)
class GoalRequirement:
    goal: GoalId
    required_by: frozenset[RegulationId]
    addressable: bool

    def __post_init__(self) -> None:
        if not self.required_by:
            raise ValueError(f"goal {self.goal.label}: required_by must be non-empty")


def derive_goals(
    applicable: Iterable[RegulationId], kb: KnowledgeBase
) -> list[GoalRequirement]:
    """Goals demanded by at least one applicable regulation, sorted by id."""
    applicable = frozenset(applicable)
    requirements = []
    for goal in sorted(kb.goals, key=lambda g: g.id.value):
        demanded_by = goal.regulations & applicable
        if demanded_by:
            requirements.append(
                GoalRequirement(
                    goal=goal.id,
                    required_by=frozenset(demanded_by),
                    addressable=goal.xai_addressable,
                )
            )
    return requirements


def partition(
    requirements: Sequence[GoalRequirement],
) -> tuple[frozenset[GoalId], frozenset[GoalId]]:
    """Split required goals into (XAI-addressable, manual-only) sets."""
    addressable = frozenset(r.goal for r in requirements if r.addressable)
    manual = frozenset(r.goal for r in requirements if not r.addressable)
    return addressable, manual
