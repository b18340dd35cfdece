"""Catalog filtering against a device profile, and the goal-coverage matrix.

An entry is eligible when it matches at least one of the device's model
types (or is model-agnostic) and at least one of its input modalities
(or is modality-unconstrained).  Intersection, not containment: a
multi-model device benefits from methods specific to any one of its
models.  Partial matches are surfaced in the eligibility reason, not in
the matrix structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import DeviceProfile, GoalId, KnowledgeBase, MethodEntry, Scope


@dataclass(frozen=True)
class EligibleEntry:
    entry: MethodEntry
    eligibility_reason: str


@dataclass(frozen=True)
class CoverageMatrix:
    """Boolean entry-by-goal matrix; cell is true iff the entry maps the goal."""

    rows: tuple[str, ...]
    columns: tuple[GoalId, ...]
    cells: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        if len(self.cells) != len(self.rows) or any(
            len(row) != len(self.columns) for row in self.cells
        ):
            raise ValueError("matrix dimensions inconsistent with rows/columns")

    def cell(self, entry_id: str, goal: GoalId) -> bool:
        return self.cells[self.rows.index(entry_id)][self.columns.index(goal)]


def _eligibility_reason(entry: MethodEntry, profile: DeviceProfile) -> str:
    if entry.model_types:
        matched = sorted(m.value for m in entry.model_types & profile.model_types)
        unmatched = sorted(m.value for m in profile.model_types - entry.model_types)
        reason = f"matches model types: {', '.join(matched)}"
        if unmatched:
            reason += f" (device also uses: {', '.join(unmatched)})"
    else:
        reason = "model-agnostic"
    if entry.input_modalities:
        matched = sorted(m.value for m in entry.input_modalities & profile.input_modalities)
        reason += f"; matches input modalities: {', '.join(matched)}"
    return reason


def eligible_entries(profile: DeviceProfile, kb: KnowledgeBase) -> list[EligibleEntry]:
    """Catalog entries usable for this device, sorted by entry id."""
    out = []
    for entry in sorted(kb.catalog, key=lambda e: e.id):
        model_ok = not entry.model_types or bool(entry.model_types & profile.model_types)
        modality_ok = not entry.input_modalities or bool(
            entry.input_modalities & profile.input_modalities
        )
        if model_ok and modality_ok:
            out.append(EligibleEntry(entry, _eligibility_reason(entry, profile)))
    return out


def build_matrix(
    eligible: Sequence[EligibleEntry], addressable: Iterable[GoalId]
) -> CoverageMatrix:
    """Coverage matrix over the eligible entries and the addressable goals."""
    columns = tuple(sorted(addressable))
    rows = tuple(e.entry.id for e in eligible)
    cells = tuple(
        tuple(goal in e.entry.goal_ids for goal in columns) for e in eligible
    )
    return CoverageMatrix(rows=rows, columns=columns, cells=cells)


def local_rows_avoid_global_goals(
    eligible: Sequence[EligibleEntry], matrix: CoverageMatrix, kb: KnowledgeBase
) -> bool:
    """Defense-in-depth check behind the KB invariant: a local-scope entry's
    row has no true cell under a global-scope goal column."""
    by_id = {e.entry.id: e.entry for e in eligible}
    for i, entry_id in enumerate(matrix.rows):
        if by_id[entry_id].scope is not Scope.LOCAL:
            continue
        for j, goal in enumerate(matrix.columns):
            if matrix.cells[i][j] and kb.goal(goal).scope is Scope.GLOBAL:
                return False
    return True
