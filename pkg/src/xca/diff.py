"""What-if comparison of two analysis reports.

Compares the derivation only (findings, goals, eligibility, covers);
profile echoes and wording register are deliberately ignored, so an
audience-only change yields an empty diff.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import GoalId, RegulationId
from .report import AnalysisReport, ReportFormat

DIFF_SCHEMA = "xca.diff/v1"


@dataclass(frozen=True)
class FindingChange:
    regulation: RegulationId
    base_applies: bool
    modified_applies: bool


@dataclass(frozen=True)
class GoalChange:
    """A goal that gained or lost demanding regulations.

    ``regulations`` lists only the gained (or lost) duties, not the
    goal's full requirement set: a goal already required by the AIA that
    becomes additionally required by the GDPR counts as added under the
    GDPR.
    """

    goal: GoalId
    regulations: tuple[RegulationId, ...]
    addressable: bool


@dataclass(frozen=True)
class ReportDiff:
    findings_changed: tuple[FindingChange, ...]
    goals_added: tuple[GoalChange, ...]
    goals_removed: tuple[GoalChange, ...]
    eligible_added: tuple[str, ...]
    eligible_removed: tuple[str, ...]
    base_minimum_size: int | None
    modified_minimum_size: int | None
    covers_added: tuple[tuple[str, ...], ...]
    covers_removed: tuple[tuple[str, ...], ...]
    uncovered_added: tuple[GoalId, ...]
    uncovered_removed: tuple[GoalId, ...]

    @property
    def identical(self) -> bool:
        return not (
            self.findings_changed
            or self.goals_added
            or self.goals_removed
            or self.eligible_added
            or self.eligible_removed
            or self.covers_added
            or self.covers_removed
            or self.uncovered_added
            or self.uncovered_removed
            or self.base_minimum_size != self.modified_minimum_size
        )


def diff_reports(base: AnalysisReport, modified: AnalysisReport) -> ReportDiff:
    """Derivation-level differences between two reports over the same KB."""
    findings_changed = tuple(
        FindingChange(b.regulation, b.applies, m.applies)
        for b, m in zip(base.findings, modified.findings)
        if b.applies != m.applies
    )
    base_goals = {r.goal: r for r in base.requirements}
    modified_goals = {r.goal: r for r in modified.requirements}
    goals_added = []
    for g, r in sorted(modified_goals.items()):
        before = set(base_goals[g].required_by) if g in base_goals else set()
        gained = tuple(rid for rid in r.required_by if rid not in before)
        if gained:
            goals_added.append(GoalChange(g, gained, r.addressable))
    goals_removed = []
    for g, r in sorted(base_goals.items()):
        after = set(modified_goals[g].required_by) if g in modified_goals else set()
        lost = tuple(rid for rid in r.required_by if rid not in after)
        if lost:
            goals_removed.append(GoalChange(g, lost, r.addressable))
    base_eligible = {e.entry.id for e in base.eligible}
    modified_eligible = {e.entry.id for e in modified.eligible}
    base_covers = set(base.recommendation.covers)
    modified_covers = set(modified.recommendation.covers)
    base_uncovered = base.recommendation.uncovered_goals
    modified_uncovered = modified.recommendation.uncovered_goals
    return ReportDiff(
        findings_changed=findings_changed,
        goals_added=tuple(goals_added),
        goals_removed=tuple(goals_removed),
        eligible_added=tuple(sorted(modified_eligible - base_eligible)),
        eligible_removed=tuple(sorted(base_eligible - modified_eligible)),
        base_minimum_size=base.recommendation.minimum_size,
        modified_minimum_size=modified.recommendation.minimum_size,
        covers_added=tuple(sorted(modified_covers - base_covers)),
        covers_removed=tuple(sorted(base_covers - modified_covers)),
        uncovered_added=tuple(sorted(modified_uncovered - base_uncovered)),
        uncovered_removed=tuple(sorted(base_uncovered - modified_uncovered)),
    )


def diff_to_document(diff: ReportDiff) -> dict:
    return {
        "schema": DIFF_SCHEMA,
        "identical": diff.identical,
        "findings_changed": [
            {
                "regulation": c.regulation.value,
                "base_applies": c.base_applies,
                "modified_applies": c.modified_applies,
            }
            for c in diff.findings_changed
        ],
        "goals_added": [
            {
                "goal": c.goal.value,
                "regulations": [r.value for r in c.regulations],
                "addressable": c.addressable,
            }
            for c in diff.goals_added
        ],
        "goals_removed": [
            {
                "goal": c.goal.value,
                "regulations": [r.value for r in c.regulations],
                "addressable": c.addressable,
            }
            for c in diff.goals_removed
        ],
        "eligible_added": list(diff.eligible_added),
        "eligible_removed": list(diff.eligible_removed),
        "base_minimum_size": diff.base_minimum_size,
        "modified_minimum_size": diff.modified_minimum_size,
        "covers_added": [list(c) for c in diff.covers_added],
        "covers_removed": [list(c) for c in diff.covers_removed],
        "uncovered_added": [g.value for g in diff.uncovered_added],
        "uncovered_removed": [g.value for g in diff.uncovered_removed],
    }


def _render_diff_document(diff: ReportDiff) -> str:
    lines: list[str] = []
    w = lines.append
    w("# What-if comparison")
    w("")
    if diff.identical:
        w("No derivation differences.")
        return "\n".join(lines) + "\n"
    if diff.findings_changed:
        w("## Applicability changes")
        w("")
        for c in diff.findings_changed:
            before = "applies" if c.base_applies else "does not apply"
            after = "applies" if c.modified_applies else "does not apply"
            w(f"- {c.regulation.value.upper()}: {before} -> {after}")
        w("")
    if diff.goals_added:
        w("## Goal duties added")
        w("")
        for c in diff.goals_added:
            kind = "XAI-addressable" if c.addressable else "manual"
            regs = ", ".join(r.value.upper() for r in c.regulations)
            w(f"- {c.goal.label} ({kind}; duty added under {regs})")
        w("")
    if diff.goals_removed:
        w("## Goal duties removed")
        w("")
        for c in diff.goals_removed:
            kind = "XAI-addressable" if c.addressable else "manual"
            regs = ", ".join(r.value.upper() for r in c.regulations)
            w(f"- {c.goal.label} ({kind}; duty removed under {regs})")
        w("")
    if diff.eligible_added or diff.eligible_removed:
        w("## Eligible method changes")
        w("")
        if diff.eligible_added:
            w(f"- added: {', '.join(diff.eligible_added)}")
        if diff.eligible_removed:
            w(f"- removed: {', '.join(diff.eligible_removed)}")
        w("")
    w("## Recommended sets")
    w("")
    w(f"Minimum cover size: {diff.base_minimum_size} -> {diff.modified_minimum_size}")
    for cover in diff.covers_added:
        w(f"- cover added: {{{', '.join(cover)}}}")
    for cover in diff.covers_removed:
        w(f"- cover removed: {{{', '.join(cover)}}}")
    if diff.uncovered_added:
        w(f"- goals newly uncoverable: {', '.join(g.label for g in diff.uncovered_added)}")
    if diff.uncovered_removed:
        w(f"- goals no longer uncoverable: {', '.join(g.label for g in diff.uncovered_removed)}")
    return "\n".join(lines) + "\n"


def render_diff(diff: ReportDiff, fmt: ReportFormat = ReportFormat.DOCUMENT) -> bytes:
    if fmt is ReportFormat.STRUCTURED:
        doc = diff_to_document(diff)
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
            "utf-8"
        )
    return _render_diff_document(diff).encode("utf-8")
