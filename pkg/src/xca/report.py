"""End-to-end analysis report: assembly, rendering, and round-tripping.

``analyze`` composes the whole derivation (applicability -> goals ->
partition -> eligibility -> coverage matrix -> minimal covers -> per-
cover explanations) into one immutable, self-contained report.  The
structured rendering is canonical JSON (sorted keys) and round-trips
byte-identically through ``parse_report`` in deterministic mode; the
document rendering is Markdown with a register adapted to the intended
audience.

Structured schema: docs/report-schema.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum

from .applicability import ApplicabilityFinding, applicable_set, assess
from .goals import derive_goals, partition
from .loader import device_to_mapping, profile_from_device_mapping
from .matching import CoverageMatrix, EligibleEntry, build_matrix, eligible_entries
from .model import (
    REGULATION_ORDER,
    Agnosticism,
    AlgorithmExample,
    Audience,
    DeviceProfile,
    GoalId,
    InputModality,
    KnowledgeBase,
    MethodEntry,
    MethodFamily,
    ModelType,
    Regulation,
    RegulationId,
    Scope,
    Stage,
    kb_fingerprint,
)
from .recommend import Recommendation, explain_cover, irredundant_covers, minimal_covers

REPORT_SCHEMA = "xca.report/v1"

DISCLAIMER = (
    "The recommended XAI method families help meet, but do not by themselves guarantee "
    "satisfaction of, the explanation requirements of the cited regulations. Selected "
    "methods must be assessed case by case on the deployed system, and some legal "
    "explanatory goals may require additional tools or human intervention."
)

#: Action notes for goals that XAI cannot address.
MANUAL_ACTION_NOTES: dict[GoalId, str] = {
    GoalId.C: (
        "No XAI tool can explain the consequences of a decision, only the process and "
        "reasons behind it; explaining consequences should be done manually, e.g. as "
        "documented impact information for the persons affected."
    ),
    GoalId.J: (
        "Accuracy scores and output performance are established through the usual "
        "testing and validation steps performed when building an AI system; report "
        "them in the technical documentation rather than through XAI tooling."
    ),
}
GENERIC_MANUAL_NOTE = (
    "This goal is not addressable by XAI methods; satisfy it through manual "
    "documentation and process measures."
)


class ReportFormat(str, Enum):
    DOCUMENT = "doc"
    STRUCTURED = "structured"


@dataclass(frozen=True)
class ReportRequirement:
    """A required goal enriched with everything the report needs to cite it."""

    goal: GoalId
    description: str
    scope: Scope
    stage: Stage
    required_by: tuple[RegulationId, ...]
    addressable: bool
    citations: tuple[str, ...]


@dataclass(frozen=True)
class ManualAction:
    goal: GoalId
    required_by: tuple[RegulationId, ...]
    action_note: str


@dataclass(frozen=True)
class GoalAssignment:
    goal: GoalId
    entry_ids: tuple[str, ...]


@dataclass(frozen=True)
class AnalysisReport:
    profile: DeviceProfile
    kb_version: str
    kb_fingerprint: str
    regulations: tuple[Regulation, ...]
    findings: tuple[ApplicabilityFinding, ...]
    requirements: tuple[ReportRequirement, ...]
    manual_goals: tuple[ManualAction, ...]
    eligible: tuple[EligibleEntry, ...]
    matrix: CoverageMatrix
    recommendation: Recommendation
    cap: int
    per_cover_explanations: tuple[tuple[GoalAssignment, ...], ...]
    disclaimer: str
    alternative_covers: tuple[tuple[str, ...], ...] | None = None
    generated_at: str | None = None


def _citation(rid: RegulationId, article: str) -> str:
    return f"{rid.value.upper()} {article}"


def analyze(
    profile: DeviceProfile,
    kb: KnowledgeBase,
    cap: int = 10,
    deterministic: bool = False,
    include_alternatives: bool = False,
) -> AnalysisReport:
    """Run the full pipeline; deterministic given (profile, kb, cap)."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    findings = assess(profile, kb)
    applicable = applicable_set(findings)
    goal_requirements = derive_goals(applicable, kb)
    addressable, manual = partition(goal_requirements)
    eligible = eligible_entries(profile, kb)
    matrix = build_matrix(eligible, addressable)
    recommendation = minimal_covers(matrix, cap)
    per_cover = tuple(
        tuple(
            GoalAssignment(goal=goal, entry_ids=tuple(e.id for e in entries))
            for goal, entries in sorted(explain_cover(cover, matrix, kb).items())
        )
        for cover in recommendation.covers
    )
    requirements = tuple(
        ReportRequirement(
            goal=r.goal,
            description=kb.goal(r.goal).description,
            scope=kb.goal(r.goal).scope,
            stage=kb.goal(r.goal).stage,
            required_by=tuple(rid for rid in REGULATION_ORDER if rid in r.required_by),
            addressable=r.addressable,
            citations=tuple(
                _citation(rid, article)
                for rid in REGULATION_ORDER
                if rid in r.required_by
                for article in kb.regulation(rid).explanation_articles
            ),
        )
        for r in goal_requirements
    )
    manual_goals = tuple(
        ManualAction(
            goal=r.goal,
            required_by=tuple(rid for rid in REGULATION_ORDER if rid in r.required_by),
            action_note=MANUAL_ACTION_NOTES.get(r.goal, GENERIC_MANUAL_NOTE),
        )
        for r in goal_requirements
        if r.goal in manual
    )
    return AnalysisReport(
        profile=profile,
        kb_version=kb.version,
        kb_fingerprint=kb_fingerprint(kb),
        regulations=kb.regulations,
        findings=tuple(findings),
        requirements=requirements,
        manual_goals=manual_goals,
        eligible=tuple(eligible),
        matrix=matrix,
        recommendation=recommendation,
        cap=cap,
        per_cover_explanations=per_cover,
        disclaimer=DISCLAIMER,
        alternative_covers=irredundant_covers(matrix) if include_alternatives else None,
        generated_at=None
        if deterministic
        else datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    )


# ---------------------------------------------------------------------------
# structured form

def _entry_to_mapping(entry: MethodEntry) -> dict:
    return {
        "id": entry.id,
        "question": entry.question,
        "family": entry.family.value,
        "scope": entry.scope.value,
        "stage": entry.stage.value,
        "agnosticism": entry.agnosticism.value,
        "model_types": sorted(m.value for m in entry.model_types),
        "input_modalities": sorted(m.value for m in entry.input_modalities),
        "goal_ids": sorted(g.value for g in entry.goal_ids),
        "algorithm_examples": [
            {"name": a.name, "citation": a.citation} for a in entry.algorithm_examples
        ],
        "explanation_note": entry.explanation_note,
    }


def _entry_from_mapping(m: dict) -> MethodEntry:
    return MethodEntry(
        id=m["id"],
        question=m["question"],
        family=MethodFamily(m["family"]),
        scope=Scope(m["scope"]),
        stage=Stage(m["stage"]),
        agnosticism=Agnosticism(m["agnosticism"]),
        model_types=frozenset(ModelType(v) for v in m["model_types"]),
        input_modalities=frozenset(InputModality(v) for v in m["input_modalities"]),
        goal_ids=frozenset(GoalId(v) for v in m["goal_ids"]),
        algorithm_examples=tuple(
            AlgorithmExample(name=a["name"], citation=a["citation"])
            for a in m["algorithm_examples"]
        ),
        explanation_note=m["explanation_note"],
    )


def report_to_document(report: AnalysisReport) -> dict:
    doc = {
        "schema": REPORT_SCHEMA,
        "kb": {"version": report.kb_version, "fingerprint": report.kb_fingerprint},
        "device": device_to_mapping(report.profile),
        "findings": [
            {
                "regulation": f.regulation.value,
                "applies": f.applies,
                "justification": f.justification,
                "trigger_flags": [[name, value] for name, value in f.trigger_flags],
            }
            for f in report.findings
        ],
        "regulations": [
            {
                "id": r.id.value,
                "full_name": r.full_name,
                "explanation_articles": list(r.explanation_articles),
                "trigger_description": r.trigger_description,
                "format_constraints": r.format_constraints,
            }
            for r in report.regulations
        ],
        "requirements": [
            {
                "goal": r.goal.value,
                "description": r.description,
                "scope": r.scope.value,
                "stage": r.stage.value,
                "required_by": [rid.value for rid in r.required_by],
                "addressable": r.addressable,
                "citations": list(r.citations),
            }
            for r in report.requirements
        ],
        "manual_goals": [
            {
                "goal": m.goal.value,
                "required_by": [rid.value for rid in m.required_by],
                "action_note": m.action_note,
            }
            for m in report.manual_goals
        ],
        "eligible": [
            {**_entry_to_mapping(e.entry), "eligibility_reason": e.eligibility_reason}
            for e in report.eligible
        ],
        "coverage": {
            "rows": list(report.matrix.rows),
            "columns": [g.value for g in report.matrix.columns],
            "cells": [list(row) for row in report.matrix.cells],
        },
        "recommendation": {
            "cap": report.cap,
            "minimum_size": report.recommendation.minimum_size,
            "exhaustive": report.recommendation.exhaustive,
            "covers": [list(c) for c in report.recommendation.covers],
            "uncovered_goals": sorted(g.value for g in report.recommendation.uncovered_goals),
        },
        "per_cover_explanations": [
            [{"goal": a.goal.value, "entry_ids": list(a.entry_ids)} for a in cover]
            for cover in report.per_cover_explanations
        ],
        "disclaimer": report.disclaimer,
    }
    if report.alternative_covers is not None:
        doc["alternative_covers"] = [list(c) for c in report.alternative_covers]
    if report.generated_at is not None:
        doc["generated_at"] = report.generated_at
    return doc


def report_from_document(doc: dict) -> AnalysisReport:
    if doc.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unsupported report schema: {doc.get('schema')!r}")
    rec = doc["recommendation"]
    return AnalysisReport(
        profile=profile_from_device_mapping(doc["device"]),
        kb_version=doc["kb"]["version"],
        kb_fingerprint=doc["kb"]["fingerprint"],
        regulations=tuple(
            Regulation(
                id=RegulationId(r["id"]),
                full_name=r["full_name"],
                explanation_articles=tuple(r["explanation_articles"]),
                trigger_description=r["trigger_description"],
                format_constraints=r["format_constraints"],
            )
            for r in doc["regulations"]
        ),
        findings=tuple(
            ApplicabilityFinding(
                regulation=RegulationId(f["regulation"]),
                applies=f["applies"],
                justification=f["justification"],
                trigger_flags=tuple((name, value) for name, value in f["trigger_flags"]),
            )
            for f in doc["findings"]
        ),
        requirements=tuple(
            ReportRequirement(
                goal=GoalId(r["goal"]),
                description=r["description"],
                scope=Scope(r["scope"]),
                stage=Stage(r["stage"]),
                required_by=tuple(RegulationId(v) for v in r["required_by"]),
                addressable=r["addressable"],
                citations=tuple(r["citations"]),
            )
            for r in doc["requirements"]
        ),
        manual_goals=tuple(
            ManualAction(
                goal=GoalId(m["goal"]),
                required_by=tuple(RegulationId(v) for v in m["required_by"]),
                action_note=m["action_note"],
            )
            for m in doc["manual_goals"]
        ),
        eligible=tuple(
            EligibleEntry(
                entry=_entry_from_mapping(e), eligibility_reason=e["eligibility_reason"]
            )
            for e in doc["eligible"]
        ),
        matrix=CoverageMatrix(
            rows=tuple(doc["coverage"]["rows"]),
            columns=tuple(GoalId(g) for g in doc["coverage"]["columns"]),
            cells=tuple(tuple(row) for row in doc["coverage"]["cells"]),
        ),
        recommendation=Recommendation(
            covers=tuple(tuple(c) for c in rec["covers"]),
            uncovered_goals=frozenset(GoalId(g) for g in rec["uncovered_goals"]),
            exhaustive=rec["exhaustive"],
        ),
        cap=rec["cap"],
        per_cover_explanations=tuple(
            tuple(
                GoalAssignment(goal=GoalId(a["goal"]), entry_ids=tuple(a["entry_ids"]))
                for a in cover
            )
            for cover in doc["per_cover_explanations"]
        ),
        disclaimer=doc["disclaimer"],
        alternative_covers=(
            tuple(tuple(c) for c in doc["alternative_covers"])
            if "alternative_covers" in doc
            else None
        ),
        generated_at=doc.get("generated_at"),
    )


def parse_report(data: bytes) -> AnalysisReport:
    """Parse the structured rendering back into an AnalysisReport."""
    return report_from_document(json.loads(data.decode("utf-8")))


# ---------------------------------------------------------------------------
# rendering

_AUDIENCE_PREAMBLE: dict[Audience, str] = {
    Audience.HEALTHCARE_PROFESSIONAL: (
        "Prepared for a healthcare-professional audience: technical terminology is used "
        "and detailed method descriptions are appropriate."
    ),
    Audience.LAYPERSON: (
        "Prepared for a lay audience: plain language is used where possible and a "
        "glossary of technical terms is included at the end."
    ),
    Audience.PATIENT: (
        "Prepared for a patient audience: plain language is used where possible and a "
        "glossary of technical terms is included at the end."
    ),
}

_GLOSSARY = (
    ("XAI (explainable AI)", "software techniques that answer questions about how an AI model works or why it produced a result"),
    ("global explanation", "describes how the model behaves across all of its decisions"),
    ("local explanation", "describes why the model made one specific decision"),
    ("method family", "a group of XAI techniques that answer the same kind of question"),
    ("minimal cover", "the smallest set of method families that together address every goal XAI can help with"),
)

_EMPTY_REPORT_NOTICE = (
    "No explanation requirements identified: none of the three regulations' "
    "explanation duties apply to this device profile."
)


def _render_document(report: AnalysisReport) -> str:
    reg_names = {r.id: r.full_name for r in report.regulations}
    lay = report.profile.audience in (Audience.LAYPERSON, Audience.PATIENT)
    lines: list[str] = []
    w = lines.append

    w(f"# Explanation-requirements analysis: {report.profile.name}")
    w("")
    w(_AUDIENCE_PREAMBLE[report.profile.audience])
    w("")
    w(f"Knowledge base {report.kb_version} (fingerprint {report.kb_fingerprint[:12]}).")
    if report.generated_at is not None:
        w(f"Generated at {report.generated_at}.")
    w("")

    w("## Applicability")
    w("")
    for finding in report.findings:
        tag = finding.regulation.value.upper()
        status = "APPLIES" if finding.applies else "does not apply"
        w(f"- {tag} ({reg_names[finding.regulation]}): {status}. {finding.justification}")
    w("")

    w("## Required goals")
    w("")
    if not report.requirements:
        w(_EMPTY_REPORT_NOTICE)
        w("")
    else:
        w("| Goal | Description | Required by | Scope | Stage | XAI-addressable |")
        w("| --- | --- | --- | --- | --- | --- |")
        for r in report.requirements:
            regs = ", ".join(rid.value.upper() for rid in r.required_by)
            addressable = "yes" if r.addressable else "no (manual)"
            w(
                f"| {r.goal.label} | {r.description} | {regs} | {r.scope.value} "
                f"| {r.stage.value} | {addressable} |"
            )
        w("")

    w("## Manual actions")
    w("")
    if not report.manual_goals:
        w("None: every required goal can be supported by XAI methods.")
    else:
        for m in report.manual_goals:
            regs = ", ".join(rid.value.upper() for rid in m.required_by)
            w(f"- Goal {m.goal.label} (required by {regs}): {m.action_note}")
    w("")

    w("## Recommended method sets")
    w("")
    covers = report.recommendation.covers
    if not report.requirements or not report.matrix.columns:
        w("Not applicable: there are no XAI-addressable goals to cover.")
        w("")
    elif not covers:
        w("No eligible catalog entry covers any required goal; see uncovered goals below.")
        w("")
    else:
        size = report.recommendation.minimum_size
        w(f"Minimum number of method families covering the XAI-addressable goals: {size}.")
        if report.recommendation.exhaustive:
            w("All minimum-size sets are listed.")
        else:
            w(f"Listing capped at {report.cap} sets; further minimum-size sets exist.")
        w("")
        questions = {e.entry.id: e.entry for e in report.eligible}
        for i, cover in enumerate(covers, start=1):
            w(f"Option {i}: {', '.join(cover) if cover else '(no methods needed)'}")
            for entry_id in cover:
                entry = questions[entry_id]
                w(f"  - {entry_id} ({entry.family.value}): {entry.question}")
            if i <= len(report.per_cover_explanations):
                assignments = report.per_cover_explanations[i - 1]
                if assignments:
                    mapping = ", ".join(
                        f"{a.goal.label} <- {'/'.join(a.entry_ids)}" for a in assignments
                    )
                    w(f"  Goal coverage: {mapping}")
            w("")
    if report.recommendation.uncovered_goals:
        uncovered = ", ".join(g.label for g in sorted(report.recommendation.uncovered_goals))
        w(f"Goals not coverable by any eligible entry: {uncovered}.")
        w("")
    if report.alternative_covers is not None:
        w(f"Irredundant alternatives up to size 3: {len(report.alternative_covers)} sets.")
        for cover in report.alternative_covers:
            w(f"  - {', '.join(cover)}")
        w("")

    w("## Eligible methods")
    w("")
    if not report.eligible:
        w("No catalog entry matches this device's model types and input modalities.")
    else:
        w(f"{len(report.eligible)} catalog entries are usable for this device profile:")
        w("")
        for e in report.eligible:
            w(
                f"- {e.entry.id} ({e.entry.family.value}, {e.entry.scope.value}): "
                f"{e.eligibility_reason}"
            )
    w("")

    w("## Citations")
    w("")
    applicable = {f.regulation for f in report.findings if f.applies}
    cited = [r for r in report.regulations if r.id in applicable]
    if not cited:
        w("No regulation's explanation requirements apply.")
    else:
        for regulation in cited:
            for article in regulation.explanation_articles:
                w(f"- {_citation(regulation.id, article)} ({regulation.full_name})")
    w("")

    if lay:
        w("## Glossary")
        w("")
        for term, meaning in _GLOSSARY:
            w(f"- {term}: {meaning}.")
        w("")

    w("## Disclaimer")
    w("")
    w(report.disclaimer)
    return "\n".join(lines) + "\n"


def render(report: AnalysisReport, fmt: ReportFormat = ReportFormat.DOCUMENT) -> bytes:
    """Render the report; byte-identical for identical reports."""
    if fmt is ReportFormat.STRUCTURED:
        doc = report_to_document(report)
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
            "utf-8"
        )
    return _render_document(report).encode("utf-8")
