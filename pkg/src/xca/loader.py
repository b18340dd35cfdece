"""Knowledge-base and device-profile file handling.

One human-editable tree format (YAML; JSON documents load too, being a
YAML subset) backs both the knowledge base and device profiles.  Loading
is total: either a fully validated object comes back, or a
:class:`DocumentError` carrying every detected issue.  The canonical
serialization (sorted keys, sorted sets) backs the KB fingerprint and
the structured report format.

Schema and the closed list of issue codes: docs/kb-schema.md.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Any, Union

import yaml

from .model import (
    REGULATION_ORDER,
    ACTIONABLE_CHANGE_FAMILIES,
    Agnosticism,
    AlgorithmExample,
    Audience,
    DeviceProfile,
    GLOBAL_BEHAVIOUR_FAMILIES,
    GoalId,
    InputModality,
    KnowledgeBase,
    LegalGoal,
    LoopType,
    MethodEntry,
    MethodFamily,
    ModelType,
    Regulation,
    RegulationId,
    Scope,
    Stage,
)

Source = Union[bytes, str, Path, IO[bytes], IO[str]]

#: Citation sets the validator pins per regulation.
PINNED_ARTICLES: dict[RegulationId, frozenset[str]] = {
    RegulationId.MDR: frozenset({"Art. 10.11", "Annex I.23.4"}),
    RegulationId.AIA: frozenset({"Art. 13", "Art. 14"}),
    RegulationId.GDPR: frozenset(
        {"Art. 13.2(f)", "Art. 14.2(g)", "Art. 15.1(f)", "Art. 22", "Recital 71"}
    ),
}

#: Goals the validator pins as manual-only (not addressable by XAI).
PINNED_MANUAL_GOALS = frozenset({GoalId.C, GoalId.J})

_SEMVER_RE = re.compile(
    r"^(0|[1-9]\d*)\.(0|[1-9]\d*)\.(0|[1-9]\d*)(?:-[0-9A-Za-z.-]+)?(?:\+[0-9A-Za-z.-]+)?$"
)

#: Closed list of issue codes (documented in docs/kb-schema.md).
ISSUE_CODES = (
    "E_SYNTAX",
    "E_SCHEMA",
    "E_ENUM",
    "E_VERSION",
    "E_EMPTY_CATALOG",
    "E_EMPTY_FIELD",
    "E_DUPLICATE_ID",
    "E_DANGLING_REF",
    "E_REGULATION_SET",
    "E_GOAL_SET",
    "E_CITATION_SET",
    "E_ADDRESSABLE_FLAG",
    "E_ENTRY_SCOPE",
    "E_AGNOSTICISM",
    "E_SCOPE_RULE",
    "E_MANUAL_GOAL_MAPPED",
    "E_GOAL_A_FAMILY",
    "E_GOAL_E_FAMILY",
    "E_GOAL_H_FAMILY",
    "E_CONFORMITY_FLAG",
    "W_STAGE_MISMATCH",
    "W_NO_ALGORITHM_EXAMPLES",
)


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    severity: Severity
    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value.upper()} {self.code} at {self.location}: {self.message}"


class DocumentError(Exception):
    """Raised when a document cannot be loaded; carries all issues found."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues
        errors = [i for i in issues if i.severity is Severity.ERROR]
        summary = "; ".join(str(i) for i in errors[:3])
        more = f" (+{len(errors) - 3} more)" if len(errors) > 3 else ""
        super().__init__(f"{len(errors)} error(s): {summary}{more}")


class _Issues:
    """Collector that keeps a document-order sort key per issue."""

    def __init__(self) -> None:
        self._items: list[tuple[tuple[int, int], ValidationIssue]] = []

    def add(
        self,
        key: tuple[int, int],
        severity: Severity,
        code: str,
        location: str,
        message: str,
    ) -> None:
        self._items.append((key, ValidationIssue(severity, code, location, message)))

    def error(self, key: tuple[int, int], code: str, location: str, message: str) -> None:
        self.add(key, Severity.ERROR, code, location, message)

    def warning(self, key: tuple[int, int], code: str, location: str, message: str) -> None:
        self.add(key, Severity.WARNING, code, location, message)

    def sorted(self) -> list[ValidationIssue]:
        return [
            issue
            for _, issue in sorted(
                self._items, key=lambda kv: (kv[0], kv[1].code, kv[1].location)
            )
        ]


def _read_source(source: Source) -> tuple[str, str]:
    """Return (text, display name) for any accepted source kind."""
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8"), str(source)
    if isinstance(source, bytes):
        return source.decode("utf-8"), "<bytes>"
    if isinstance(source, str):
        return source, "<string>"
    data = source.read()
    name = getattr(source, "name", "<stream>")
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data, str(name)


def parse_document(source: Source) -> Any:
    """Parse a YAML/JSON document; syntax errors become a DocumentError."""
    text, name = _read_source(source)
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        if mark is not None:
            location = f"line {mark.line + 1}, column {mark.column + 1}"
        else:
            location = "document"
        problem = exc.problem or "malformed document"
        raise DocumentError(
            [
                ValidationIssue(
                    Severity.ERROR,
                    "E_SYNTAX",
                    location,
                    f"{name}: {problem} ({location})",
                )
            ]
        ) from exc
    except yaml.YAMLError as exc:
        raise DocumentError(
            [ValidationIssue(Severity.ERROR, "E_SYNTAX", "document", f"{name}: {exc}")]
        ) from exc


# ---------------------------------------------------------------------------
# field checking helpers

def _check_mapping(
    issues: _Issues,
    key: tuple[int, int],
    obj: Any,
    location: str,
    allowed: dict[str, bool],
) -> bool:
    """Strict-schema check: obj is a mapping, no unknown keys, all required keys.

    ``allowed`` maps field name -> required flag.  Returns False when obj
    is not a mapping at all (no field checks possible).
    """
    if not isinstance(obj, dict):
        issues.error(key, "E_SCHEMA", location, f"expected a mapping, got {type(obj).__name__}")
        return False
    for name in obj:
        if not isinstance(name, str) or name not in allowed:
            issues.error(key, "E_SCHEMA", f"{location}.{name}", f"unknown key {name!r}")
    for name, required in allowed.items():
        if required and name not in obj:
            issues.error(key, "E_SCHEMA", f"{location}.{name}", f"missing required key {name!r}")
    return True


def _get_str(
    issues: _Issues,
    key: tuple[int, int],
    obj: dict,
    name: str,
    location: str,
    allow_empty: bool = False,
) -> str | None:
    if name not in obj:
        return None
    value = obj[name]
    if not isinstance(value, str):
        issues.error(key, "E_SCHEMA", f"{location}.{name}", "expected a string")
        return None
    if not allow_empty and not value.strip():
        issues.error(key, "E_EMPTY_FIELD", f"{location}.{name}", "must be non-empty")
        return None
    return value


def _get_bool(
    issues: _Issues, key: tuple[int, int], obj: dict, name: str, location: str
) -> bool | None:
    if name not in obj:
        return None
    value = obj[name]
    if not isinstance(value, bool):
        issues.error(key, "E_SCHEMA", f"{location}.{name}", "expected a boolean")
        return None
    return value


def _get_enum(
    issues: _Issues,
    key: tuple[int, int],
    obj: dict,
    name: str,
    location: str,
    enum_cls: type[Enum],
) -> Any:
    if name not in obj:
        return None
    value = obj[name]
    if not isinstance(value, str):
        issues.error(key, "E_SCHEMA", f"{location}.{name}", "expected a string")
        return None
    try:
        return enum_cls(value)
    except ValueError:
        literals = ", ".join(m.value for m in enum_cls)  # type: ignore[attr-defined]
        issues.error(
            key, "E_ENUM", f"{location}.{name}", f"{value!r} is not one of: {literals}"
        )
        return None


def _get_str_list(
    issues: _Issues,
    key: tuple[int, int],
    obj: dict,
    name: str,
    location: str,
    allow_empty: bool,
) -> list[str] | None:
    if name not in obj:
        return None
    value = obj[name]
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        issues.error(key, "E_SCHEMA", f"{location}.{name}", "expected a list of strings")
        return None
    if not allow_empty and not value:
        issues.error(key, "E_EMPTY_FIELD", f"{location}.{name}", "must be non-empty")
        return None
    if len(set(value)) != len(value):
        issues.error(key, "E_SCHEMA", f"{location}.{name}", "duplicate values not allowed")
        return None
    return value


def _enum_set(
    issues: _Issues,
    key: tuple[int, int],
    raw: list[str] | None,
    location: str,
    name: str,
    enum_cls: type[Enum],
) -> frozenset | None:
    """Convert a validated string list to an enum set (closed enumeration)."""
    if raw is None:
        return None
    out = set()
    ok = True
    for v in raw:
        try:
            out.add(enum_cls(v))
        except ValueError:
            literals = ", ".join(m.value for m in enum_cls)  # type: ignore[attr-defined]
            issues.error(key, "E_ENUM", f"{location}.{name}", f"{v!r} is not one of: {literals}")
            ok = False
    return frozenset(out) if ok else None


# ---------------------------------------------------------------------------
# knowledge-base validation

_KB_KEYS = {"version": True, "regulations": True, "goals": True, "catalog": True}
_REGULATION_KEYS = {
    "id": True,
    "full_name": True,
    "explanation_articles": True,
    "trigger_description": True,
    "format_constraints": True,
}
_GOAL_KEYS = {
    "id": True,
    "description": True,
    "regulations": True,
    "scope": True,
    "stage": True,
    "xai_addressable": True,
}
_ENTRY_KEYS = {
    "id": True,
    "question": True,
    "family": True,
    "scope": True,
    "stage": True,
    "agnosticism": True,
    "model_types": True,
    "input_modalities": True,
    "goal_ids": True,
    "algorithm_examples": True,
    "explanation_note": True,
}
_ALGORITHM_KEYS = {"name": True, "citation": True}


def validate_kb(doc: Any) -> list[ValidationIssue]:
    """Check a parsed KB document against the schema and consistency rules.

    Returns every issue found (never first-failure); an empty list means
    the document encodes a fully valid knowledge base.  Order is
    deterministic: document order, then code.
    """
    issues = _Issues()
    top = (0, -1)
    if not isinstance(doc, dict):
        issues.error(top, "E_SCHEMA", "document", "top level must be a mapping")
        return issues.sorted()
    _check_mapping(issues, top, doc, "document", _KB_KEYS)

    version = _get_str(issues, (0, 0), doc, "version", "document")
    if version is not None and not _SEMVER_RE.match(version):
        issues.error((0, 0), "E_VERSION", "version", f"{version!r} is not a semantic version")

    # --- regulations ------------------------------------------------------
    seen_regulations: dict[RegulationId, int] = {}
    raw_regulations = doc.get("regulations")
    if raw_regulations is not None and not isinstance(raw_regulations, list):
        issues.error((1, -1), "E_SCHEMA", "regulations", "expected a list")
        raw_regulations = None
    for idx, record in enumerate(raw_regulations or []):
        key = (1, idx)
        loc = f"regulations[{idx}]"
        if not _check_mapping(issues, key, record, loc, _REGULATION_KEYS):
            continue
        rid = _get_enum(issues, key, record, "id", loc, RegulationId)
        _get_str(issues, key, record, "full_name", loc)
        _get_str(issues, key, record, "trigger_description", loc)
        _get_str(issues, key, record, "format_constraints", loc)
        articles = _get_str_list(issues, key, record, "explanation_articles", loc, allow_empty=False)
        if rid is not None:
            if rid in seen_regulations:
                issues.error(key, "E_DUPLICATE_ID", f"{loc}.id", f"duplicate regulation {rid.value!r}")
            else:
                seen_regulations[rid] = idx
            if articles is not None and frozenset(articles) != PINNED_ARTICLES[rid]:
                expected = ", ".join(sorted(PINNED_ARTICLES[rid]))
                issues.error(
                    key,
                    "E_CITATION_SET",
                    f"{loc}.explanation_articles",
                    f"citation set for {rid.value} must be exactly: {expected}",
                )
    if raw_regulations is not None and set(seen_regulations) != set(RegulationId):
        missing = sorted(r.value for r in set(RegulationId) - set(seen_regulations))
        if missing:
            issues.error(
                (1, -1),
                "E_REGULATION_SET",
                "regulations",
                f"exactly the three regulations are required; missing: {', '.join(missing)}",
            )

    # --- goals ------------------------------------------------------------
    goals_by_id: dict[GoalId, dict] = {}
    raw_goals = doc.get("goals")
    if raw_goals is not None and not isinstance(raw_goals, list):
        issues.error((2, -1), "E_SCHEMA", "goals", "expected a list")
        raw_goals = None
    goal_meta: dict[GoalId, tuple[Scope | None, Stage | None, bool | None]] = {}
    for idx, record in enumerate(raw_goals or []):
        key = (2, idx)
        loc = f"goals[{idx}]"
        if not _check_mapping(issues, key, record, loc, _GOAL_KEYS):
            continue
        gid = _get_enum(issues, key, record, "id", loc, GoalId)
        _get_str(issues, key, record, "description", loc)
        scope = _get_enum(issues, key, record, "scope", loc, Scope)
        stage = _get_enum(issues, key, record, "stage", loc, Stage)
        addressable = _get_bool(issues, key, record, "xai_addressable", loc)
        raw_regs = _get_str_list(issues, key, record, "regulations", loc, allow_empty=False)
        if raw_regs is not None:
            for v in raw_regs:
                if (
                    v not in {r.value for r in RegulationId}
                    or RegulationId(v) not in seen_regulations
                ):
                    issues.error(
                        key,
                        "E_DANGLING_REF",
                        f"{loc}.regulations",
                        f"unknown regulation {v!r}",
                    )
        if gid is not None:
            if gid in goals_by_id:
                issues.error(key, "E_DUPLICATE_ID", f"{loc}.id", f"duplicate goal {gid.label!r}")
            else:
                goals_by_id[gid] = record
                goal_meta[gid] = (scope, stage, addressable)
            if addressable is not None:
                should_be_manual = gid in PINNED_MANUAL_GOALS
                if addressable == should_be_manual:
                    expected = "false" if should_be_manual else "true"
                    issues.error(
                        key,
                        "E_ADDRESSABLE_FLAG",
                        f"{loc}.xai_addressable",
                        f"goal {gid.label} must have xai_addressable: {expected}",
                    )
    if raw_goals is not None and set(goals_by_id) != set(GoalId):
        missing = sorted(g.label for g in set(GoalId) - set(goals_by_id))
        if missing:
            issues.error(
                (2, -1),
                "E_GOAL_SET",
                "goals",
                f"exactly the eleven goals A-K are required; missing: {', '.join(missing)}",
            )

    # --- catalog ----------------------------------------------------------
    raw_catalog = doc.get("catalog")
    if raw_catalog is not None and not isinstance(raw_catalog, list):
        issues.error((3, -1), "E_SCHEMA", "catalog", "expected a list")
        raw_catalog = None
    if raw_catalog is not None and not raw_catalog:
        issues.error((3, -1), "E_EMPTY_CATALOG", "catalog", "catalog must contain at least one entry")
    seen_entries: set[str] = set()
    for idx, record in enumerate(raw_catalog or []):
        key = (3, idx)
        loc = f"catalog[{idx}]"
        if not _check_mapping(issues, key, record, loc, _ENTRY_KEYS):
            continue
        entry_id = _get_str(issues, key, record, "id", loc)
        if entry_id is not None:
            if entry_id in seen_entries:
                issues.error(key, "E_DUPLICATE_ID", f"{loc}.id", f"duplicate entry id {entry_id!r}")
            seen_entries.add(entry_id)
        _get_str(issues, key, record, "question", loc)
        family = _get_enum(issues, key, record, "family", loc, MethodFamily)
        scope = _get_enum(issues, key, record, "scope", loc, Scope)
        stage = _get_enum(issues, key, record, "stage", loc, Stage)
        agnosticism = _get_enum(issues, key, record, "agnosticism", loc, Agnosticism)
        model_types = _enum_set(
            issues,
            key,
            _get_str_list(issues, key, record, "model_types", loc, allow_empty=True),
            loc,
            "model_types",
            ModelType,
        )
        _enum_set(
            issues,
            key,
            _get_str_list(issues, key, record, "input_modalities", loc, allow_empty=True),
            loc,
            "input_modalities",
            InputModality,
        )
        raw_goal_ids = _get_str_list(issues, key, record, "goal_ids", loc, allow_empty=False)
        goal_ids: set[GoalId] = set()
        if raw_goal_ids is not None:
            for v in raw_goal_ids:
                if v not in {g.value for g in GoalId} or GoalId(v) not in goals_by_id:
                    issues.error(key, "E_DANGLING_REF", f"{loc}.goal_ids", f"unknown goal id {v!r}")
                else:
                    goal_ids.add(GoalId(v))
        examples = record.get("algorithm_examples")
        if examples is not None:
            if not isinstance(examples, list):
                issues.error(key, "E_SCHEMA", f"{loc}.algorithm_examples", "expected a list")
            else:
                if not examples:
                    issues.warning(
                        key,
                        "W_NO_ALGORITHM_EXAMPLES",
                        f"{loc}.algorithm_examples",
                        "entry cites no illustrative algorithms",
                    )
                for j, example in enumerate(examples):
                    eloc = f"{loc}.algorithm_examples[{j}]"
                    if _check_mapping(issues, key, example, eloc, _ALGORITHM_KEYS):
                        _get_str(issues, key, example, "name", eloc)
                        _get_str(issues, key, example, "citation", eloc, allow_empty=True)
        _get_str(issues, key, record, "explanation_note", loc, allow_empty=True)

        # consistency rules (only on fields that parsed cleanly)
        if scope is not None and scope not in (Scope.GLOBAL, Scope.LOCAL):
            issues.error(
                key, "E_ENTRY_SCOPE", f"{loc}.scope", "entry scope must be global or local"
            )
        if agnosticism is not None and model_types is not None:
            agnostic = agnosticism is Agnosticism.MODEL_AGNOSTIC
            if agnostic and model_types:
                issues.error(
                    key,
                    "E_AGNOSTICISM",
                    f"{loc}.model_types",
                    "model-agnostic entries must not list model types",
                )
            if not agnostic and not model_types:
                issues.error(
                    key,
                    "E_AGNOSTICISM",
                    f"{loc}.model_types",
                    "model-specific entries must list at least one model type",
                )
        for gid in sorted(goal_ids):
            g_scope, g_stage, g_addressable = goal_meta.get(gid, (None, None, None))
            if g_addressable is False:
                issues.error(
                    key,
                    "E_MANUAL_GOAL_MAPPED",
                    f"{loc}.goal_ids",
                    f"goal {gid.label} is manual-only and cannot be mapped to an XAI entry",
                )
            if scope is Scope.LOCAL and g_scope is Scope.GLOBAL:
                issues.error(
                    key,
                    "E_SCOPE_RULE",
                    f"{loc}.goal_ids",
                    f"local-scope entry cannot claim global-scope goal {gid.label}",
                )
        if family is not None:
            if GoalId.A in goal_ids and family not in GLOBAL_BEHAVIOUR_FAMILIES:
                issues.error(
                    key,
                    "E_GOAL_A_FAMILY",
                    f"{loc}.goal_ids",
                    f"family {family.value} cannot claim goal A "
                    "(reserved for global feature attribution, rule extraction, "
                    "rule-based and surrogate families)",
                )
            if GoalId.E in goal_ids and family not in ACTIONABLE_CHANGE_FAMILIES:
                issues.error(
                    key,
                    "E_GOAL_E_FAMILY",
                    f"{loc}.goal_ids",
                    f"family {family.value} cannot claim goal E "
                    "(reserved for families that suggest actionable input changes)",
                )
            if GoalId.H in goal_ids and family not in GLOBAL_BEHAVIOUR_FAMILIES:
                issues.error(
                    key,
                    "E_GOAL_H_FAMILY",
                    f"{loc}.goal_ids",
                    f"family {family.value} cannot claim goal H "
                    "(reserved for global feature attribution, rule extraction, "
                    "rule-based and surrogate families)",
                )
        if stage is not None and stage is not Stage.ANY and goal_ids:
            goal_stages = [goal_meta[g][1] for g in goal_ids if g in goal_meta]
            if goal_stages and all(
                gs is not None and gs is not Stage.ANY and gs is not stage for gs in goal_stages
            ):
                issues.warning(
                    key,
                    "W_STAGE_MISMATCH",
                    f"{loc}.stage",
                    f"entry stage {stage.value} conflicts with the stages of all its goals",
                )

    return issues.sorted()


def kb_from_document(doc: dict) -> KnowledgeBase:
    """Build a KnowledgeBase from a document that passed validate_kb."""
    regulations = {}
    for record in doc["regulations"]:
        rid = RegulationId(record["id"])
        regulations[rid] = Regulation(
            id=rid,
            full_name=record["full_name"],
            explanation_articles=tuple(record["explanation_articles"]),
            trigger_description=record["trigger_description"],
            format_constraints=record["format_constraints"],
        )
    goals = []
    for record in doc["goals"]:
        goals.append(
            LegalGoal(
                id=GoalId(record["id"]),
                description=record["description"],
                regulations=frozenset(RegulationId(v) for v in record["regulations"]),
                scope=Scope(record["scope"]),
                stage=Stage(record["stage"]),
                xai_addressable=record["xai_addressable"],
            )
        )
    catalog = []
    for record in doc["catalog"]:
        catalog.append(
            MethodEntry(
                id=record["id"],
                question=record["question"],
                family=MethodFamily(record["family"]),
                scope=Scope(record["scope"]),
                stage=Stage(record["stage"]),
                agnosticism=Agnosticism(record["agnosticism"]),
                model_types=frozenset(ModelType(v) for v in record["model_types"]),
                input_modalities=frozenset(InputModality(v) for v in record["input_modalities"]),
                goal_ids=frozenset(GoalId(v) for v in record["goal_ids"]),
                algorithm_examples=tuple(
                    AlgorithmExample(name=e["name"], citation=e["citation"])
                    for e in record["algorithm_examples"]
                ),
                explanation_note=record["explanation_note"],
            )
        )
    return KnowledgeBase(
        version=doc["version"],
        regulations=tuple(
            regulations[rid] for rid in REGULATION_ORDER if rid in regulations
        ),
        goals=tuple(sorted(goals, key=lambda g: g.id.value)),
        catalog=tuple(sorted(catalog, key=lambda e: e.id)),
    )


def kb_to_document(kb: KnowledgeBase) -> dict:
    """Canonical document form: records and set-valued fields sorted."""
    return {
        "version": kb.version,
        "regulations": [
            {
                "id": r.id.value,
                "full_name": r.full_name,
                "explanation_articles": list(r.explanation_articles),
                "trigger_description": r.trigger_description,
                "format_constraints": r.format_constraints,
            }
            for r in sorted(kb.regulations, key=lambda r: r.id.value)
        ],
        "goals": [
            {
                "id": g.id.value,
                "description": g.description,
                "regulations": sorted(r.value for r in g.regulations),
                "scope": g.scope.value,
                "stage": g.stage.value,
                "xai_addressable": g.xai_addressable,
            }
            for g in sorted(kb.goals, key=lambda g: g.id.value)
        ],
        "catalog": [
            {
                "id": e.id,
                "question": e.question,
                "family": e.family.value,
                "scope": e.scope.value,
                "stage": e.stage.value,
                "agnosticism": e.agnosticism.value,
                "model_types": sorted(m.value for m in e.model_types),
                "input_modalities": sorted(m.value for m in e.input_modalities),
                "goal_ids": sorted(g.value for g in e.goal_ids),
                "algorithm_examples": [
                    {"name": a.name, "citation": a.citation} for a in e.algorithm_examples
                ],
                "explanation_note": e.explanation_note,
            }
            for e in sorted(kb.catalog, key=lambda e: e.id)
        ],
    }


def canonical_json(doc: Any) -> bytes:
    """Canonical byte form of a document tree: sorted keys, no whitespace."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def serialize_kb(kb: KnowledgeBase) -> bytes:
    """Serialize a KB to canonical YAML (loadable by load_kb)."""
    return yaml.safe_dump(
        kb_to_document(kb), sort_keys=False, allow_unicode=True, width=100
    ).encode("utf-8")


def load_kb_with_issues(source: Source) -> tuple[KnowledgeBase | None, list[ValidationIssue]]:
    """Parse + validate; return the KB (when error-free) and all issues."""
    doc = parse_document(source)
    issues = validate_kb(doc)
    if any(i.severity is Severity.ERROR for i in issues):
        return None, issues
    return kb_from_document(doc), issues


def load_kb(source: Source) -> KnowledgeBase:
    """Load a knowledge base or raise DocumentError with every issue found."""
    kb, issues = load_kb_with_issues(source)
    if kb is None:
        raise DocumentError(issues)
    return kb


@lru_cache(maxsize=1)
def load_default_kb() -> KnowledgeBase:
    """Load the knowledge base shipped with the package."""
    data = resources.files("xca").joinpath("data/default_kb.yaml").read_bytes()
    return load_kb(data)


# ---------------------------------------------------------------------------
# device profiles

_PROFILE_KEYS = {"device": True}
_DEVICE_KEYS = {
    "name": True,
    "loop_type": True,
    "is_medical_device": True,
    "requires_third_party_conformity": True,
    "listed_annex_iii": True,
    "processes_personal_data": True,
    "high_stakes_effects": True,
    "model_types": True,
    "input_modalities": True,
    "audience": True,
}


def validate_device_mapping(device: Any, location: str = "device") -> list[ValidationIssue]:
    """Strict-schema check of the inner device mapping of a profile."""
    issues = _Issues()
    key = (0, 0)
    if not _check_mapping(issues, key, device, location, _DEVICE_KEYS):
        return issues.sorted()
    _get_str(issues, key, device, "name", location)
    _get_enum(issues, key, device, "loop_type", location, LoopType)
    medical = _get_bool(issues, key, device, "is_medical_device", location)
    conformity = _get_bool(issues, key, device, "requires_third_party_conformity", location)
    _get_bool(issues, key, device, "listed_annex_iii", location)
    _get_bool(issues, key, device, "processes_personal_data", location)
    _get_bool(issues, key, device, "high_stakes_effects", location)
    _enum_set(
        issues,
        key,
        _get_str_list(issues, key, device, "model_types", location, allow_empty=False),
        location,
        "model_types",
        ModelType,
    )
    _enum_set(
        issues,
        key,
        _get_str_list(issues, key, device, "input_modalities", location, allow_empty=False),
        location,
        "input_modalities",
        InputModality,
    )
    _get_enum(issues, key, device, "audience", location, Audience)
    if conformity is True and medical is False:
        issues.error(
            key,
            "E_CONFORMITY_FLAG",
            f"{location}.requires_third_party_conformity",
            "a third-party conformity assessment presupposes a medical device",
        )
    return issues.sorted()


def validate_profile(doc: Any) -> list[ValidationIssue]:
    """Check a parsed profile document (top-level key ``device``)."""
    issues = _Issues()
    if not isinstance(doc, dict):
        issues.error((0, -1), "E_SCHEMA", "document", "top level must be a mapping")
        return issues.sorted()
    if not _check_mapping(issues, (0, -1), doc, "document", _PROFILE_KEYS):
        return issues.sorted()
    out = issues.sorted()
    if "device" in doc:
        out.extend(validate_device_mapping(doc["device"]))
    return out


def profile_from_device_mapping(device: dict) -> DeviceProfile:
    """Build a DeviceProfile from a validated device mapping."""
    return DeviceProfile(
        name=device["name"],
        loop_type=LoopType(device["loop_type"]),
        is_medical_device=device["is_medical_device"],
        requires_third_party_conformity=device["requires_third_party_conformity"],
        listed_annex_iii=device["listed_annex_iii"],
        processes_personal_data=device["processes_personal_data"],
        high_stakes_effects=device["high_stakes_effects"],
        model_types=frozenset(ModelType(v) for v in device["model_types"]),
        input_modalities=frozenset(InputModality(v) for v in device["input_modalities"]),
        audience=Audience(device["audience"]),
    )


def profile_to_document(profile: DeviceProfile) -> dict:
    return {"device": device_to_mapping(profile)}


def device_to_mapping(profile: DeviceProfile) -> dict:
    return {
        "name": profile.name,
        "loop_type": profile.loop_type.value,
        "is_medical_device": profile.is_medical_device,
        "requires_third_party_conformity": profile.requires_third_party_conformity,
        "listed_annex_iii": profile.listed_annex_iii,
        "processes_personal_data": profile.processes_personal_data,
        "high_stakes_effects": profile.high_stakes_effects,
        "model_types": sorted(m.value for m in profile.model_types),
        "input_modalities": sorted(m.value for m in profile.input_modalities),
        "audience": profile.audience.value,
    }


def load_profile(source: Source) -> DeviceProfile:
    """Load a device profile or raise DocumentError with all issues."""
    doc = parse_document(source)
    issues = validate_profile(doc)
    if any(i.severity is Severity.ERROR for i in issues):
        raise DocumentError(issues)
    return profile_from_device_mapping(doc["device"])
