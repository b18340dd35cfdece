"""xca: align XAI method choices with EU explanation requirements for
smart biomedical devices.

Typical use::

    from xca import analyze, load_default_kb, load_profile

    kb = load_default_kb()
    profile = load_profile(Path("device.profile"))
    report = analyze(profile, kb)
"""

from .applicability import ApplicabilityFinding, applicable_set, assess
from .diff import ReportDiff, diff_reports, diff_to_document, render_diff
from .goals import GoalRequirement, derive_goals, partition
from .loader import (
    DocumentError,
    Severity,
    ValidationIssue,
    load_default_kb,
    load_kb,
    load_profile,
    serialize_kb,
    validate_kb,
    validate_profile,
)
from .matching import CoverageMatrix, EligibleEntry, build_matrix, eligible_entries
from .model import (
    Agnosticism,
    AlgorithmExample,
    Audience,
    DeviceProfile,
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
    kb_fingerprint,
)
from .recommend import Recommendation, explain_cover, irredundant_covers, minimal_covers
from .report import AnalysisReport, ReportFormat, analyze, parse_report, render

__version__ = "0.1.0"

__all__ = [
    "Agnosticism",
    "AlgorithmExample",
    "AnalysisReport",
    "ApplicabilityFinding",
    "Audience",
    "CoverageMatrix",
    "DeviceProfile",
    "DocumentError",
    "EligibleEntry",
    "GoalId",
    "GoalRequirement",
    "InputModality",
    "KnowledgeBase",
    "LegalGoal",
    "LoopType",
    "MethodEntry",
    "MethodFamily",
    "ModelType",
    "Recommendation",
    "Regulation",
    "RegulationId",
    "ReportDiff",
    "ReportFormat",
    "Scope",
    "Severity",
    "Stage",
    "ValidationIssue",
    "analyze",
    "applicable_set",
    "assess",
    "build_matrix",
    "derive_goals",
    "diff_reports",
    "diff_to_document",
    "eligible_entries",
    "explain_cover",
    "irredundant_covers",
    "kb_fingerprint",
    "load_default_kb",
    "load_kb",
    "load_profile",
    "minimal_covers",
    "parse_report",
    "partition",
    "render",
    "render_diff",
    "serialize_kb",
    "validate_kb",
    "validate_profile",
]
