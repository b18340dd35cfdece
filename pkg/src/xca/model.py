"""Core domain types for the compliance knowledge base and device profiles.

A knowledge base bundles three kinds of records:

* regulations -- the EU instruments whose explanation duties are modelled,
* legal explanatory goals -- the high-level objectives those duties pursue,
* method catalog -- XAI method families, each phrased as the question it
  answers, mapped to the goals it can help meet.

All types are immutable; a loaded knowledge base is safe to share
read-only across threads.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum


class RegulationId(str, Enum):
    """The three EU instruments covered by the knowledge base."""

    MDR = "mdr"
    GDPR = "gdpr"
    AIA = "aia"


#: Fixed presentation order for findings and citations.
REGULATION_ORDER: tuple[RegulationId, ...] = (
    RegulationId.MDR,
    RegulationId.AIA,
    RegulationId.GDPR,
)


class GoalId(str, Enum):
    """Legal explanatory goals A-K; total order is alphabetical."""

    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"
    F = "f"
    G = "g"
    H = "h"
    I = "i"
    J = "j"
    K = "k"

    def __lt__(self, other: object) -> bool:  # type: ignore[override]
        if isinstance(other, GoalId):
            return self.value < other.value
        return NotImplemented

    @property
    def label(self) -> str:
        """Display form: the uppercase letter."""
        return self.value.upper()


class Scope(str, Enum):
    """Whether an explanation covers the whole model or one inference."""

    GLOBAL = "global"
    LOCAL = "local"
    ANY = "any"


class Stage(str, Enum):
    """Whether an explanation is owed before use or after an output."""

    EX_ANTE = "ex_ante"
    EX_POST = "ex_post"
    ANY = "any"


class MethodFamily(str, Enum):
    """Normalized XAI method families; one family per catalog entry."""

    GLOBAL_FEATURE_ATTRIBUTION = "global_feature_attribution"
    RULE_EXTRACTION = "rule_extraction"
    RULE_BASED = "rule_based"
    SURROGATE = "surrogate"
    LOCAL_FEATURE_ATTRIBUTION = "local_feature_attribution"
    SALIENCY_MAP = "saliency_map"
    ACTIVATION_MAXIMISATION = "activation_maximisation"
    LAYERWISE_RELEVANCE = "layerwise_relevance"
    CONCEPT_BASED = "concept_based"
    SIMILARITY_BASED = "similarity_based"
    COUNTERFACTUAL = "counterfactual"
    CONTRASTIVE = "contrastive"
    ANCHORS = "anchors"
    COUNTERFACTUAL_INTERACTION = "counterfactual_interaction"
    CONTEXTUAL_ANALYSIS = "contextual_analysis"
    VISUAL_ATTRIBUTION = "visual_attribution"
    FEATURE_IMPORTANCE_ANALYSIS = "feature_importance_analysis"
    SELF_ORGANISING_MAP = "self_organising_map"


#: Families allowed to claim the risk-understanding goal (A) and the
#: system-usage goal (H): only methods exposing model-wide behaviour.
GLOBAL_BEHAVIOUR_FAMILIES = frozenset(
    {
        MethodFamily.GLOBAL_FEATURE_ATTRIBUTION,
        MethodFamily.RULE_EXTRACTION,
        MethodFamily.RULE_BASED,
        MethodFamily.SURROGATE,
    }
)

#: Families allowed to claim the decision-change goal (E): methods that
#: suggest how inputs could be altered, not just which ones mattered.
ACTIONABLE_CHANGE_FAMILIES = frozenset(
    {
        MethodFamily.COUNTERFACTUAL,
        MethodFamily.CONTRASTIVE,
        MethodFamily.COUNTERFACTUAL_INTERACTION,
        MethodFamily.RULE_EXTRACTION,
        MethodFamily.RULE_BASED,
        MethodFamily.SURROGATE,
    }
)


class ModelType(str, Enum):
    DNN = "dnn"
    TREE_BASED = "tree_based"
    SVM = "svm"
    BAYESIAN_NETWORK = "bayesian_network"
    LINEAR_MODEL = "linear_model"
    RANDOM_FOREST = "random_forest"
    DECISION_TREE = "decision_tree"
    OTHER = "other"


class InputModality(str, Enum):
    TABULAR = "tabular"
    IMAGE = "image"
    TIME_SERIES = "time_series"
    TEXT = "text"
    OTHER = "other"


class Agnosticism(str, Enum):
    MODEL_AGNOSTIC = "model_agnostic"
    MODEL_SPECIFIC = "model_specific"


class LoopType(str, Enum):
    """Control mechanism of the device: who acts on the model's output."""

    OPEN = "open"
    SEMI_CLOSED = "semi_closed"
    CLOSED = "closed"


class Audience(str, Enum):
    """Intended recipient of the report; affects wording only."""

    HEALTHCARE_PROFESSIONAL = "healthcare_professional"
    LAYPERSON = "layperson"
    PATIENT = "patient"


@dataclass(frozen=True)
class Regulation:
    """One EU instrument with its explanation-duty citations."""

    id: RegulationId
    full_name: str
    explanation_articles: tuple[str, ...]
    trigger_description: str
    format_constraints: str

    def __post_init__(self) -> None:
        if not self.explanation_articles:
            raise ValueError(f"regulation {self.id.value}: explanation_articles must be non-empty")


@dataclass(frozen=True)
class LegalGoal:
    """One legal explanatory goal with the regulations demanding it."""

    id: GoalId
    description: str
    regulations: frozenset[RegulationId]
    scope: Scope
    stage: Stage
    xai_addressable: bool

    def __post_init__(self) -> None:
        if not self.regulations:
            raise ValueError(f"goal {self.id.label}: regulations must be non-empty")


@dataclass(frozen=True)
class AlgorithmExample:
    """An illustrative algorithm for a catalog entry, with its citation."""

    name: str
    citation: str


@dataclass(frozen=True)
class MethodEntry:
    """One catalog row: a question an XAI family answers, and the goals it serves.

    An empty ``model_types`` set means the entry is model-agnostic; an
    empty ``input_modalities`` set means it is unconstrained by input
    format.
    """

    id: str
    question: str
    family: MethodFamily
    scope: Scope
    stage: Stage
    agnosticism: Agnosticism
    model_types: frozenset[ModelType]
    input_modalities: frozenset[InputModality]
    goal_ids: frozenset[GoalId]
    algorithm_examples: tuple[AlgorithmExample, ...] = ()
    explanation_note: str = ""

    def __post_init__(self) -> None:
        if self.scope not in (Scope.GLOBAL, Scope.LOCAL):
            raise ValueError(f"entry {self.id}: scope must be global or local")
        if not self.goal_ids:
            raise ValueError(f"entry {self.id}: goal_ids must be non-empty")
        agnostic = self.agnosticism is Agnosticism.MODEL_AGNOSTIC
        if agnostic != (not self.model_types):
            raise ValueError(f"entry {self.id}: agnosticism flag inconsistent with model_types")


@dataclass(frozen=True)
class DeviceProfile:
    """User-supplied description of the device under analysis."""

    name: str
    loop_type: LoopType
    is_medical_device: bool
    requires_third_party_conformity: bool
    listed_annex_iii: bool
    processes_personal_data: bool
    high_stakes_effects: bool
    model_types: frozenset[ModelType]
    input_modalities: frozenset[InputModality]
    audience: Audience = Audience.HEALTHCARE_PROFESSIONAL

    def __post_init__(self) -> None:
        if not self.model_types:
            raise ValueError("device profile: model_types must be non-empty")
        if not self.input_modalities:
            raise ValueError("device profile: input_modalities must be non-empty")
        if self.requires_third_party_conformity and not self.is_medical_device:
            raise ValueError(
                "device profile: requires_third_party_conformity implies is_medical_device"
            )


@dataclass(frozen=True)
class KnowledgeBase:
    """Validated, immutable bundle of regulations, goals, and catalog."""

    version: str
    regulations: tuple[Regulation, ...]
    goals: tuple[LegalGoal, ...]
    catalog: tuple[MethodEntry, ...]
    _regulations_by_id: dict[RegulationId, Regulation] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )
    _goals_by_id: dict[GoalId, LegalGoal] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )
    _entries_by_id: dict[str, MethodEntry] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        self._regulations_by_id.update({r.id: r for r in self.regulations})
        self._goals_by_id.update({g.id: g for g in self.goals})
        self._entries_by_id.update({e.id: e for e in self.catalog})
        if len(self._entries_by_id) != len(self.catalog):
            raise ValueError("knowledge base: duplicate catalog entry ids")

    def regulation(self, rid: RegulationId) -> Regulation:
        return self._regulations_by_id[rid]

    def goal(self, gid: GoalId) -> LegalGoal:
        return self._goals_by_id[gid]

    def entry(self, entry_id: str) -> MethodEntry:
        return self._entries_by_id[entry_id]

    @property
    def goal_ids(self) -> tuple[GoalId, ...]:
        return tuple(sorted(g.id for g in self.goals))


def kb_fingerprint(kb: KnowledgeBase) -> str:
    """SHA-256 over the canonical serialization (sorted keys, sorted sets).

    Equal knowledge bases yield equal fingerprints; any content edit
    changes the digest.
    """
    from .loader import canonical_json, kb_to_document

    return hashlib.sha256(canonical_json(kb_to_document(kb))).hexdigest()
