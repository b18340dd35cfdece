"""Regulation applicability rules.

Maps a device profile to the set of regulations whose explanation
requirements apply, with a justification for every positive AND negative
finding.  The rules:

* MDR applies iff the product is a medical device.
* AIA applies iff the system is high-risk: a medical device undergoing a
  third-party conformity assessment (Annex I route) or an Annex III
  listing.
* GDPR explanation duties apply iff the device is closed-loop (decisions
  are solely automated), processes personal data, and has high-stakes
  effects.  Open and semi-closed loops keep a human in the decision path
  and never trigger them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .model import DeviceProfile, KnowledgeBase, LoopType, RegulationId

FlagValue = Union[bool, str]


@dataclass(frozen=True)
class ApplicabilityFinding:
    regulation: RegulationId
    applies: bool
    justification: str
    trigger_flags: tuple[tuple[str, FlagValue], ...]


def _articles(kb: KnowledgeBase, rid: RegulationId) -> str:
    return ", ".join(kb.regulation(rid).explanation_articles)


def _assess_mdr(profile: DeviceProfile, kb: KnowledgeBase) -> ApplicabilityFinding:
    flags = (("is_medical_device", profile.is_medical_device),)
    if profile.is_medical_device:
        justification = (
            "Applicable (medical device): instructions for use must satisfy "
            f"{_articles(kb, RegulationId.MDR)}."
        )
    else:
        justification = "Not applicable (not a medical device)."
    return ApplicabilityFinding(RegulationId.MDR, profile.is_medical_device, justification, flags)


def _assess_aia(profile: DeviceProfile, kb: KnowledgeBase) -> ApplicabilityFinding:
    flags = (
        ("is_medical_device", profile.is_medical_device),
        ("requires_third_party_conformity", profile.requires_third_party_conformity),
        ("listed_annex_iii", profile.listed_annex_iii),
    )
    conformity_route = profile.is_medical_device and profile.requires_third_party_conformity
    annex_route = profile.listed_annex_iii
    applies = conformity_route or annex_route
    if applies:
        if conformity_route and annex_route:
            route = (
                "third-party conformity assessment as a medical device and Annex III listing"
            )
        elif conformity_route:
            route = "third-party conformity assessment as a medical device (Annex I route)"
        else:
            route = "Annex III listing"
        justification = (
            f"Applicable (high-risk AI system): {route}; transparency and human-oversight "
            f"duties per {_articles(kb, RegulationId.AIA)}."
        )
    else:
        justification = (
            "Not applicable (not a high-risk AI system): no third-party conformity "
            "assessment and not listed in Annex III."
        )
    return ApplicabilityFinding(RegulationId.AIA, applies, justification, flags)


def _assess_gdpr(profile: DeviceProfile, kb: KnowledgeBase) -> ApplicabilityFinding:
    flags = (
        ("loop_type", profile.loop_type.value),
        ("processes_personal_data", profile.processes_personal_data),
        ("high_stakes_effects", profile.high_stakes_effects),
    )
    closed = profile.loop_type is LoopType.CLOSED
    applies = closed and profile.processes_personal_data and profile.high_stakes_effects
    if applies:
        justification = (
            "Applicable (high-stakes decision): closed-loop operation decides without human "
            "involvement, personal data is processed, and effects are high-stakes; "
            f"safeguards per {_articles(kb, RegulationId.GDPR)}."
        )
    elif not closed:
        loop = "open" if profile.loop_type is LoopType.OPEN else "semi-closed"
        justification = (
            f"Not applicable (no fully-automated decision): {loop}-loop operation keeps a "
            "human in the decision path."
        )
    elif not profile.processes_personal_data:
        justification = "Not applicable (no personal data is processed)."
    else:
        justification = (
            "Not applicable (no high-stakes decision): effects are not legal or similarly "
            "significant."
        )
    return ApplicabilityFinding(RegulationId.GDPR, applies, justification, flags)


def assess(profile: DeviceProfile, kb: KnowledgeBase) -> list[ApplicabilityFinding]:
    """One finding per regulation, in fixed order MDR, AIA, GDPR."""
    return [
        _assess_mdr(profile, kb),
        _assess_aia(profile, kb),
        _assess_gdpr(profile, kb),
    ]


def applicable_set(findings: list[ApplicabilityFinding]) -> frozenset[RegulationId]:
    return frozenset(f.regulation for f in findings if f.applies)
