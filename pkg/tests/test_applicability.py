import dataclasses

import hypothesis.strategies as st
from hypothesis import assume, given

from xca import LoopType, RegulationId, applicable_set, assess
from strategies import TRIGGER_FLAGS, device_profiles


def applies_map(findings):
    return {f.regulation: f.applies for f in findings}


class TestCaseStudies:
    def test_rns_triggers_all_three(self, rns_profile, kb):
        assert applies_map(assess(rns_profile, kb)) == {
            RegulationId.MDR: True,
            RegulationId.AIA: True,
            RegulationId.GDPR: True,
        }

    def test_scs_escapes_gdpr(self, scs_profile, kb):
        findings = assess(scs_profile, kb)
        assert applies_map(findings) == {
            RegulationId.MDR: True,
            RegulationId.AIA: True,
            RegulationId.GDPR: False,
        }
        gdpr = findings[2]
        assert "no fully-automated decision" in gdpr.justification

    def test_gadget_triggers_nothing(self, gadget_profile, kb):
        assert applies_map(assess(gadget_profile, kb)) == {
            RegulationId.MDR: False,
            RegulationId.AIA: False,
            RegulationId.GDPR: False,
        }

    def test_closed_loop_without_high_stakes_escapes_gdpr(self, rns_profile, kb):
        profile = dataclasses.replace(rns_profile, high_stakes_effects=False)
        findings = assess(profile, kb)
        assert applies_map(findings)[RegulationId.GDPR] is False
        assert "high-stakes" in findings[2].justification

    def test_closed_loop_without_personal_data_escapes_gdpr(self, rns_profile, kb):
        profile = dataclasses.replace(rns_profile, processes_personal_data=False)
        assert applies_map(assess(profile, kb))[RegulationId.GDPR] is False

    def test_annex_iii_alone_triggers_aia(self, gadget_profile, kb):
        profile = dataclasses.replace(gadget_profile, listed_annex_iii=True)
        assert applies_map(assess(profile, kb))[RegulationId.AIA] is True


class TestShape:
    def test_three_findings_in_fixed_order(self, rns_profile, kb):
        findings = assess(rns_profile, kb)
        assert [f.regulation for f in findings] == [
            RegulationId.MDR,
            RegulationId.AIA,
            RegulationId.GDPR,
        ]

    def test_negative_findings_are_justified_too(self, gadget_profile, kb):
        for finding in assess(gadget_profile, kb):
            assert finding.justification.strip()
            assert finding.trigger_flags

    def test_deterministic(self, scs_profile, kb):
        assert assess(scs_profile, kb) == assess(scs_profile, kb)

    def test_justifications_cite_kb_articles(self, rns_profile, kb):
        findings = assess(rns_profile, kb)
        for finding in findings:
            articles = kb.regulation(finding.regulation).explanation_articles
            assert any(article in finding.justification for article in articles)


class TestProperties:
    @given(profile=device_profiles())
    def test_gdpr_implies_closed_loop(self, kb, profile):
        if applicable_set(assess(profile, kb)) >= {RegulationId.GDPR}:
            assert profile.loop_type is LoopType.CLOSED

    @given(profile=device_profiles(), flag=st.sampled_from(TRIGGER_FLAGS))
    def test_raising_a_trigger_flag_never_revokes_a_finding(self, kb, profile, flag):
        assume(not getattr(profile, flag))
        if flag == "requires_third_party_conformity":
            assume(profile.is_medical_device)
        raised = dataclasses.replace(profile, **{flag: True})
        before = applies_map(assess(profile, kb))
        after = applies_map(assess(raised, kb))
        for regulation in before:
            assert not (before[regulation] and not after[regulation])

    @given(profile=device_profiles())
    def test_exactly_one_finding_per_regulation(self, kb, profile):
        findings = assess(profile, kb)
        assert sorted(f.regulation.value for f in findings) == ["aia", "gdpr", "mdr"]
