import dataclasses

from xca import (
    Audience,
    GoalId,
    LoopType,
    ModelType,
    RegulationId,
    analyze,
    diff_reports,
    render_diff,
)
from xca.report import ReportFormat


def reports_for(kb, base_profile, modified_profile):
    return (
        analyze(base_profile, kb, deterministic=True),
        analyze(modified_profile, kb, deterministic=True),
    )


class TestScsToClosed:
    def test_gdpr_flips_and_gdpr_duties_appear(self, scs_profile, kb):
        closed = dataclasses.replace(scs_profile, loop_type=LoopType.CLOSED)
        diff = diff_reports(*reports_for(kb, scs_profile, closed))
        assert [(c.regulation, c.base_applies, c.modified_applies) for c in diff.findings_changed] == [
            (RegulationId.GDPR, False, True)
        ]
        added = {c.goal.label: c for c in diff.goals_added}
        assert set(added) == {"C", "D", "E", "G"}
        assert all(c.regulations == (RegulationId.GDPR,) for c in added.values())
        assert {g for g, c in added.items() if c.addressable} == {"D", "E", "G"}
        assert not added["C"].addressable

    def test_rendered_diff_mentions_gdpr_flip(self, scs_profile, kb):
        closed = dataclasses.replace(scs_profile, loop_type=LoopType.CLOSED)
        diff = diff_reports(*reports_for(kb, scs_profile, closed))
        text = render_diff(diff, ReportFormat.DOCUMENT).decode()
        assert "GDPR: does not apply -> applies" in text


class TestIdentityAndMetadata:
    def test_identical_profiles_diff_empty(self, rns_profile, kb):
        diff = diff_reports(*reports_for(kb, rns_profile, rns_profile))
        assert diff.identical
        assert render_diff(diff, ReportFormat.DOCUMENT).decode().count("No derivation differences") == 1

    def test_audience_change_is_invisible_to_the_diff(self, rns_profile, kb):
        patient = dataclasses.replace(rns_profile, audience=Audience.PATIENT)
        diff = diff_reports(*reports_for(kb, rns_profile, patient))
        assert diff.identical


class TestModelSwap:
    def test_svm_swap_trades_dnn_entries_for_som(self, rns_profile, kb):
        svm = dataclasses.replace(rns_profile, model_types=frozenset({ModelType.SVM}))
        diff = diff_reports(*reports_for(kb, rns_profile, svm))
        assert "MS-9" in diff.eligible_added
        assert set(diff.eligible_removed) == {
            "MS-1", "MS-4", "MS-5", "MS-6", "MS-7", "MS-8",
            "TS-1", "TS-2", "TS-3", "TS-4", "TS-5",
        }
        assert "MS-3" not in diff.eligible_removed  # lists svm too


class TestCoverChanges:
    def test_losing_rule_based_entries_changes_covers(self, rns_profile, kb):
        # a tree-only device keeps MS-1/MS-2 but loses the all-goal singletons
        tree = dataclasses.replace(
            rns_profile,
            model_types=frozenset({ModelType.TREE_BASED}),
            input_modalities=rns_profile.input_modalities,
        )
        diff = diff_reports(*reports_for(kb, rns_profile, tree))
        assert set(diff.covers_removed) == {("MS-3",), ("MS-4",)}
        assert ("MA-1",) not in diff.covers_removed
        assert diff.base_minimum_size == diff.modified_minimum_size == 1
