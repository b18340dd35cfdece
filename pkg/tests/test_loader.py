import copy
from importlib import resources

import pytest
import yaml

from xca import (
    DocumentError,
    Severity,
    kb_fingerprint,
    load_kb,
    load_profile,
    serialize_kb,
    validate_kb,
    validate_profile,
)
from xca.loader import (
    ISSUE_CODES,
    load_kb_with_issues,
    parse_document,
)


@pytest.fixture()
def kb_doc():
    data = resources.files("xca").joinpath("data/default_kb.yaml").read_bytes()
    return yaml.safe_load(data)


def codes(issues):
    return [i.code for i in issues]


def errors_of(issues):
    return [i for i in issues if i.severity is Severity.ERROR]


def find_entry(doc, entry_id):
    for record in doc["catalog"]:
        if record["id"] == entry_id:
            return record
    raise KeyError(entry_id)


class TestShippedKb:
    def test_loads_with_expected_counts(self, kb):
        assert len(kb.regulations) == 3
        assert len(kb.goals) == 11
        assert len(kb.catalog) == 23

    def test_validator_returns_no_issues(self, kb_doc):
        assert validate_kb(kb_doc) == []

    def test_round_trip_preserves_content_and_fingerprint(self, kb):
        again = load_kb(serialize_kb(kb))
        assert again == kb
        assert kb_fingerprint(again) == kb_fingerprint(kb)

    def test_pinned_citation_sets(self, kb):
        by_id = {r.id.value: set(r.explanation_articles) for r in kb.regulations}
        assert by_id["mdr"] == {"Art. 10.11", "Annex I.23.4"}
        assert by_id["aia"] == {"Art. 13", "Art. 14"}
        assert by_id["gdpr"] == {
            "Art. 13.2(f)",
            "Art. 14.2(g)",
            "Art. 15.1(f)",
            "Art. 22",
            "Recital 71",
        }


class TestSyntaxErrors:
    def test_unparseable_document_reports_line_and_column(self):
        with pytest.raises(DocumentError) as exc_info:
            parse_document(b"version: [unclosed\ncatalog: {")
        issue = exc_info.value.issues[0]
        assert issue.code == "E_SYNTAX"
        assert "line" in issue.location and "column" in issue.location

    def test_load_kb_propagates_syntax_issues(self):
        with pytest.raises(DocumentError):
            load_kb(b"{{{{")


class TestSchemaStrictness:
    def test_unknown_top_level_key_rejected(self, kb_doc):
        kb_doc["bonus"] = 1
        issues = validate_kb(kb_doc)
        assert "E_SCHEMA" in codes(errors_of(issues))

    def test_unknown_entry_key_rejected(self, kb_doc):
        find_entry(kb_doc, "MA-1")["rank"] = 3
        issues = validate_kb(kb_doc)
        assert any(i.code == "E_SCHEMA" and "rank" in i.location for i in issues)

    def test_missing_required_key_rejected(self, kb_doc):
        del find_entry(kb_doc, "MA-1")["question"]
        assert "E_SCHEMA" in codes(errors_of(validate_kb(kb_doc)))

    def test_bad_version_rejected(self, kb_doc):
        kb_doc["version"] = "one-point-oh"
        assert "E_VERSION" in codes(validate_kb(kb_doc))

    def test_enum_closure_on_scope(self, kb_doc):
        find_entry(kb_doc, "MA-1")["scope"] = "sideways"
        assert "E_ENUM" in codes(validate_kb(kb_doc))

    def test_enum_closure_on_model_types(self, kb_doc):
        find_entry(kb_doc, "MS-1")["model_types"] = ["dnn", "gan"]
        assert "E_ENUM" in codes(validate_kb(kb_doc))

    def test_entry_scope_any_rejected(self, kb_doc):
        find_entry(kb_doc, "MA-1")["scope"] = "any"
        assert "E_ENTRY_SCOPE" in codes(validate_kb(kb_doc))

    def test_empty_catalog_rejected(self, kb_doc):
        kb_doc["catalog"] = []
        assert "E_EMPTY_CATALOG" in codes(validate_kb(kb_doc))

    def test_duplicate_entry_id_rejected(self, kb_doc):
        kb_doc["catalog"].append(copy.deepcopy(find_entry(kb_doc, "MA-1")))
        assert "E_DUPLICATE_ID" in codes(validate_kb(kb_doc))

    def test_missing_regulation_rejected(self, kb_doc):
        kb_doc["regulations"] = [r for r in kb_doc["regulations"] if r["id"] != "gdpr"]
        for goal in kb_doc["goals"]:
            goal["regulations"] = [r for r in goal["regulations"] if r != "gdpr"] or ["aia"]
        assert "E_REGULATION_SET" in codes(validate_kb(kb_doc))

    def test_citation_set_pinned(self, kb_doc):
        kb_doc["regulations"][0]["explanation_articles"] = ["Art. 1"]
        assert "E_CITATION_SET" in codes(validate_kb(kb_doc))

    def test_addressable_flag_pinned(self, kb_doc):
        for goal in kb_doc["goals"]:
            if goal["id"] == "c":
                goal["xai_addressable"] = True
        assert "E_ADDRESSABLE_FLAG" in codes(validate_kb(kb_doc))


class TestConsistencyRules:
    def test_goal_c_mapping_rejected(self, kb_doc):
        find_entry(kb_doc, "MS-9")["goal_ids"].append("c")
        assert "E_MANUAL_GOAL_MAPPED" in codes(validate_kb(kb_doc))

    def test_goal_j_mapping_rejected(self, kb_doc):
        find_entry(kb_doc, "MS-1")["goal_ids"].append("j")
        assert "E_MANUAL_GOAL_MAPPED" in codes(validate_kb(kb_doc))

    def test_local_entry_claiming_global_goal_rejected(self, kb_doc):
        find_entry(kb_doc, "MS-9")["goal_ids"].append("i")
        issues = validate_kb(kb_doc)
        assert "E_SCOPE_RULE" in codes(issues)

    def test_saliency_family_cannot_claim_goal_a(self, kb_doc):
        entry = find_entry(kb_doc, "MS-5")
        entry["scope"] = "global"
        entry["goal_ids"].append("a")
        issues = validate_kb(kb_doc)
        assert "E_GOAL_A_FAMILY" in codes(issues)
        assert "E_SCOPE_RULE" not in codes(issues)

    def test_local_attribution_family_cannot_claim_goal_e(self, kb_doc):
        find_entry(kb_doc, "MA-2")["goal_ids"].append("e")
        issues = validate_kb(kb_doc)
        assert "E_GOAL_E_FAMILY" in codes(issues)
        assert "E_SCOPE_RULE" not in codes(issues)

    def test_saliency_family_cannot_claim_goal_e_either(self, kb_doc):
        find_entry(kb_doc, "MS-5")["goal_ids"].append("e")
        assert "E_GOAL_E_FAMILY" in codes(validate_kb(kb_doc))

    def test_counterfactual_family_cannot_claim_goal_h(self, kb_doc):
        entry = find_entry(kb_doc, "MA-5")
        entry["scope"] = "global"
        entry["goal_ids"].append("h")
        issues = validate_kb(kb_doc)
        assert "E_GOAL_H_FAMILY" in codes(issues)
        assert "E_SCOPE_RULE" not in codes(issues)

    def test_unknown_goal_reference_is_dangling(self, kb_doc):
        find_entry(kb_doc, "MA-1")["goal_ids"].append("z")
        assert "E_DANGLING_REF" in codes(validate_kb(kb_doc))

    def test_unknown_regulation_reference_is_dangling(self, kb_doc):
        kb_doc["goals"][0]["regulations"].append("hipaa")
        assert "E_DANGLING_REF" in codes(validate_kb(kb_doc))

    def test_agnosticism_mismatch_rejected(self, kb_doc):
        find_entry(kb_doc, "MA-1")["model_types"] = ["dnn"]
        assert "E_AGNOSTICISM" in codes(validate_kb(kb_doc))


class TestWarnings:
    def test_no_algorithm_examples_is_a_warning_not_an_error(self, kb_doc):
        find_entry(kb_doc, "MA-1")["algorithm_examples"] = []
        issues = validate_kb(kb_doc)
        assert errors_of(issues) == []
        assert codes(issues) == ["W_NO_ALGORITHM_EXAMPLES"]
        kb, issues = load_kb_with_issues(yaml.safe_dump(kb_doc).encode())
        assert kb is not None

    def test_stage_conflicting_with_all_goal_stages_warns(self, kb_doc):
        find_entry(kb_doc, "MA-2")["stage"] = "ex_ante"  # goals d/f/g/k
        kb_doc_no_f = kb_doc
        entry = find_entry(kb_doc_no_f, "MA-2")
        entry["goal_ids"] = ["d", "g", "k"]  # all ex_post goals
        issues = validate_kb(kb_doc_no_f)
        assert errors_of(issues) == []
        assert "W_STAGE_MISMATCH" in codes(issues)

    def test_stage_compatible_via_any_goal_does_not_warn(self, kb_doc):
        # goal f has stage any, so an ex_ante entry keeping f stays silent
        find_entry(kb_doc, "MA-2")["stage"] = "ex_ante"
        assert validate_kb(kb_doc) == []


class TestIssueOrdering:
    def test_issue_order_is_deterministic_and_documentwise(self, kb_doc):
        kb_doc["version"] = "nope"
        find_entry(kb_doc, "MA-1")["goal_ids"].append("z")
        find_entry(kb_doc, "MS-1")["goal_ids"].append("j")
        first = validate_kb(copy.deepcopy(kb_doc))
        second = validate_kb(copy.deepcopy(kb_doc))
        assert first == second
        assert first[0].code == "E_VERSION"
        locations = [i.location for i in first]
        # catalog entries are visited in document order (MS-1 before MA-1)
        assert locations.index("catalog[0].goal_ids") < locations.index("catalog[14].goal_ids")

    def test_all_emitted_codes_are_documented(self, kb_doc):
        kb_doc["bonus"] = 1
        kb_doc["version"] = "x"
        find_entry(kb_doc, "MA-1")["goal_ids"] = ["c", "z"]
        for issue in validate_kb(kb_doc):
            assert issue.code in ISSUE_CODES


class TestProfiles:
    def test_fixture_profiles_load(self, rns_profile, scs_profile, gadget_profile):
        assert rns_profile.loop_type.value == "closed"
        assert scs_profile.loop_type.value == "semi_closed"
        assert gadget_profile.is_medical_device is False

    def test_empty_model_types_rejected(self):
        doc = b"""
device:
  name: x
  loop_type: open
  is_medical_device: false
  requires_third_party_conformity: false
  listed_annex_iii: false
  processes_personal_data: false
  high_stakes_effects: false
  model_types: []
  input_modalities: [tabular]
  audience: layperson
"""
        with pytest.raises(DocumentError) as exc_info:
            load_profile(doc)
        assert any(i.code == "E_EMPTY_FIELD" for i in exc_info.value.issues)

    def test_conformity_without_medical_device_rejected(self):
        doc = b"""
device:
  name: x
  loop_type: open
  is_medical_device: false
  requires_third_party_conformity: true
  listed_annex_iii: false
  processes_personal_data: false
  high_stakes_effects: false
  model_types: [dnn]
  input_modalities: [tabular]
  audience: layperson
"""
        with pytest.raises(DocumentError) as exc_info:
            load_profile(doc)
        assert any(i.code == "E_CONFORMITY_FLAG" for i in exc_info.value.issues)

    def test_unknown_device_key_rejected(self):
        issues = validate_profile({"device": {"nombre": "x"}})
        assert any(i.code == "E_SCHEMA" and "nombre" in i.location for i in issues)

    def test_wrong_top_level_key_rejected(self):
        issues = validate_profile({"gadget": {}})
        assert any(i.severity is Severity.ERROR for i in issues)

    def test_issue_locations_carry_device_prefix(self):
        issues = validate_profile({"device": {"name": "x"}})
        assert all(i.location.startswith("device") for i in issues)
