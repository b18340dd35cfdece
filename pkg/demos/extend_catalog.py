#!/usr/bin/env python3
"""Extend the method catalog with a new entry and re-validate.

The knowledge base is data: integrating a new XAI method means adding a
catalog record with the question it answers and the goals it can help
meet, then letting the consistency checker vet it.  This demo adds a
(hypothetical) gradient-based saliency entry for image models, shows the
validator accepting it, and then shows how the checker rejects a rule
violation (a local-scope method claiming a global-scope goal).
"""

import copy
from importlib import resources

import yaml

from xca import Severity, validate_kb
from xca.loader import kb_from_document

base_doc = yaml.safe_load(
    resources.files("xca").joinpath("data/default_kb.yaml").read_bytes()
)

new_entry = {
    "id": "MS-10",
    "question": "Which image regions does the model rely on across many inputs?",
    "family": "saliency_map",
    "scope": "local",
    "stage": "ex_post",
    "agnosticism": "model_specific",
    "model_types": ["dnn"],
    "input_modalities": ["image"],
    "goal_ids": ["d", "f", "g", "k"],
    "algorithm_examples": [{"name": "Grad-CAM", "citation": "Selvaraju et al., 2017"}],
    "explanation_note": "Highlight image regions driving decisions for review and anomaly detection.",
}

doc = copy.deepcopy(base_doc)
doc["catalog"].append(new_entry)
issues = validate_kb(doc)
print(f"valid extension: {len(issues)} issue(s)")
kb = kb_from_document(doc)
print(f"catalog now has {len(kb.catalog)} entries; new id: {kb.entry('MS-10').id}")

# now break the scope rule: a local saliency entry claiming the global goal I
bad = copy.deepcopy(base_doc)
bad_entry = copy.deepcopy(new_entry)
bad_entry["goal_ids"] = ["d", "f", "g", "k", "i"]
bad["catalog"].append(bad_entry)
print("\nscope-rule violation is caught:")
for issue in validate_kb(bad):
    if issue.severity is Severity.ERROR:
        print(f"  {issue}")
