#!/usr/bin/env python3
"""Walk through the analysis pipeline one stage at a time.

The CLI runs all of this in one shot (`xca analyze`); here each stage is
called directly so you can see what flows between them.
"""

from pathlib import Path

from xca import (
    analyze,
    applicable_set,
    assess,
    build_matrix,
    derive_goals,
    eligible_entries,
    load_default_kb,
    load_profile,
    minimal_covers,
    partition,
    render,
    ReportFormat,
)

HERE = Path(__file__).resolve().parent.parent

kb = load_default_kb()
profile = load_profile(HERE / "profiles" / "rns.profile")
print(f"Device: {profile.name} ({profile.loop_type.value} loop)\n")

# 1. which regulations' explanation duties apply?
findings = assess(profile, kb)
for finding in findings:
    status = "applies" if finding.applies else "does not apply"
    print(f"  {finding.regulation.value.upper():5s} {status}: {finding.justification}")

# 2. which legal explanatory goals do they impose?
requirements = derive_goals(applicable_set(findings), kb)
addressable, manual = partition(requirements)
print(f"\nRequired goals: {''.join(sorted(r.goal.label for r in requirements))}")
print(f"XAI-addressable: {''.join(sorted(g.label for g in addressable))}")
print(f"Manual only:     {''.join(sorted(g.label for g in manual))}")

# 3. which catalog entries fit this device's models and inputs?
eligible = eligible_entries(profile, kb)
print(f"\nEligible entries ({len(eligible)} of {len(kb.catalog)}):")
for e in eligible[:5]:
    print(f"  {e.entry.id}: {e.eligibility_reason}")
print("  ...")

# 4. smallest sets of entries covering every addressable goal
matrix = build_matrix(eligible, addressable)
recommendation = minimal_covers(matrix)
print(f"\nMinimum cover size: {recommendation.minimum_size}")
for cover in recommendation.covers:
    questions = [kb.entry(i).question for i in cover]
    print(f"  {', '.join(cover)} -> {questions[0]}")

# 5. or just build the whole report at once
report = analyze(profile, kb, deterministic=True)
print("\n--- rendered document (first 15 lines) ---")
print("\n".join(render(report, ReportFormat.DOCUMENT).decode().splitlines()[:15]))
