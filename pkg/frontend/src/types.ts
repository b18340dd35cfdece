// Mirrors of the service's wire formats (docs/report-schema.md in the
// engine repo). The UI never derives legal conclusions itself: every
// displayed fact is read from one of these response shapes.

export type LoopType = 'open' | 'semi_closed' | 'closed';
export type AudienceKind = 'healthcare_professional' | 'layperson' | 'patient';

export const MODEL_TYPES = [
  'dnn',
  'tree_based',
  'svm',
  'bayesian_network',
  'linear_model',
  'random_forest',
  'decision_tree',
  'other',
] as const;

export const INPUT_MODALITIES = ['tabular', 'image', 'time_series', 'text', 'other'] as const;

export const LOOP_TYPES: readonly LoopType[] = ['open', 'semi_closed', 'closed'];
export const AUDIENCES: readonly AudienceKind[] = [
  'healthcare_professional',
  'layperson',
  'patient',
];

export interface Device {
  name: string;
  loop_type: LoopType;
  is_medical_device: boolean;
  requires_third_party_conformity: boolean;
  listed_annex_iii: boolean;
  processes_personal_data: boolean;
  high_stakes_effects: boolean;
  model_types: string[];
  input_modalities: string[];
  audience: AudienceKind;
}

export type DeviceDraft = Partial<Device>;

export interface Finding {
  regulation: string;
  applies: boolean;
  justification: string;
  trigger_flags: [string, boolean | string][];
}

export interface Requirement {
  goal: string;
  description: string;
  scope: string;
  stage: string;
  required_by: string[];
  addressable: boolean;
  citations: string[];
}

export interface ManualGoal {
  goal: string;
  required_by: string[];
  action_note: string;
}

export interface EligibleEntry {
  id: string;
  question: string;
  family: string;
  scope: string;
  stage: string;
  agnosticism: string;
  model_types: string[];
  input_modalities: string[];
  goal_ids: string[];
  algorithm_examples: { name: string; citation: string }[];
  explanation_note: string;
  eligibility_reason: string;
}

export interface Recommendation {
  cap: number;
  minimum_size: number | null;
  exhaustive: boolean;
  covers: string[][];
  uncovered_goals: string[];
}

export interface GoalAssignment {
  goal: string;
  entry_ids: string[];
}

export interface AnalysisReport {
  schema: string;
  kb: { version: string; fingerprint: string };
  device: Device;
  findings: Finding[];
  requirements: Requirement[];
  manual_goals: ManualGoal[];
  eligible: EligibleEntry[];
  recommendation: Recommendation;
  per_cover_explanations: GoalAssignment[][];
  disclaimer: string;
  generated_at?: string;
}

export interface GoalChange {
  goal: string;
  regulations: string[];
  addressable: boolean;
}

export interface ReportDiff {
  schema: string;
  identical: boolean;
  findings_changed: { regulation: string; base_applies: boolean; modified_applies: boolean }[];
  goals_added: GoalChange[];
  goals_removed: GoalChange[];
  eligible_added: string[];
  eligible_removed: string[];
  base_minimum_size: number | null;
  modified_minimum_size: number | null;
  covers_added: string[][];
  covers_removed: string[][];
  uncovered_added: string[];
  uncovered_removed: string[];
}

export interface KbInfo {
  version: string;
  fingerprint: string;
  counts: { regulations: number; goals: number; methods: number };
}

export interface ApiError {
  status: number;
  code: string;
  detail: string;
  location: string | null;
}
