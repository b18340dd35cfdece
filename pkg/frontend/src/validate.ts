// Client-side mirror of the server's profile schema, used only to decide
// when the draft is complete enough to send. The server stays authoritative;
// anything it rejects surfaces as a banner.

import {
  AUDIENCES,
  Device,
  DeviceDraft,
  INPUT_MODALITIES,
  LOOP_TYPES,
  MODEL_TYPES,
} from './types.js';

export interface ValidationProblem {
  field: string;
  message: string;
}

const BOOLEAN_FIELDS = [
  'is_medical_device',
  'requires_third_party_conformity',
  'listed_annex_iii',
  'processes_personal_data',
  'high_stakes_effects',
] as const;

export function validateDraft(draft: DeviceDraft): ValidationProblem[] {
  const problems: ValidationProblem[] = [];
  if (!draft.name || !draft.name.trim()) {
    problems.push({ field: 'name', message: 'device name is required' });
  }
  if (!draft.loop_type) {
    problems.push({ field: 'loop_type', message: 'loop type is required' });
  } else if (!LOOP_TYPES.includes(draft.loop_type)) {
    problems.push({ field: 'loop_type', message: `unknown loop type ${draft.loop_type}` });
  }
  for (const field of BOOLEAN_FIELDS) {
    if (typeof draft[field] !== 'boolean') {
      problems.push({ field, message: `${field.replaceAll('_', ' ')} must be answered` });
    }
  }
  if (draft.requires_third_party_conformity === true && draft.is_medical_device === false) {
    problems.push({
      field: 'requires_third_party_conformity',
      message: 'a third-party conformity assessment presupposes a medical device',
    });
  }
  if (!draft.model_types || draft.model_types.length === 0) {
    problems.push({ field: 'model_types', message: 'pick at least one model type' });
  } else if (draft.model_types.some((m) => !(MODEL_TYPES as readonly string[]).includes(m))) {
    problems.push({ field: 'model_types', message: 'unknown model type' });
  }
  if (!draft.input_modalities || draft.input_modalities.length === 0) {
    problems.push({ field: 'input_modalities', message: 'pick at least one input modality' });
  } else if (
    draft.input_modalities.some((m) => !(INPUT_MODALITIES as readonly string[]).includes(m))
  ) {
    problems.push({ field: 'input_modalities', message: 'unknown input modality' });
  }
  if (!draft.audience) {
    problems.push({ field: 'audience', message: 'audience is required' });
  } else if (!AUDIENCES.includes(draft.audience)) {
    problems.push({ field: 'audience', message: `unknown audience ${draft.audience}` });
  }
  return problems;
}

export function isComplete(draft: DeviceDraft): draft is Device {
  return validateDraft(draft).length === 0;
}
