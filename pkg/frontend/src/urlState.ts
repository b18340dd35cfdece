// Deep-linkable drafts: the whole form state round-trips through the URL
// fragment, so reloading (or sharing the link) reproduces the same panel.

import { DeviceDraft } from './types.js';

const PARAM = 'draft';

const KNOWN_KEYS: (keyof DeviceDraft)[] = [
  'name',
  'loop_type',
  'is_medical_device',
  'requires_third_party_conformity',
  'listed_annex_iii',
  'processes_personal_data',
  'high_stakes_effects',
  'model_types',
  'input_modalities',
  'audience',
];

export function encodeDraft(draft: DeviceDraft): string {
  const present: Record<string, unknown> = {};
  for (const key of KNOWN_KEYS) {
    if (draft[key] !== undefined) present[key] = draft[key];
  }
  if (Object.keys(present).length === 0) return '';
  return `${PARAM}=${encodeURIComponent(JSON.stringify(present))}`;
}

export function decodeDraft(fragment: string): DeviceDraft {
  const raw = fragment.replace(/^#/, '');
  const chunk = raw.split('&').find((part) => part.startsWith(`${PARAM}=`));
  if (!chunk) return {};
  try {
    const decoded = JSON.parse(decodeURIComponent(chunk.slice(PARAM.length + 1)));
    if (typeof decoded !== 'object' || decoded === null || Array.isArray(decoded)) return {};
    const draft: Record<string, unknown> = {};
    for (const key of KNOWN_KEYS) {
      if (key in decoded) draft[key] = (decoded as Record<string, unknown>)[key];
    }
    return draft as DeviceDraft;
  } catch {
    return {};
  }
}
