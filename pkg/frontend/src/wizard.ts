// Four-step intake wizard. Every committed change updates the draft in the
// store and asks the app to re-analyze; nothing here computes any legal
// conclusion.

import { Store } from './store.js';
import {
  AUDIENCES,
  AudienceKind,
  DeviceDraft,
  INPUT_MODALITIES,
  LOOP_TYPES,
  LoopType,
  MODEL_TYPES,
} from './types.js';

export interface WizardStep {
  id: string;
  title: string;
  render(container: HTMLElement, store: Store, commit: () => void): void;
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  const wrapper = document.createElement('label');
  wrapper.className = 'field';
  const caption = document.createElement('span');
  caption.textContent = text;
  wrapper.appendChild(caption);
  wrapper.appendChild(control);
  return wrapper;
}

function textInput(
  store: Store,
  commit: () => void,
  field: 'name',
  placeholder: string,
): HTMLElement {
  const input = document.createElement('input');
  input.type = 'text';
  input.name = field;
  input.placeholder = placeholder;
  input.value = store.get().draft[field] ?? '';
  input.addEventListener('change', () => {
    store.set({ draft: { ...store.get().draft, [field]: input.value } });
    commit();
  });
  return input;
}

function radioGroup<T extends string>(
  store: Store,
  commit: () => void,
  field: keyof DeviceDraft,
  options: readonly T[],
): HTMLElement {
  const group = document.createElement('div');
  group.className = 'radio-group';
  group.dataset.field = String(field);
  for (const option of options) {
    const label = document.createElement('label');
    const radio = document.createElement('input');
    radio.type = 'radio';
    radio.name = String(field);
    radio.value = option;
    radio.checked = store.get().draft[field] === option;
    radio.addEventListener('change', () => {
      store.set({ draft: { ...store.get().draft, [field]: option } });
      commit();
    });
    label.appendChild(radio);
    label.appendChild(document.createTextNode(option.replaceAll('_', ' ')));
    group.appendChild(label);
  }
  return group;
}

function yesNo(
  store: Store,
  commit: () => void,
  field: keyof DeviceDraft,
  question: string,
): HTMLElement {
  const group = document.createElement('div');
  group.className = 'yes-no';
  group.dataset.field = String(field);
  const caption = document.createElement('span');
  caption.textContent = question;
  group.appendChild(caption);
  for (const value of [true, false]) {
    const label = document.createElement('label');
    const radio = document.createElement('input');
    radio.type = 'radio';
    radio.name = String(field);
    radio.value = String(value);
    radio.checked = store.get().draft[field] === value;
    radio.addEventListener('change', () => {
      store.set({ draft: { ...store.get().draft, [field]: value } });
      commit();
    });
    label.appendChild(radio);
    label.appendChild(document.createTextNode(value ? 'yes' : 'no'));
    group.appendChild(label);
  }
  return group;
}

function checkboxSet(
  store: Store,
  commit: () => void,
  field: 'model_types' | 'input_modalities',
  options: readonly string[],
): HTMLElement {
  const group = document.createElement('div');
  group.className = 'checkbox-set';
  group.dataset.field = field;
  for (const option of options) {
    const label = document.createElement('label');
    const box = document.createElement('input');
    box.type = 'checkbox';
    box.name = field;
    box.value = option;
    box.checked = (store.get().draft[field] ?? []).includes(option);
    box.addEventListener('change', () => {
      const current = new Set(store.get().draft[field] ?? []);
      if (box.checked) current.add(option);
      else current.delete(option);
      store.set({ draft: { ...store.get().draft, [field]: [...current].sort() } });
      commit();
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(option.replaceAll('_', ' ')));
    group.appendChild(label);
  }
  return group;
}

export const STEPS: WizardStep[] = [
  {
    id: 'basics',
    title: 'Device basics',
    render(container, store, commit) {
      container.appendChild(
        labelled('Device name', textInput(store, commit, 'name', 'e.g. RNS implant')),
      );
      container.appendChild(
        labelled(
          'Control loop: who acts on the output?',
          radioGroup<LoopType>(store, commit, 'loop_type', LOOP_TYPES),
        ),
      );
    },
  },
  {
    id: 'triggers',
    title: 'Legal triggers',
    render(container, store, commit) {
      container.appendChild(yesNo(store, commit, 'is_medical_device', 'Is it a medical device?'));
      container.appendChild(
        yesNo(
          store,
          commit,
          'requires_third_party_conformity',
          'Does it undergo a third-party conformity assessment?',
        ),
      );
      container.appendChild(
        yesNo(store, commit, 'listed_annex_iii', 'Is it listed in AI Act Annex III?'),
      );
      container.appendChild(
        yesNo(store, commit, 'processes_personal_data', 'Does it process personal data?'),
      );
      container.appendChild(
        yesNo(
          store,
          commit,
          'high_stakes_effects',
          'Do its decisions have legal or similarly significant effects?',
        ),
      );
    },
  },
  {
    id: 'ai',
    title: 'AI characteristics',
    render(container, store, commit) {
      container.appendChild(
        labelled('Model types', checkboxSet(store, commit, 'model_types', MODEL_TYPES)),
      );
      container.appendChild(
        labelled(
          'Input modalities',
          checkboxSet(store, commit, 'input_modalities', INPUT_MODALITIES),
        ),
      );
    },
  },
  {
    id: 'audience',
    title: 'Audience',
    render(container, store, commit) {
      container.appendChild(
        labelled(
          'Who reads the explanations? (wording only, never the derivation)',
          radioGroup<AudienceKind>(store, commit, 'audience', AUDIENCES),
        ),
      );
    },
  },
];

export function renderWizard(root: HTMLElement, store: Store, commit: () => void): void {
  root.innerHTML = '';
  const nav = document.createElement('nav');
  nav.className = 'wizard-nav';
  const content = document.createElement('section');
  content.className = 'wizard-content';
  root.appendChild(nav);
  root.appendChild(content);

  const state = store.get();
  STEPS.forEach((step, index) => {
    const button = document.createElement('button');
    button.type = 'button';
    button.textContent = `${index + 1}. ${step.title}`;
    button.dataset.step = step.id;
    if (index === state.step) button.classList.add('active');
    button.addEventListener('click', () => store.set({ step: index }));
    nav.appendChild(button);
  });

  const active = STEPS[state.step];
  if (active) active.render(content, store, commit);
}
