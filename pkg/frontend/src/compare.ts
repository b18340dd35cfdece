// Scenario comparison: pin the current report, keep editing, and diff the
// pinned device against the current one through the /diff endpoint.

import { AppState } from './store.js';
import { ReportDiff } from './types.js';

export function renderCompare(
  root: HTMLElement,
  state: AppState,
  actions: { pin: () => void; compare: () => void; clearPin: () => void },
): void {
  root.innerHTML = '';
  const controls = document.createElement('div');
  controls.className = 'compare-controls';

  const pinButton = document.createElement('button');
  pinButton.type = 'button';
  pinButton.dataset.action = 'pin';
  pinButton.textContent = 'Pin current scenario';
  pinButton.disabled = state.report === null;
  pinButton.addEventListener('click', actions.pin);
  controls.appendChild(pinButton);

  if (state.pinned) {
    const compareButton = document.createElement('button');
    compareButton.type = 'button';
    compareButton.dataset.action = 'compare';
    compareButton.textContent = `Compare with pinned "${state.pinned.device.name}"`;
    compareButton.disabled = state.report === null;
    compareButton.addEventListener('click', actions.compare);
    controls.appendChild(compareButton);

    const clearButton = document.createElement('button');
    clearButton.type = 'button';
    clearButton.dataset.action = 'clear-pin';
    clearButton.textContent = 'Unpin';
    clearButton.addEventListener('click', actions.clearPin);
    controls.appendChild(clearButton);
  }
  root.appendChild(controls);

  if (state.diff) root.appendChild(renderDiff(state.diff));
}

function renderDiff(diff: ReportDiff): HTMLElement {
  const panel = document.createElement('section');
  panel.className = 'diff-panel';
  panel.dataset.compare = 'true';
  const heading = document.createElement('h3');
  heading.textContent = 'Pinned vs. current';
  panel.appendChild(heading);

  if (diff.identical) {
    const none = document.createElement('p');
    none.dataset.diffEmpty = 'true';
    none.textContent = 'No differences.';
    panel.appendChild(none);
    return panel;
  }

  for (const change of diff.findings_changed) {
    const line = document.createElement('p');
    line.className = 'diff-finding';
    line.dataset.diffFinding = change.regulation;
    line.textContent = `${change.regulation.toUpperCase()}: ${
      change.base_applies ? 'applies' : 'not applicable'
    } → ${change.modified_applies ? 'applies' : 'not applicable'}`;
    panel.appendChild(line);
  }

  const describe = (kind: 'added' | 'removed', changes: ReportDiff['goals_added']) => {
    if (changes.length === 0) return;
    const list = document.createElement('ul');
    list.className = `diff-goals-${kind}`;
    for (const change of changes) {
      const item = document.createElement('li');
      item.dataset[kind === 'added' ? 'goalAdded' : 'goalRemoved'] = change.goal;
      item.textContent = `${change.goal.toUpperCase()} ${kind} under ${change.regulations
        .map((r) => r.toUpperCase())
        .join(', ')} (${change.addressable ? 'XAI-addressable' : 'manual'})`;
      list.appendChild(item);
    }
    const caption = document.createElement('p');
    caption.textContent = kind === 'added' ? 'Goal duties added:' : 'Goal duties removed:';
    panel.appendChild(caption);
    panel.appendChild(list);
  };
  describe('added', diff.goals_added);
  describe('removed', diff.goals_removed);

  if (diff.eligible_added.length || diff.eligible_removed.length) {
    const line = document.createElement('p');
    line.className = 'diff-eligible';
    const parts = [];
    if (diff.eligible_added.length) parts.push(`methods gained: ${diff.eligible_added.join(', ')}`);
    if (diff.eligible_removed.length)
      parts.push(`methods lost: ${diff.eligible_removed.join(', ')}`);
    line.textContent = parts.join('; ');
    panel.appendChild(line);
  }

  const sizes = document.createElement('p');
  sizes.className = 'diff-sizes';
  sizes.textContent = `Minimum set size: ${diff.base_minimum_size} → ${diff.modified_minimum_size}`;
  panel.appendChild(sizes);
  return panel;
}
