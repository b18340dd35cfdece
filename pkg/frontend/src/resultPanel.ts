// Live result panel. Renders only fields of the last server response:
// applicability cards, per-regulation goal cards, the manual-action
// checklist, and the recommended method sets.

import { AppState } from './store.js';
import { AnalysisReport } from './types.js';
import { ValidationProblem } from './validate.js';

function section(title: string, cls: string): HTMLElement {
  const wrapper = document.createElement('section');
  wrapper.className = cls;
  const heading = document.createElement('h3');
  heading.textContent = title;
  wrapper.appendChild(heading);
  return wrapper;
}

function renderFindings(report: AnalysisReport): HTMLElement {
  const wrapper = section('Applicability', 'findings');
  for (const finding of report.findings) {
    const card = document.createElement('article');
    card.className = `finding-card ${finding.applies ? 'applies' : 'not-applicable'}`;
    card.dataset.finding = finding.regulation;
    const name = document.createElement('strong');
    name.textContent = `${finding.regulation.toUpperCase()}: ${
      finding.applies ? 'applies' : 'not applicable'
    }`;
    const why = document.createElement('p');
    why.textContent = finding.justification;
    card.appendChild(name);
    card.appendChild(why);
    wrapper.appendChild(card);
  }
  return wrapper;
}

function renderGoalCards(report: AnalysisReport): HTMLElement {
  const wrapper = section('Required goals by regulation', 'goal-cards');
  const applicable = report.findings.filter((f) => f.applies).map((f) => f.regulation);
  if (report.requirements.length === 0) {
    const empty = document.createElement('p');
    empty.textContent = 'No explanation requirements identified for this profile.';
    wrapper.appendChild(empty);
    return wrapper;
  }
  for (const regulation of applicable) {
    const demanded = report.requirements.filter((r) => r.required_by.includes(regulation));
    if (demanded.length === 0) continue;
    const card = document.createElement('article');
    card.className = 'goal-card';
    card.dataset.goalCard = regulation;
    const heading = document.createElement('strong');
    heading.textContent = `${regulation.toUpperCase()} goals`;
    card.appendChild(heading);
    const list = document.createElement('ul');
    for (const requirement of demanded) {
      const item = document.createElement('li');
      item.dataset.goal = requirement.goal;
      item.className = requirement.addressable ? 'goal addressable' : 'goal manual';
      const badge = requirement.addressable ? 'XAI' : 'manual';
      item.textContent = `${requirement.goal.toUpperCase()} (${badge}): ${requirement.description}`;
      item.title = requirement.citations.join('; ');
      list.appendChild(item);
    }
    card.appendChild(list);
    wrapper.appendChild(card);
  }
  return wrapper;
}

function renderManualChecklist(report: AnalysisReport): HTMLElement {
  const wrapper = section('Manual action items', 'manual-checklist');
  if (report.manual_goals.length === 0) {
    const none = document.createElement('p');
    none.textContent = 'None: every required goal can be supported by XAI methods.';
    wrapper.appendChild(none);
    return wrapper;
  }
  const list = document.createElement('ul');
  for (const manual of report.manual_goals) {
    const item = document.createElement('li');
    item.className = 'manual-item';
    item.dataset.manualGoal = manual.goal;
    const box = document.createElement('input');
    box.type = 'checkbox';
    box.disabled = false;
    const text = document.createElement('span');
    text.textContent = `Goal ${manual.goal.toUpperCase()} (required by ${manual.required_by
      .map((r) => r.toUpperCase())
      .join(', ')}): ${manual.action_note}`;
    item.appendChild(box);
    item.appendChild(text);
    list.appendChild(item);
  }
  wrapper.appendChild(list);
  return wrapper;
}

function renderCovers(report: AnalysisReport): HTMLElement {
  const wrapper = section('Recommended method sets', 'covers');
  const { covers, minimum_size, exhaustive, uncovered_goals } = report.recommendation;
  if (report.requirements.length === 0) {
    const none = document.createElement('p');
    none.textContent = 'Nothing to cover.';
    wrapper.appendChild(none);
    return wrapper;
  }
  if (covers.length === 0) {
    const none = document.createElement('p');
    none.textContent = 'No eligible method reaches any required goal.';
    wrapper.appendChild(none);
  } else {
    const summary = document.createElement('p');
    summary.textContent = `Minimum set size: ${minimum_size}${
      exhaustive ? ' (all minimum-size sets shown)' : ' (list capped)'
    }`;
    wrapper.appendChild(summary);
    const questionById = new Map(report.eligible.map((e) => [e.id, e.question]));
    const list = document.createElement('ol');
    covers.forEach((cover, index) => {
      const item = document.createElement('li');
      item.className = 'cover';
      item.dataset.cover = String(index);
      for (const entryId of cover) {
        const chip = document.createElement('span');
        chip.className = 'cover-entry';
        chip.dataset.coverEntry = entryId;
        chip.textContent = `${entryId}: ${questionById.get(entryId) ?? ''}`;
        item.appendChild(chip);
      }
      const assignments = report.per_cover_explanations[index];
      if (assignments && assignments.length > 0) {
        const detail = document.createElement('p');
        detail.className = 'cover-goals';
        detail.textContent = assignments
          .map((a) => `${a.goal.toUpperCase()} ← ${a.entry_ids.join('/')}`)
          .join(', ');
        item.appendChild(detail);
      }
      list.appendChild(item);
    });
    wrapper.appendChild(list);
  }
  if (uncovered_goals.length > 0) {
    const warning = document.createElement('p');
    warning.className = 'uncovered';
    warning.textContent = `Goals no eligible method reaches: ${uncovered_goals
      .map((g) => g.toUpperCase())
      .join(', ')}`;
    wrapper.appendChild(warning);
  }
  return wrapper;
}

export function renderResultPanel(
  root: HTMLElement,
  state: AppState,
  problems: ValidationProblem[],
): void {
  root.innerHTML = '';

  if (state.error) {
    const banner = document.createElement('div');
    banner.className = 'banner error';
    banner.dataset.banner = 'error';
    banner.textContent = `${state.error.code}: ${state.error.detail}${
      state.error.location ? ` (${state.error.location})` : ''
    }`;
    root.appendChild(banner);
  }

  if (problems.length > 0) {
    const todo = document.createElement('div');
    todo.className = 'incomplete';
    todo.dataset.incomplete = 'true';
    const heading = document.createElement('p');
    heading.textContent = 'Complete required fields to run the analysis:';
    todo.appendChild(heading);
    const list = document.createElement('ul');
    for (const problem of problems) {
      const item = document.createElement('li');
      item.textContent = `${problem.field}: ${problem.message}`;
      list.appendChild(item);
    }
    todo.appendChild(list);
    root.appendChild(todo);
    return;
  }

  if (state.pending && !state.report) {
    const pending = document.createElement('p');
    pending.textContent = 'Analyzing…';
    root.appendChild(pending);
    return;
  }
  if (!state.report) return;

  const report = state.report;
  root.appendChild(renderFindings(report));
  root.appendChild(renderGoalCards(report));
  root.appendChild(renderManualChecklist(report));
  root.appendChild(renderCovers(report));

  const disclaimer = document.createElement('footer');
  disclaimer.className = 'disclaimer';
  disclaimer.textContent = report.disclaimer;
  root.appendChild(disclaimer);
}
