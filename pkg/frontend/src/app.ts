// App assembly: wires wizard, result panel, and compare view to the store,
// debounces analysis requests, and mirrors the draft into the URL fragment.

import { ApiClient, ApiRequestError, RequestSuperseded } from './api.js';
import { renderCompare } from './compare.js';
import { renderResultPanel } from './resultPanel.js';
import { AppState, INITIAL_STATE, Store } from './store.js';
import { decodeDraft, encodeDraft } from './urlState.js';
import { isComplete, validateDraft } from './validate.js';
import { renderWizard } from './wizard.js';

export interface AppOptions {
  api: ApiClient;
  debounceMs?: number;
  window?: Window;
}

export interface App {
  store: Store;
  /** resolves after the in-flight (or just-scheduled) analysis settles */
  settle(): Promise<void>;
}

export function createApp(root: HTMLElement, options: AppOptions): App {
  const api = options.api;
  const debounceMs = options.debounceMs ?? 250;
  const win = options.window ?? window;

  const initial: AppState = { ...INITIAL_STATE, draft: decodeDraft(win.location.hash) };
  const store = new Store(initial);

  root.innerHTML = '';
  const layout = document.createElement('div');
  layout.className = 'layout';
  const wizardRoot = document.createElement('div');
  wizardRoot.className = 'wizard';
  const panelRoot = document.createElement('div');
  panelRoot.className = 'result-panel';
  const compareRoot = document.createElement('div');
  compareRoot.className = 'compare';
  layout.appendChild(wizardRoot);
  const right = document.createElement('div');
  right.className = 'right-pane';
  right.appendChild(panelRoot);
  right.appendChild(compareRoot);
  layout.appendChild(right);
  root.appendChild(layout);

  let timer: ReturnType<typeof setTimeout> | null = null;
  let inflight: Promise<void> = Promise.resolve();

  function runAnalysis(): void {
    const draft = store.get().draft;
    if (!isComplete(draft)) {
      store.set({ report: null, pending: false, error: null, diff: null });
      return;
    }
    store.set({ pending: true });
    inflight = api
      .analyze(draft)
      .then((report) => {
        store.set({ report, pending: false, error: null });
      })
      .catch((error: unknown) => {
        if (error instanceof RequestSuperseded) return; // a newer request owns the panel
        if (error instanceof ApiRequestError) {
          store.set({ pending: false, error: error.apiError });
        } else {
          store.set({
            pending: false,
            error: {
              status: 0,
              code: 'E_UNREACHABLE',
              detail: `service unreachable: ${String(error)}`,
              location: null,
            },
          });
        }
      });
  }

  function commit(): void {
    const hash = encodeDraft(store.get().draft);
    win.history.replaceState(null, '', hash ? `#${hash}` : '#');
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      runAnalysis();
    }, debounceMs);
  }

  function pin(): void {
    const { report, draft } = store.get();
    if (report && isComplete(draft)) {
      store.set({ pinned: { device: { ...draft }, report }, diff: null });
    }
  }

  function compare(): void {
    const { pinned, draft } = store.get();
    if (!pinned || !isComplete(draft)) return;
    api
      .diff(pinned.device, draft)
      .then((diff) => store.set({ diff, error: null }))
      .catch((error: unknown) => {
        if (error instanceof ApiRequestError) {
          store.set({ error: error.apiError }); // pinned state stays put
        } else {
          store.set({
            error: {
              status: 0,
              code: 'E_UNREACHABLE',
              detail: `service unreachable: ${String(error)}`,
              location: null,
            },
          });
        }
      });
  }

  function clearPin(): void {
    store.set({ pinned: null, diff: null });
  }

  function renderAll(): void {
    renderWizard(wizardRoot, store, commit);
    renderResultPanel(panelRoot, store.get(), validateDraft(store.get().draft));
    renderCompare(compareRoot, store.get(), { pin, compare, clearPin });
  }

  store.subscribe(renderAll);
  renderAll();
  if (isComplete(store.get().draft)) commit(); // deep link: reproduce the panel

  async function settle(): Promise<void> {
    // quiesce: no debounce timer pending, and the request that was in
    // flight when we looked is the one that finished
    for (;;) {
      if (timer !== null) {
        await new Promise((resolve) => setTimeout(resolve, debounceMs + 1));
        continue;
      }
      const current = inflight;
      await current.catch(() => {});
      if (timer === null && inflight === current) return;
    }
  }

  return { store, settle };
}
