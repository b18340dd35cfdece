// Minimal observable store; render functions subscribe and re-render.

import { AnalysisReport, ApiError, Device, DeviceDraft, ReportDiff } from './types.js';

export interface AppState {
  draft: DeviceDraft;
  step: number;
  report: AnalysisReport | null;
  pending: boolean;
  error: ApiError | null;
  pinned: { device: Device; report: AnalysisReport } | null;
  diff: ReportDiff | null;
}

export const INITIAL_STATE: AppState = {
  draft: {},
  step: 0,
  report: null,
  pending: false,
  error: null,
  pinned: null,
  diff: null,
};

export class Store {
  private state: AppState;
  private listeners: (() => void)[] = [];

  constructor(initial: AppState = INITIAL_STATE) {
    this.state = { ...initial };
  }

  get(): AppState {
    return this.state;
  }

  set(partial: Partial<AppState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener();
  }

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
