// Test scaffolding: a fake fetch speaking the real wire formats (fixtures
// captured from the actual service) and DOM-driving helpers for the wizard.

import { vi } from 'vitest';

import type { AnalysisReport, ApiError, Device, ReportDiff } from '../src/types.js';

import rnsReportFixture from './fixtures/rns_report.json';
import scsReportFixture from './fixtures/scs_report.json';
import gadgetReportFixture from './fixtures/gadget_report.json';
import diffFixture from './fixtures/diff_rns_vs_scs.json';
import kbFixture from './fixtures/kb.json';
import rnsDeviceFixture from './fixtures/rns_device.json';
import scsDeviceFixture from './fixtures/scs_device.json';

export const rnsReport = rnsReportFixture as unknown as AnalysisReport;
export const scsReport = scsReportFixture as unknown as AnalysisReport;
export const gadgetReport = gadgetReportFixture as unknown as AnalysisReport;
export const rnsVsScsDiff = diffFixture as unknown as ReportDiff;
export const kbInfo = kbFixture;
export const rnsDevice = rnsDeviceFixture as unknown as Device;
export const scsDevice = scsDeviceFixture as unknown as Device;

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface FakeService {
  calls: RecordedCall[];
  /** override the analyze response for the next calls */
  analyzeResponder: (device: Device) => { status: number; body: unknown };
  diffResponder: (base: Device, modified: Device) => { status: number; body: unknown };
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

/** Default analyze behaviour keyed on the recorded scenarios: non-medical
 * devices get the all-negative report, closed loops the RNS report, and
 * everything else the SCS report. */
export function defaultAnalyzeResponder(device: Device): { status: number; body: unknown } {
  if (!device.is_medical_device) return { status: 200, body: gadgetReport };
  return {
    status: 200,
    body: device.loop_type === 'closed' ? rnsReport : scsReport,
  };
}

export function installFakeService(): FakeService {
  const service: FakeService = {
    calls: [],
    analyzeResponder: defaultAnalyzeResponder,
    diffResponder: () => ({ status: 200, body: rnsVsScsDiff }),
  };
  const fake = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    const method = init?.method ?? 'GET';
    const signal = init?.signal ?? null;
    if (signal?.aborted) throw new DOMException('aborted', 'AbortError');
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    service.calls.push({ url, method, body });
    if (url.endsWith('/api/v1/kb')) return jsonResponse(200, kbInfo);
    if (url.endsWith('/api/v1/analyze')) {
      const { status, body: payload } = service.analyzeResponder(body.device as Device);
      return jsonResponse(status, payload);
    }
    if (url.endsWith('/api/v1/diff')) {
      const { status, body: payload } = service.diffResponder(
        body.base as Device,
        body.modified as Device,
      );
      return jsonResponse(status, payload);
    }
    return jsonResponse(404, {
      status: 404,
      code: 'E_BAD_REQUEST',
      detail: `no such endpoint ${url}`,
      location: null,
    } satisfies ApiError);
  };
  vi.stubGlobal('fetch', fake);
  return service;
}

// --- DOM driving -----------------------------------------------------------

export function setText(root: HTMLElement, name: string, value: string): void {
  const input = root.querySelector<HTMLInputElement>(`input[name="${name}"]`);
  if (!input) throw new Error(`no text input ${name}`);
  input.value = value;
  input.dispatchEvent(new Event('change', { bubbles: true }));
}

export function pickRadio(root: HTMLElement, name: string, value: string): void {
  const radio = root.querySelector<HTMLInputElement>(`input[name="${name}"][value="${value}"]`);
  if (!radio) throw new Error(`no radio ${name}=${value}`);
  radio.click();
}

export function toggleCheckbox(root: HTMLElement, name: string, value: string): void {
  const box = root.querySelector<HTMLInputElement>(`input[name="${name}"][value="${value}"]`);
  if (!box) throw new Error(`no checkbox ${name}=${value}`);
  box.click();
}

export function goToStep(root: HTMLElement, stepId: string): void {
  const button = root.querySelector<HTMLButtonElement>(`button[data-step="${stepId}"]`);
  if (!button) throw new Error(`no step ${stepId}`);
  button.click();
}

/** Drive the wizard through the closed-loop neurostimulator fixture. */
export function fillRnsThroughWizard(root: HTMLElement): void {
  setText(root, 'name', 'Responsive neurostimulation system');
  pickRadio(root, 'loop_type', 'closed');
  goToStep(root, 'triggers');
  pickRadio(root, 'is_medical_device', 'true');
  pickRadio(root, 'requires_third_party_conformity', 'true');
  pickRadio(root, 'listed_annex_iii', 'false');
  pickRadio(root, 'processes_personal_data', 'true');
  pickRadio(root, 'high_stakes_effects', 'true');
  goToStep(root, 'ai');
  toggleCheckbox(root, 'model_types', 'dnn');
  toggleCheckbox(root, 'input_modalities', 'time_series');
  goToStep(root, 'audience');
  pickRadio(root, 'audience', 'healthcare_professional');
}
