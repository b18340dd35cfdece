// Thin client for the /api/v1 endpoints. At most one analyze request is in
// flight: starting a new one aborts the previous (latest wins), so a slow
// response can never overwrite the panel for a newer draft.

import { AnalysisReport, ApiError, Device, KbInfo, ReportDiff } from './types.js';

export class ApiRequestError extends Error {
  constructor(public readonly apiError: ApiError) {
    super(apiError.detail);
    this.name = 'ApiRequestError';
  }
}

export class RequestSuperseded extends Error {
  constructor() {
    super('request superseded by a newer one');
    this.name = 'RequestSuperseded';
  }
}

async function parseErrorBody(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as ApiError;
    if (typeof body.code === 'string' && typeof body.detail === 'string') return body;
  } catch {
    // fall through to the synthetic error below
  }
  return {
    status: response.status,
    code: 'E_BAD_RESPONSE',
    detail: `service answered ${response.status}`,
    location: null,
  };
}

export class ApiClient {
  private analyzeController: AbortController | null = null;

  constructor(private readonly baseUrl: string = '') {}

  async kb(): Promise<KbInfo> {
    const response = await fetch(`${this.baseUrl}/api/v1/kb`);
    if (!response.ok) throw new ApiRequestError(await parseErrorBody(response));
    return (await response.json()) as KbInfo;
  }

  async analyze(device: Device): Promise<AnalysisReport> {
    this.analyzeController?.abort();
    const controller = new AbortController();
    this.analyzeController = controller;
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}/api/v1/analyze`, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify({ device }),
        signal: controller.signal,
      });
    } catch (error) {
      if (controller.signal.aborted) throw new RequestSuperseded();
      throw error;
    }
    if (!response.ok) throw new ApiRequestError(await parseErrorBody(response));
    return (await response.json()) as AnalysisReport;
  }

  async diff(base: Device, modified: Device): Promise<ReportDiff> {
    const response = await fetch(`${this.baseUrl}/api/v1/diff`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ base, modified }),
    });
    if (!response.ok) throw new ApiRequestError(await parseErrorBody(response));
    return (await response.json()) as ReportDiff;
  }
}
