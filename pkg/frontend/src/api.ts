/** Thin fetch client for the documented service endpoints — nothing else. */

import type {
  AffinityPayload,
  AnalysisResult,
  DatasetInfo,
  HyperParams,
  JobStatus,
} from './types';

export interface AnalyzeConfig {
  scaleSteps?: number[];
  precisionSteps?: number[];
  parsimonySteps?: number[];
  axes?: number[];
  subsetSize?: number;
  budget?: number;
  seed?: number;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function toJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      detail = (await resp.json()).detail ?? detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json() as Promise<T>;
}

export async function submitAnalysis(
  table: string,
  config: AnalyzeConfig,
): Promise<string> {
  const resp = await fetch('/api/analyze', {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ table, ...config }),
  });
  const body = await toJson<{ jobId: string }>(resp);
  return body.jobId;
}

export async function getJob(jobId: string): Promise<JobStatus> {
  return toJson(await fetch(`/api/jobs/${jobId}`));
}

export async function getAffinity(
  jobId: string,
  hp: HyperParams,
): Promise<AffinityPayload> {
  const query = new URLSearchParams({
    axis: String(hp.axis),
    scale: String(hp.scale),
    precision: String(hp.precision),
    parsimony: String(hp.parsimony),
  });
  return toJson(await fetch(`/api/jobs/${jobId}/affinity?${query}`));
}

export async function getDatasetCatalog(): Promise<DatasetInfo[]> {
  return toJson(await fetch('/api/datasets'));
}

export async function getDataset(kind: string, seed?: number): Promise<string> {
  const query = seed === undefined ? '' : `?seed=${seed}`;
  const resp = await fetch(`/api/datasets/${kind}${query}`);
  if (!resp.ok) throw new ApiError(resp.status, resp.statusText);
  return resp.text();
}

export type { AnalysisResult, JobStatus };
