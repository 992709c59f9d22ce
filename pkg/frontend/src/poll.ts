/**
 * Poll a job to a terminal state.  Base interval 500 ms; transient fetch
 * failures back off exponentially (capped) instead of hammering the service.
 */

import { getJob } from './api';
import type { JobStatus } from './types';

export const BASE_INTERVAL_MS = 500;
export const MAX_INTERVAL_MS = 8000;

export interface PollOptions {
  onProgress?: (status: JobStatus) => void;
  /** injectable for tests */
  fetchStatus?: (jobId: string) => Promise<JobStatus>;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export async function pollJob(
  jobId: string,
  opts: PollOptions = {},
): Promise<JobStatus> {
  const fetchStatus = opts.fetchStatus ?? getJob;
  const sleep = opts.sleep ?? defaultSleep;
  let interval = BASE_INTERVAL_MS;
  let failures = 0;

  for (;;) {
    let status: JobStatus;
    try {
      status = await fetchStatus(jobId);
      failures = 0;
      interval = BASE_INTERVAL_MS;
    } catch (err) {
      failures += 1;
      if (failures > 5) throw err;
      interval = Math.min(interval * 2, MAX_INTERVAL_MS);
      await sleep(interval);
      continue;
    }
    if (status.state === 'done') return status;
    if (status.state === 'failed') {
      throw new Error(status.error ?? 'analysis failed');
    }
    opts.onProgress?.(status);
    await sleep(interval);
  }
}
