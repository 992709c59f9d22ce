import { describe, expect, it } from 'vitest';
import { BASE_INTERVAL_MS, MAX_INTERVAL_MS, pollJob } from '../src/poll';
import type { JobStatus } from '../src/types';

function status(state: JobStatus['state'], done = 0, total = 4): JobStatus {
  return { jobId: 'j', state, cellsDone: done, cellsTotal: total };
}

describe('pollJob', () => {
  it('polls at the base interval until done', async () => {
    const states = [status('queued'), status('running', 2), status('done', 4)];
    const sleeps: number[] = [];
    const final = await pollJob('j', {
      fetchStatus: async () => states.shift()!,
      sleep: async (ms) => { sleeps.push(ms); },
    });
    expect(final.state).toBe('done');
    expect(sleeps).toEqual([BASE_INTERVAL_MS, BASE_INTERVAL_MS]);
  });

  it('reports progress for non-terminal states', async () => {
    const states = [status('running', 1), status('running', 3), status('done', 4)];
    const seen: number[] = [];
    await pollJob('j', {
      fetchStatus: async () => states.shift()!,
      sleep: async () => {},
      onProgress: (s) => seen.push(s.cellsDone),
    });
    expect(seen).toEqual([1, 3]);
  });

  it('backs off exponentially on transient failures, capped', async () => {
    let calls = 0;
    const sleeps: number[] = [];
    await pollJob('j', {
      fetchStatus: async () => {
        calls += 1;
        if (calls <= 5) throw new Error('connection refused');
        return status('done');
      },
      sleep: async (ms) => { sleeps.push(ms); },
    });
    expect(sleeps).toEqual([1000, 2000, 4000, 8000, 8000]);
    expect(Math.max(...sleeps)).toBeLessThanOrEqual(MAX_INTERVAL_MS);
  });

  it('gives up after repeated failures', async () => {
    await expect(
      pollJob('j', {
        fetchStatus: async () => { throw new Error('down'); },
        sleep: async () => {},
      }),
    ).rejects.toThrow('down');
  });

  it('rejects when the job fails, carrying the service message', async () => {
    await expect(
      pollJob('j', {
        fetchStatus: async () => ({ ...status('failed'), error: 'line 3: expected 2 cells' }),
        sleep: async () => {},
      }),
    ).rejects.toThrow('line 3');
  });
});
