// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';
import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import resultJson from './fixtures/anscombe1-result.json';
import affinityJson from './fixtures/anscombe1-affinity.json';
import { mountApp } from '../src/app';

const TSV = readFileSync(join(__dirname, 'fixtures', 'anscombe1.tsv'), 'utf8');

const CATALOG = [
  { kind: 'anscombe1', description: '11 points, linear with scatter', defaultSeed: null },
  { kind: 'simpsons', description: 'three rising groups', defaultSeed: 1 },
];

/** In-memory service double serving the canned fixtures. */
function fakeFetch(calls: string[]) {
  return vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    calls.push(`${init?.method ?? 'GET'} ${url}`);
    const json = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), {
        status, headers: { 'Content-Type': 'application/json' },
      });
    if (url === '/api/datasets') return json(CATALOG);
    if (url.startsWith('/api/datasets/anscombe1')) return new Response(TSV);
    if (url === '/api/analyze') return json({ jobId: 'job-1' }, 202);
    if (url === '/api/jobs/job-1') {
      return json({
        jobId: 'job-1', state: 'done', cellsDone: 4, cellsTotal: 4,
        submittedConfig: {}, result: resultJson,
      });
    }
    if (url.startsWith('/api/jobs/job-1/affinity')) return json(affinityJson);
    return json({ detail: `unexpected request: ${url}` }, 404);
  });
}

describe('explorer workflow', () => {
  let calls: string[];
  let root: HTMLElement;

  beforeEach(() => {
    calls = [];
    vi.stubGlobal('fetch', fakeFetch(calls));
    root = document.createElement('div');
    document.body.appendChild(root);
    mountApp(root);
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    document.body.innerHTML = '';
  });

  async function loadAndCalculate() {
    await vi.waitFor(() => {
      expect(root.querySelector('#tabs button')).not.toBeNull();
    });
    (root.querySelector('#tabs button') as HTMLButtonElement).click();
    await vi.waitFor(() => {
      expect((root.querySelector('#table') as HTMLTextAreaElement).value).toContain('\t');
    });
    (root.querySelector('#calculate') as HTMLButtonElement).click();
    await vi.waitFor(() => {
      expect(root.querySelector('#heatmap table')).not.toBeNull();
    });
  }

  it('loads a canned dataset, analyzes, and marks the best cell', async () => {
    await loadAndCalculate();
    const badges = [...root.querySelectorAll('#heatmap td')]
      .filter((c) => c.textContent === 'XXX');
    expect(badges).toHaveLength(1);
    expect((badges[0] as HTMLElement).dataset.scale).toBe(String(resultJson.best.scale));
    expect(root.querySelectorAll('#scatter circle')).toHaveLength(11);
    expect(root.querySelector('#results table')).not.toBeNull();
    await vi.waitFor(() => {
      expect(root.querySelectorAll('#affinity tr')).toHaveLength(11);
    });
    expect(root.querySelector('#log')!.textContent).toContain('done: best cell');
  });

  it('redisplays panes from the loaded payload when another cell is clicked', async () => {
    await loadAndCalculate();
    const before = calls.filter((c) => c.startsWith('POST')).length;

    const alternative = [...root.querySelectorAll('#heatmap td')]
      .find((c) => (c as HTMLElement).dataset.scale === '0.5') as HTMLElement;
    alternative.click();
    await vi.waitFor(() => {
      expect(root.querySelector('#heatmap td.selected')).not.toBeNull();
    });

    const selected = root.querySelector('#heatmap td.selected') as HTMLElement;
    expect(selected.dataset.scale).toBe('0.5');
    // the XXX badge stays on the best cell even when another is selected
    const badge = [...root.querySelectorAll('#heatmap td')]
      .find((c) => c.textContent === 'XXX') as HTMLElement;
    expect(badge.dataset.scale).toBe(String(resultJson.best.scale));

    // no recomputation: no new analyze request, only pane data fetches
    expect(calls.filter((c) => c.startsWith('POST')).length).toBe(before);
    const shownCoeff = root.querySelector('#results tbody td:nth-child(3)')!.textContent;
    const cell = resultJson.cells.find((c) => c.scale === 0.5)!;
    expect(shownCoeff).toBe(cell.fits[0].coeffs[0].toPrecision(6));
  });

  it('talks only to the documented endpoints', async () => {
    await loadAndCalculate();
    const allowed = [
      /^GET \/api\/datasets$/,
      /^GET \/api\/datasets\/[\w-]+/,
      /^POST \/api\/analyze$/,
      /^GET \/api\/jobs\/[\w-]+$/,
      /^GET \/api\/jobs\/[\w-]+\/affinity\?/,
    ];
    for (const call of calls) {
      expect(allowed.some((re) => re.test(call)), `undocumented call: ${call}`).toBe(true);
    }
  });

  it('shows an inline diagnostic for ragged input without issuing a request', async () => {
    await vi.waitFor(() => {
      expect(root.querySelector('#tabs button')).not.toBeNull();
    });
    const requestsBefore = calls.length;
    (root.querySelector('#table') as HTMLTextAreaElement).value = 'x\ty\n1\t2\n3\n4\t5\n';
    (root.querySelector('#calculate') as HTMLButtonElement).click();
    await vi.waitFor(() => {
      expect(root.querySelector('#error')!.textContent).toContain('line 3');
    });
    expect(calls.length).toBe(requestsBefore);
  });
});
