// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';
import resultJson from './fixtures/anscombe1-result.json';
import affinityJson from './fixtures/anscombe1-affinity.json';
import {
  renderAffinity,
  renderHeatmap,
  renderLog,
  renderResultsTable,
  renderScatter,
} from '../src/render';
import { parseTable } from '../src/parse';
import { findCell, AnalysisResult, AffinityPayload } from '../src/types';
import { readFileSync } from 'node:fs';
import { join } from 'node:path';

const RESULT = resultJson as unknown as AnalysisResult;
const AFFINITY = affinityJson as AffinityPayload;
const TABLE = parseTable(
  readFileSync(join(__dirname, 'fixtures', 'anscombe1.tsv'), 'utf8'),
);

describe('heatmap pane', () => {
  it('marks exactly the best cell with XXX', () => {
    const pane = renderHeatmap(RESULT, RESULT.best.axis, RESULT.best.parsimony, null);
    const badges = [...pane.querySelectorAll('td')].filter((c) => c.textContent === 'XXX');
    expect(badges).toHaveLength(1);
    expect(badges[0].dataset.scale).toBe(String(RESULT.best.scale));
    expect(badges[0].dataset.precision).toBe(String(RESULT.best.precision));
  });

  it('shows every quality straight from the payload', () => {
    const pane = renderHeatmap(RESULT, 1, 0, null);
    const source = RESULT.heatmaps.find((p) => p.axis === 1 && p.parsimony === 0)!;
    const cells = [...pane.querySelectorAll('tbody td')].filter((c) => c.dataset.scale);
    const shown = cells.map((c) => c.title);
    const expected = source.values.flat().map((v) =>
      v === 'inf' ? 'inf' : v.toPrecision(4),
    );
    expect(shown).toEqual(expected);
  });

  it('fires the selection callback with the clicked cell', () => {
    let picked: unknown = null;
    const pane = renderHeatmap(RESULT, 1, 0, null, (hp) => { picked = hp; });
    const target = [...pane.querySelectorAll('tbody td')]
      .find((c) => c.dataset.scale === '0.5' && c.dataset.precision === '24')!;
    target.dispatchEvent(new MouseEvent('click'));
    expect(picked).toEqual({ axis: 1, scale: 0.5, precision: 24, parsimony: 0 });
  });

  it('matches the rendered snapshot', () => {
    const pane = renderHeatmap(RESULT, RESULT.best.axis, RESULT.best.parsimony, RESULT.best);
    expect(pane.outerHTML).toMatchSnapshot();
  });
});

describe('scatter pane', () => {
  it('draws one colored point per row and a line per defined fit', () => {
    const cell = findCell(RESULT, RESULT.best)!;
    const svg = renderScatter(cell, TABLE.rows, 1);
    expect(svg.querySelectorAll('circle')).toHaveLength(TABLE.rows.length);
    const lines = svg.querySelectorAll('line[data-cluster]');
    expect(lines).toHaveLength(cell.fits.filter((f) => f.slopesDefined).length);
  });

  it('matches the rendered snapshot', () => {
    const cell = findCell(RESULT, RESULT.best)!;
    expect(renderScatter(cell, TABLE.rows, 1).outerHTML).toMatchSnapshot();
  });
});

describe('affinity pane', () => {
  it('lays rows and columns out in displayOrder', () => {
    const grid = renderAffinity(AFFINITY);
    const firstRow = [...grid.rows[0].cells].map((c) => Number(c.dataset.count));
    const i = AFFINITY.displayOrder[0];
    expect(firstRow).toEqual(AFFINITY.displayOrder.map((j) => AFFINITY.matrix[i][j]));
    expect(grid.rows).toHaveLength(AFFINITY.displayOrder.length);
  });

  it('matches the rendered snapshot', () => {
    expect(renderAffinity(AFFINITY).outerHTML).toMatchSnapshot();
  });
});

describe('results table', () => {
  it('shows the payload coefficients verbatim', () => {
    const cell = findCell(RESULT, RESULT.best)!;
    const table = renderResultsTable(RESULT, cell);
    const firstFit = table.tBodies[0].rows[0];
    expect(firstFit.cells[2].textContent).toBe(cell.fits[0].coeffs[0].toPrecision(6));
    expect(firstFit.cells[3].textContent).toBe(cell.fits[0].intercept.toPrecision(6));
  });

  it('matches the rendered snapshot', () => {
    const cell = findCell(RESULT, RESULT.best)!;
    expect(renderResultsTable(RESULT, cell).outerHTML).toMatchSnapshot();
  });
});

describe('log pane', () => {
  it('joins lines in order', () => {
    expect(renderLog(['a', 'b']).textContent).toBe('a\nb');
  });
});
