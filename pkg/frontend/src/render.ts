/**
 * Pure pane renderers.  Every number shown is copied from the result payload
 * (or derived by evaluating the delivered coefficients for drawing); nothing
 * is refitted on the client.
 */

import type {
  AffinityPayload,
  AnalysisResult,
  Cell,
  HyperParams,
} from './types';
import { sameCell } from './types';

const CLUSTER_COLORS = [
  '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
  '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf',
];

export function clusterColor(label: number): string {
  return CLUSTER_COLORS[label % CLUSTER_COLORS.length];
}

function formatQ(q: number | 'inf'): string {
  return q === 'inf' ? 'inf' : q.toPrecision(4);
}

/**
 * One scale x precision pane of the quality heatmap for (axis, parsimony).
 * The best cell carries the "XXX" badge; clicking a cell fires onSelect.
 */
export function renderHeatmap(
  result: AnalysisResult,
  axis: number,
  parsimony: number,
  selected: HyperParams | null,
  onSelect?: (hp: HyperParams) => void,
): HTMLTableElement {
  const pane = result.heatmaps.find(
    (p) => p.axis === axis && p.parsimony === parsimony,
  );
  if (!pane) throw new Error(`no heatmap pane for axis ${axis}, parsimony ${parsimony}`);

  const table = document.createElement('table');
  table.className = 'heatmap';
  const head = table.createTHead().insertRow();
  head.insertCell().textContent = 'scale \\ precision';
  for (const b of result.config.precisionSteps) {
    head.insertCell().textContent = String(b);
  }
  const body = table.createTBody();
  result.config.scaleSteps.forEach((scale, i) => {
    const row = body.insertRow();
    row.insertCell().textContent = String(scale);
    result.config.precisionSteps.forEach((precision, j) => {
      const hp: HyperParams = { axis, scale, precision, parsimony };
      const cell = row.insertCell();
      cell.dataset.scale = String(scale);
      cell.dataset.precision = String(precision);
      const isBest = sameCell(hp, result.best);
      cell.textContent = isBest ? 'XXX' : formatQ(pane.values[i][j]);
      cell.title = formatQ(pane.values[i][j]);
      if (isBest) cell.classList.add('best');
      if (selected && sameCell(hp, selected)) cell.classList.add('selected');
      if (onSelect) cell.addEventListener('click', () => onSelect(hp));
    });
  });
  return table;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS('http://www.w3.org/2000/svg', tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

const PLOT = { w: 360, h: 280, pad: 24 };

function scaler(values: number[]): (v: number) => number {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  return (v) => (v - lo) / span;
}

function predict(fit: { coeffs: number[]; intercept: number }, x: number[]): number {
  return fit.intercept + fit.coeffs.reduce((acc, c, i) => acc + c * x[i], 0);
}

/**
 * Scatter pane.  For one explanatory column: points colored by cluster with
 * the fitted lines overlaid.  For more: residuals against the chosen axis.
 */
export function renderScatter(
  cell: Cell,
  rows: number[][],
  axis: number,
): SVGSVGElement {
  const svg = svgEl('svg', {
    viewBox: `0 0 ${PLOT.w} ${PLOT.h}`,
    width: PLOT.w,
    height: PLOT.h,
    class: 'scatter',
  });
  const k = rows[0].length - 1;
  const xs = rows.map((r) => r[axis - 1]);
  const sx = scaler(xs);
  const px = (v: number) => PLOT.pad + sx(v) * (PLOT.w - 2 * PLOT.pad);

  let ys: number[];
  if (k === 1) {
    ys = rows.map((r) => r[r.length - 1]);
  } else {
    ys = rows.map((r, i) =>
      r[r.length - 1] - predict(cell.fits[cell.labels[i]], r.slice(0, -1)),
    );
  }
  const sy = scaler(ys);
  const py = (v: number) => PLOT.h - PLOT.pad - sy(v) * (PLOT.h - 2 * PLOT.pad);

  if (k === 1) {
    cell.fits.forEach((fit, label) => {
      if (!fit.slopesDefined) return;
      const lo = Math.min(...xs);
      const hi = Math.max(...xs);
      svg.appendChild(svgEl('line', {
        x1: px(lo), y1: py(predict(fit, [lo])),
        x2: px(hi), y2: py(predict(fit, [hi])),
        stroke: clusterColor(label), 'stroke-width': 1.5,
        'data-cluster': label,
      }));
    });
  } else {
    // zero-residual guide
    svg.appendChild(svgEl('line', {
      x1: px(Math.min(...xs)), y1: py(0),
      x2: px(Math.max(...xs)), y2: py(0),
      stroke: '#999', 'stroke-dasharray': '4 3',
    }));
  }

  rows.forEach((_, i) => {
    svg.appendChild(svgEl('circle', {
      cx: px(xs[i]), cy: py(ys[i]), r: 3,
      fill: clusterColor(cell.labels[i]),
      'data-point': i, 'data-cluster': cell.labels[i],
    }));
  });
  return svg;
}

/** Affinity counts as a shaded grid, rows and columns in displayOrder. */
export function renderAffinity(payload: AffinityPayload): HTMLTableElement {
  const table = document.createElement('table');
  table.className = 'affinity';
  const order = payload.displayOrder;
  const peak = Math.max(1, ...payload.matrix.flat());
  const body = table.createTBody();
  for (const i of order) {
    const row = body.insertRow();
    for (const j of order) {
      const count = payload.matrix[i][j];
      const cell = row.insertCell();
      cell.dataset.count = String(count);
      const shade = Math.round(255 * (1 - count / peak));
      cell.style.backgroundColor = `rgb(${shade}, ${shade}, 255)`;
      cell.title = `(${i}, ${j}): ${count}`;
    }
  }
  return table;
}

export function renderResultsTable(
  result: AnalysisResult,
  cell: Cell,
): HTMLTableElement {
  const names = result.config.columnNames;
  const table = document.createElement('table');
  table.className = 'results';
  const head = table.createTHead().insertRow();
  for (const h of ['cluster', 'members', ...names.slice(0, -1).map((n) => `d/d${n}`),
                   'intercept', 'slopes defined']) {
    head.insertCell().textContent = h;
  }
  const body = table.createTBody();
  cell.fits.forEach((fit, label) => {
    const row = body.insertRow();
    row.insertCell().textContent = String(label);
    row.insertCell().textContent = String(fit.members);
    for (const c of fit.coeffs) row.insertCell().textContent = c.toPrecision(6);
    row.insertCell().textContent = fit.intercept.toPrecision(6);
    row.insertCell().textContent = fit.slopesDefined ? 'yes' : 'no';
  });
  const foot = table.createTFoot().insertRow();
  foot.insertCell().textContent =
    `Q = ${formatQ(cell.quality)} over ${cell.clusters} cluster(s)`;
  return table;
}

export function renderLog(lines: string[]): HTMLElement {
  const pre = document.createElement('pre');
  pre.className = 'log';
  pre.textContent = lines.join('\n');
  return pre;
}
