/**
 * Explorer shell: paste a table (or load a canned dataset), calculate, then
 * steer by clicking heatmap cells; scatter, affinity, results and log panes
 * re-render from the already-loaded payload.
 */

import {
  getAffinity,
  getDataset,
  getDatasetCatalog,
  submitAnalysis,
  ApiError,
} from './api';
import { parseTable, ParseError } from './parse';
import { pollJob } from './poll';
import {
  initialState,
  selectCell,
  withAffinity,
  withLog,
  withResult,
  ViewState,
} from './state';
import {
  renderAffinity,
  renderHeatmap,
  renderLog,
  renderResultsTable,
  renderScatter,
} from './render';
import { findCell, HyperParams } from './types';

function parseSteps(text: string): number[] {
  return text.split(',').map((s) => Number(s.trim())).filter((v) => Number.isFinite(v));
}

export function mountApp(root: HTMLElement): void {
  let state: ViewState = initialState();
  let jobId: string | null = null;
  let paneAxis = 1;
  let paneParsimony = 0;
  let scatterAxis = 1;

  root.innerHTML = `
    <h1>modalfit explorer</h1>
    <div class="input-col">
      <div id="tabs"></div>
      <textarea id="table" rows="14" spellcheck="false"
        placeholder="paste a header row plus tab- or comma-separated numbers"></textarea>
      <label>scale steps <input id="scales" value="0.25, 0.5, 0.75, 1.0"></label>
      <label>precision steps <input id="precisions" value="12, 24, 48"></label>
      <label>regularisation steps <input id="parsimonies" value="0, 0.05, 0.2"></label>
      <label>seed <input id="seed" value="0" size="6"></label>
      <button id="calculate">Calculate</button>
      <div id="error" class="error" hidden></div>
      <div id="progress" hidden></div>
    </div>
    <div class="panes">
      <div id="pane-controls" hidden>
        <label>axis <select id="pane-axis"></select></label>
        <label>regularisation <select id="pane-parsimony"></select></label>
      </div>
      <div id="heatmap"></div>
      <div id="scatter"></div>
      <div id="affinity"></div>
      <div id="results"></div>
      <div id="log"></div>
    </div>
  `;

  const el = <T extends HTMLElement>(id: string) =>
    root.querySelector(`#${id}`) as T;
  const textarea = el<HTMLTextAreaElement>('table');
  const errorBox = el<HTMLDivElement>('error');
  const progress = el<HTMLDivElement>('progress');

  function log(line: string): void {
    state = withLog(state, line);
    el('log').replaceChildren(renderLog(state.log));
  }

  function showError(message: string): void {
    errorBox.textContent = message;
    errorBox.hidden = false;
  }

  async function refreshAffinity(): Promise<void> {
    if (!jobId || !state.selectedCell) return;
    try {
      state = withAffinity(state, await getAffinity(jobId, state.selectedCell));
      el('affinity').replaceChildren(renderAffinity(state.affinity!));
    } catch (err) {
      log(`affinity fetch failed: ${(err as Error).message}`);
    }
  }

  function renderPanes(): void {
    const result = state.result;
    if (!result || !state.selectedCell) return;
    const cell = findCell(result, state.selectedCell)!;
    el('pane-controls').hidden = false;

    const axisSel = el<HTMLSelectElement>('pane-axis');
    const lamSel = el<HTMLSelectElement>('pane-parsimony');
    axisSel.replaceChildren(...result.config.axes.map((a) => {
      const o = document.createElement('option');
      o.value = String(a);
      o.textContent = String(a);
      return o;
    }));
    lamSel.replaceChildren(...result.config.parsimonySteps.map((l) => {
      const o = document.createElement('option');
      o.value = String(l);
      o.textContent = String(l);
      return o;
    }));
    axisSel.value = String(paneAxis);
    lamSel.value = String(paneParsimony);

    el('heatmap').replaceChildren(
      renderHeatmap(result, paneAxis, paneParsimony, state.selectedCell, onSelect),
    );
    const rows = parseTable(state.pastedTable).rows;
    el('scatter').replaceChildren(renderScatter(cell, rows, scatterAxis));
    el('results').replaceChildren(renderResultsTable(result, cell));
    void refreshAffinity();
  }

  function onSelect(hp: HyperParams): void {
    state = selectCell(state, hp);
    log(`selected cell axis=${hp.axis} scale=${hp.scale} B=${hp.precision} lambda=${hp.parsimony}`);
    renderPanes();
  }

  el('calculate').addEventListener('click', async () => {
    errorBox.hidden = true;
    state = { ...state, pastedTable: textarea.value };
    try {
      parseTable(state.pastedTable); // fail fast before any request
    } catch (err) {
      if (err instanceof ParseError) return showError(err.message);
      throw err;
    }
    try {
      jobId = await submitAnalysis(state.pastedTable, {
        scaleSteps: parseSteps(el<HTMLInputElement>('scales').value),
        precisionSteps: parseSteps(el<HTMLInputElement>('precisions').value),
        parsimonySteps: parseSteps(el<HTMLInputElement>('parsimonies').value),
        seed: Number(el<HTMLInputElement>('seed').value) || 0,
      });
      log(`submitted job ${jobId}`);
      progress.hidden = false;
      const status = await pollJob(jobId, {
        onProgress: (s) => {
          progress.textContent = `running: ${s.cellsDone}/${s.cellsTotal} cells`;
        },
      });
      progress.hidden = true;
      state = withResult(state, status.result!);
      paneAxis = status.result!.best.axis;
      paneParsimony = status.result!.best.parsimony;
      log(`done: best cell axis=${status.result!.best.axis} scale=${status.result!.best.scale}`
        + ` B=${status.result!.best.precision} lambda=${status.result!.best.parsimony}`);
      renderPanes();
    } catch (err) {
      progress.hidden = true;
      const msg = err instanceof ApiError ? err.message : String((err as Error).message);
      showError(msg);
      log(`analysis failed: ${msg}`);
    }
  });

  el<HTMLSelectElement>('pane-axis').addEventListener('change', (ev) => {
    paneAxis = Number((ev.target as HTMLSelectElement).value);
    scatterAxis = paneAxis;
    renderPanes();
  });
  el<HTMLSelectElement>('pane-parsimony').addEventListener('change', (ev) => {
    paneParsimony = Number((ev.target as HTMLSelectElement).value);
    renderPanes();
  });

  // canned dataset tabs from the service catalog
  void (async () => {
    try {
      const catalog = await getDatasetCatalog();
      const tabs = el('tabs');
      for (const info of catalog) {
        const button = document.createElement('button');
        button.textContent = info.kind;
        button.title = info.description;
        button.addEventListener('click', async () => {
          try {
            textarea.value = await getDataset(info.kind, info.defaultSeed ?? undefined);
            errorBox.hidden = true;
          } catch (err) {
            showError(`could not load ${info.kind}: ${(err as Error).message}`);
          }
        });
        tabs.appendChild(button);
      }
    } catch (err) {
      showError(`dataset catalog unavailable: ${(err as Error).message}`);
    }
  })();
}
