/** View state and its pure transitions; rendering reads, never mutates. */

import type { AffinityPayload, AnalysisResult, HyperParams } from './types';
import { findCell } from './types';

export interface ViewState {
  pastedTable: string;
  scaleSteps: number[];
  precisionSteps: number[];
  parsimonySteps: number[];
  seed: number;
  activeJob: { id: string; cellsDone: number; cellsTotal: number } | null;
  result: AnalysisResult | null;
  selectedCell: HyperParams | null;
  affinity: AffinityPayload | null;
  log: string[];
}

export function initialState(): ViewState {
  return {
    pastedTable: '',
    scaleSteps: [0.25, 0.5, 0.75, 1.0],
    precisionSteps: [12, 24, 48],
    parsimonySteps: [0.0, 0.05, 0.2],
    seed: 0,
    activeJob: null,
    result: null,
    selectedCell: null,
    affinity: null,
    log: [],
  };
}

export function withLog(state: ViewState, line: string): ViewState {
  return { ...state, log: [...state.log, line] };
}

/** A finished analysis arrives; selection snaps to the service-reported best. */
export function withResult(state: ViewState, result: AnalysisResult): ViewState {
  return {
    ...state,
    result,
    selectedCell: result.best,
    affinity: null,
    activeJob: null,
  };
}

/** Selection may only move to a cell that exists in the loaded result. */
export function selectCell(state: ViewState, hp: HyperParams): ViewState {
  if (!state.result || !findCell(state.result, hp)) return state;
  return { ...state, selectedCell: hp, affinity: null };
}

export function withAffinity(state: ViewState, payload: AffinityPayload): ViewState {
  return { ...state, affinity: payload };
}
