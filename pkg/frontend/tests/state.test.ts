import { describe, expect, it } from 'vitest';
import result from './fixtures/anscombe1-result.json';
import {
  initialState,
  selectCell,
  withLog,
  withResult,
} from '../src/state';
import type { AnalysisResult } from '../src/types';

const RESULT = result as unknown as AnalysisResult;

describe('view state transitions', () => {
  it('snaps selection to the reported best cell when a result loads', () => {
    const s = withResult(initialState(), RESULT);
    expect(s.selectedCell).toEqual(RESULT.best);
    expect(s.activeJob).toBeNull();
  });

  it('moves selection only to cells that exist', () => {
    const loaded = withResult(initialState(), RESULT);
    const other = RESULT.cells.find(
      (c) => c.scale !== RESULT.best.scale || c.precision !== RESULT.best.precision,
    )!;
    const hp = {
      axis: other.axis, scale: other.scale,
      precision: other.precision, parsimony: other.parsimony,
    };
    const moved = selectCell(loaded, hp);
    expect(moved.selectedCell).toEqual(hp);

    const bogus = selectCell(loaded, { axis: 9, scale: 0.1, precision: 7, parsimony: 1 });
    expect(bogus.selectedCell).toEqual(RESULT.best); // unchanged
  });

  it('ignores selection before any result is loaded', () => {
    const s = selectCell(initialState(), RESULT.best);
    expect(s.selectedCell).toBeNull();
  });

  it('appends log lines without mutating the previous state', () => {
    const a = initialState();
    const b = withLog(a, 'hello');
    expect(a.log).toEqual([]);
    expect(b.log).toEqual(['hello']);
  });

  it('drops the stale affinity payload when the selection changes', () => {
    let s = withResult(initialState(), RESULT);
    s = { ...s, affinity: { matrix: [[0]], displayOrder: [0] } };
    const other = RESULT.cells.find((c) => c.scale !== RESULT.best.scale)!;
    expect(selectCell(s, other).affinity).toBeNull();
  });
});
