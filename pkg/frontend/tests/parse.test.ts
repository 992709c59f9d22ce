import { describe, expect, it } from 'vitest';
import { parseTable, ParseError } from '../src/parse';

const GOOD = 'x\ty\n0\t0.1\n0.5\t0.4\n1\t0.9\n';

describe('parseTable', () => {
  it('parses a tab-delimited table', () => {
    const t = parseTable(GOOD);
    expect(t.columnNames).toEqual(['x', 'y']);
    expect(t.rows).toEqual([[0, 0.1], [0.5, 0.4], [1, 0.9]]);
  });

  it('parses comma-delimited input', () => {
    const t = parseTable('a,b\n1,2\n3,4\n5,6\n');
    expect(t.rows).toHaveLength(3);
  });

  it('prefers tab when both delimiters appear in the header', () => {
    const t = parseTable('a,raw\tb\n1\t2\n3\t4\n5\t6\n');
    expect(t.columnNames).toEqual(['a,raw', 'b']);
    expect(t.rows[0]).toEqual([1, 2]);
  });

  it('skips blank lines', () => {
    expect(parseTable('x\ty\n0\t1\n\n1\t2\n2\t3\n').rows).toHaveLength(3);
  });

  it('rejects empty input', () => {
    expect(() => parseTable('   \n')).toThrow(ParseError);
  });

  it('reports ragged rows with a 1-based line number', () => {
    try {
      parseTable('x\ty\n1\t2\n3\n4\t5\n');
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ParseError);
      expect((err as ParseError).line).toBe(3);
      expect((err as Error).message).toContain('line 3');
    }
  });

  it('reports non-numeric cells with line and column', () => {
    expect(() => parseTable('x\ty\n1\t2\n3\toops\n4\t5\n'))
      .toThrow(/line 3, column 2/);
  });

  it('rejects non-finite numbers', () => {
    expect(() => parseTable('x\ty\n1\t2\n3\tInfinity\n4\t5\n')).toThrow(ParseError);
  });

  it('requires at least two columns', () => {
    expect(() => parseTable('only\n1\n2\n3\n')).toThrow(/at least 2 columns/);
  });

  it('requires k+2 data rows', () => {
    expect(() => parseTable('x\ty\n1\t2\n3\t4\n')).toThrow(/at least 3 data rows/);
  });
});
