/**
 * Client-side table validation, duplicating the service's parse grammar so
 * obviously broken input never generates a request.  Line and column numbers
 * are 1-based and count the header, matching the service diagnostics.
 */

export class ParseError extends Error {
  constructor(message: string, public line?: number) {
    super(message);
  }
}

export interface ParsedTable {
  columnNames: string[];
  rows: number[][];
}

export function parseTable(text: string): ParsedTable {
  const lines = text.split(/\r?\n/);
  while (lines.length && lines[lines.length - 1].trim() === '') lines.pop();
  if (!lines.length || lines[0].trim() === '') {
    throw new ParseError('input is empty');
  }

  // tab wins over comma: spreadsheet paste is tab-delimited
  const delim = lines[0].includes('\t') ? '\t' : ',';
  const columnNames = lines[0].split(delim).map((c) => c.trim());
  const ncol = columnNames.length;
  if (ncol < 2) {
    throw new ParseError(
      `need at least 2 columns (one explanatory, one dependent), got ${ncol}`, 1,
    );
  }

  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineno = i + 1;
    if (lines[i].trim() === '') continue;
    const cells = lines[i].split(delim);
    if (cells.length !== ncol) {
      throw new ParseError(
        `line ${lineno}: expected ${ncol} cells, got ${cells.length}`, lineno,
      );
    }
    const row: number[] = [];
    for (let c = 0; c < ncol; c++) {
      const trimmed = cells[c].trim();
      const val = trimmed === '' ? NaN : Number(trimmed);
      if (!Number.isFinite(val)) {
        throw new ParseError(
          `line ${lineno}, column ${c + 1}: not a finite number: '${trimmed}'`, lineno,
        );
      }
      row.push(val);
    }
    rows.push(row);
  }

  if (rows.length < ncol + 1) {
    throw new ParseError(
      `need at least ${ncol + 1} data rows for ${ncol - 1} explanatory columns, got ${rows.length}`,
    );
  }
  return { columnNames, rows };
}
