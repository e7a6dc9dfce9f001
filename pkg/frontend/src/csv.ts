/** Strict parser for the sweep CSVs: a header row, comma-separated, unquoted. */

export class SchemaError extends Error {}
export class EmptyInputError extends Error {}

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new EmptyInputError("csv has no header row");
  }
  const columns = lines[0].split(",");
  const rows: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${columns.length} fields, found ${cells.length}`,
      );
    }
    rows.push(cells);
  }
  return { columns, rows };
}

export function requireColumns(table: Table, names: string[]): Map<string, number> {
  const index = new Map<string, number>();
  for (const name of names) {
    const at = table.columns.indexOf(name);
    if (at < 0) {
      throw new SchemaError(`missing column: ${name}`);
    }
    index.set(name, at);
  }
  return index;
}

export function numericColumn(table: Table, index: number): number[] {
  return table.rows.map((row) => Number(row[index]));
}

/** Distinct values of a column in order of first appearance. */
export function distinctInOrder(table: Table, index: number): string[] {
  const seen = new Set<string>();
  const values: string[] = [];
  for (const row of table.rows) {
    const value = row[index];
    if (!seen.has(value)) {
      seen.add(value);
      values.push(value);
    }
  }
  return values;
}
