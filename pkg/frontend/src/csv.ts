import { readFileSync } from "node:fs";
import Papa from "papaparse";

export type Row = Record<string, string>;

export interface Table {
  columns: string[];
  rows: Row[];
}

/** Parse one CSV file into header + string-valued rows. */
export function readCsv(path: string): Table {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Row>(text, { header: true, skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${path}: CSV parse error on row ${first.row}: ${first.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  if (parsed.data.length === 0) {
    throw new Error(`${path}: no data rows`);
  }
  return { columns, rows: parsed.data };
}

/** Concatenate several CSVs; every file must carry all referenced columns. */
export function readTables(paths: string[], referenced: string[]): Table {
  if (paths.length === 0) throw new Error("no input CSVs given");
  const rows: Row[] = [];
  let columns: string[] = [];
  for (const path of paths) {
    const table = readCsv(path);
    for (const column of referenced) {
      if (!table.columns.includes(column)) {
        throw new Error(
          `${path}: column "${column}" not found; available: ${table.columns.join(", ")}`,
        );
      }
    }
    if (columns.length === 0) columns = table.columns;
    rows.push(...table.rows);
  }
  return { columns, rows };
}
