/**
 * CSV loading and schema validation for the formpreserve data files.
 *
 * Three schemas exist: wave samples (x,t,re,im,abs2), phase-space fields
 * (x,p,w), and polylines (curve_id,vertex_id,x,p).  Validation reports name
 * the offending column or line so a broken pipeline fails loudly.
 */

import * as fs from "fs";

export type SchemaName = "wave" | "wigner" | "curves";

export const SCHEMAS: Record<SchemaName, string[]> = {
  wave: ["x", "t", "re", "im", "abs2"],
  wigner: ["x", "p", "w"],
  curves: ["curve_id", "vertex_id", "x", "p"],
};

export interface SchemaReport {
  ok: boolean;
  schema: SchemaName | null;
  rows: number;
  errors: string[];
}

export interface CurvePoint {
  curveId: number;
  vertexId: number;
  x: number;
  p: number;
}

function splitLine(line: string): string[] {
  return line.split(",");
}

export function validateCsvText(text: string): SchemaReport {
  const errors: string[] = [];
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    return { ok: false, schema: null, rows: 0, errors: ["file is empty"] };
  }
  const header = splitLine(lines[0].trim());
  let schema: SchemaName | null = null;
  for (const [name, columns] of Object.entries(SCHEMAS) as [SchemaName, string[]][]) {
    if (columns.length === header.length && columns.every((c, i) => c === header[i])) {
      schema = name;
      break;
    }
  }
  if (schema === null) {
    // identify the missing column of the closest schema for the error text
    let best: SchemaName = "curves";
    let bestHits = -1;
    for (const [name, columns] of Object.entries(SCHEMAS) as [SchemaName, string[]][]) {
      const hits = columns.filter((c) => header.includes(c)).length;
      if (hits > bestHits) {
        bestHits = hits;
        best = name;
      }
    }
    const missing = SCHEMAS[best].filter((c) => !header.includes(c));
    if (missing.length > 0) {
      errors.push(`header does not match any schema: missing column(s) ${missing.join(", ")}`);
    } else {
      errors.push(`header does not match any schema: got ${header.join(",")}`);
    }
    return { ok: false, schema: null, rows: 0, errors };
  }
  const width = SCHEMAS[schema].length;
  for (let i = 1; i < lines.length; i++) {
    const raw = lines[i];
    if (raw.trim() === "") {
      continue;
    }
    const cells = splitLine(raw);
    if (cells.length !== width) {
      const reason = cells.length === width + 1 && cells[cells.length - 1] === ""
        ? "trailing comma"
        : `expected ${width} columns, found ${cells.length}`;
      errors.push(`line ${i + 1}: ${reason}`);
      continue;
    }
    for (let j = 0; j < width; j++) {
      if (cells[j] === "" || Number.isNaN(Number(cells[j]))) {
        errors.push(`line ${i + 1}: column ${SCHEMAS[schema][j]} is not numeric (${cells[j]})`);
        break;
      }
    }
  }
  return { ok: errors.length === 0, schema, rows: lines.length - 1, errors };
}

export function validateCsv(path: string): SchemaReport {
  return validateCsvText(fs.readFileSync(path, "utf-8"));
}

export function readCurves(path: string): CurvePoint[] {
  const report = validateCsv(path);
  if (report.schema !== "curves" || !report.ok) {
    throw new Error(`invalid curves file ${path}: ${report.errors.join("; ") || "wrong schema"}`);
  }
  const text = fs.readFileSync(path, "utf-8");
  const rows = text.split("\n").slice(1).filter((l) => l.trim() !== "");
  return rows.map((line) => {
    const [cid, vid, x, p] = line.split(",").map(Number);
    return { curveId: cid, vertexId: vid, x, p };
  });
}

export interface CurveSet {
  /** polylines grouped by curve id, vertex order preserved */
  curves: Map<number, Array<[number, number]>>;
  /** time-slice index of each curve id: floor(id/100); negative ids are overlays */
  sliceOf(id: number): number;
}

export function groupCurves(points: CurvePoint[]): CurveSet {
  const curves = new Map<number, Array<[number, number]>>();
  for (const pt of points) {
    if (!curves.has(pt.curveId)) {
      curves.set(pt.curveId, []);
    }
    curves.get(pt.curveId)!.push([pt.x, pt.p]);
  }
  return {
    curves,
    sliceOf: (id: number) => (id < 0 ? -1 : Math.floor(id / 100)),
  };
}
