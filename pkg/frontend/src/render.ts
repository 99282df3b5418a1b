/** Rendering entry point: dispatch a FigureSpec to the SVG or PNG backend. */

import * as fs from "fs";

import { buildDrawList, FigureSpec } from "./figures";
import { renderPng } from "./png";
import { renderSvg } from "./svg";

export interface RenderResult {
  outputPath: string;
  format: "svg" | "png";
  curveCount: number;
  markerCount: number;
  warnings: string[];
}

export function renderFigure(spec: FigureSpec): RenderResult {
  const draw = buildDrawList(spec);
  const lower = spec.outputPath.toLowerCase();
  let format: "svg" | "png";
  if (lower.endsWith(".svg")) {
    format = "svg";
    fs.writeFileSync(spec.outputPath, renderSvg(draw), "utf-8");
  } else if (lower.endsWith(".png")) {
    format = "png";
    fs.writeFileSync(spec.outputPath, renderPng(draw));
  } else {
    throw new Error(`output must end in .svg or .png, got ${spec.outputPath}`);
  }
  for (const warning of draw.warnings) {
    process.stderr.write(`warning: ${warning}\n`);
  }
  return {
    outputPath: spec.outputPath,
    format,
    curveCount: draw.curves.length,
    markerCount: draw.markers.reduce((acc, m) => acc + m.points.length, 0),
    warnings: draw.warnings,
  };
}
