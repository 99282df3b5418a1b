/**
 * Figure specifications: which files feed each figure, slice styling, and
 * the assembled draw list handed to the SVG/PNG backends.
 *
 * All physics lives upstream; this module only arranges polylines and
 * tracked markers that the data files already contain.
 */

import * as path from "path";

import { groupCurves, readCurves } from "./csv";
import { Bounds, boundsOf, padBounds } from "./geometry";

export interface FigureSpec {
  inputPaths: string[];
  timeLabels: string[];
  axesLabels: [string, string];
  outputPath: string;
  title: string;
}

export interface StyledCurve {
  points: Array<[number, number]>;
  color: string;
  dash: number[] | null;
  widthPx: number;
  isGuide: boolean;
  slice: number;
}

export interface StyledMarkers {
  points: Array<[number, number]>;
  color: string;
  shape: "circle" | "square" | "triangle";
  slice: number;
}

export interface DrawList {
  curves: StyledCurve[];
  markers: StyledMarkers[];
  bounds: Bounds;
  legend: Array<{ label: string; color: string; dash: number[] | null }>;
  axesLabels: [string, string];
  title: string;
  warnings: string[];
}

const SLICE_COLORS = ["#c62828", "#1565c0", "#2e7d32", "#6a1b9a", "#ef6c00"];
const SLICE_DASHES: Array<number[] | null> = [null, [8, 5], [7, 3, 2, 3], [3, 3], [10, 3]];
const SLICE_SHAPES: Array<"circle" | "square" | "triangle"> = [
  "circle",
  "square",
  "triangle",
  "circle",
  "square",
];

export const FIGURE_DEFAULTS: Record<number, { file: string; labels: [string, string]; title: string }> = {
  1: { file: "fig1.csv", labels: ["x", "p"], title: "Rigidly accelerating parabolas" },
  2: { file: "fig2.csv", labels: ["x̃", "p̃"], title: "Circles riding a circle" },
  3: { file: "fig3.csv", labels: ["x̃", "p̃"], title: "Dispersing ellipses" },
};

export function specForFigure(fig: number, dataDir: string, outPath: string, labels?: string[]): FigureSpec {
  const defaults = FIGURE_DEFAULTS[fig];
  if (!defaults) {
    throw new Error(`unknown figure number ${fig}; expected 1, 2 or 3`);
  }
  const curveFile = path.join(dataDir, defaults.file);
  return {
    inputPaths: [curveFile, curveFile + ".markers.csv"],
    timeLabels: labels ?? [],
    axesLabels: defaults.labels,
    outputPath: outPath,
    title: defaults.title,
  };
}

export function buildDrawList(spec: FigureSpec): DrawList {
  const warnings: string[] = [];
  const curvePoints = readCurves(spec.inputPaths[0]);
  let markerPoints: ReturnType<typeof readCurves> = [];
  if (spec.inputPaths.length > 1) {
    try {
      markerPoints = readCurves(spec.inputPaths[1]);
    } catch {
      warnings.push(`marker file ${spec.inputPaths[1]} missing or invalid; markers skipped`);
    }
  }
  if (curvePoints.length === 0) {
    warnings.push("curve file has no vertices; rendering empty axes");
  }
  const grouped = groupCurves(curvePoints);
  const slices = Array.from(
    new Set(
      Array.from(grouped.curves.keys())
        .filter((id) => id >= 0)
        .map((id) => grouped.sliceOf(id)),
    ),
  ).sort((a, b) => a - b);

  const curves: StyledCurve[] = [];
  for (const [id, pts] of Array.from(grouped.curves.entries()).sort((a, b) => a[0] - b[0])) {
    if (id < 0) {
      curves.push({
        points: pts,
        color: "#9e9e9e",
        dash: [3, 5],
        widthPx: 1.2,
        isGuide: true,
        slice: -1,
      });
      continue;
    }
    const sliceIndex = slices.indexOf(grouped.sliceOf(id));
    curves.push({
      points: pts,
      color: SLICE_COLORS[sliceIndex % SLICE_COLORS.length],
      dash: SLICE_DASHES[sliceIndex % SLICE_DASHES.length],
      widthPx: 1.8,
      isGuide: false,
      slice: sliceIndex,
    });
  }

  const markerGroups = groupCurves(markerPoints);
  const markers: StyledMarkers[] = [];
  for (const [id, pts] of Array.from(markerGroups.curves.entries()).sort((a, b) => a[0] - b[0])) {
    const sliceIndex = slices.indexOf(markerGroups.sliceOf(id));
    markers.push({
      points: pts,
      color: SLICE_COLORS[sliceIndex % SLICE_COLORS.length],
      shape: SLICE_SHAPES[sliceIndex % SLICE_SHAPES.length],
      slice: sliceIndex,
    });
  }

  const allPoints = [
    ...curves.map((c) => c.points),
    ...markers.map((m) => m.points),
  ];
  const rawBounds = boundsOf(allPoints) ?? { xMin: -1, xMax: 1, pMin: -1, pMax: 1 };
  const legend = slices.map((s, i) => ({
    label: spec.timeLabels[i] ?? `slice ${s}`,
    color: SLICE_COLORS[i % SLICE_COLORS.length],
    dash: SLICE_DASHES[i % SLICE_DASHES.length],
  }));
  return {
    curves,
    markers,
    bounds: padBounds(rawBounds),
    legend,
    axesLabels: spec.axesLabels,
    title: spec.title,
    warnings,
  };
}
