/** SVG backend: axes frame, polylines, markers, and a legend. */

import { DrawList } from "./figures";
import { makeProjector, Projector } from "./geometry";

function fmt(v: number): string {
  return Number(v.toFixed(3)).toString();
}

function polylineElement(
  pts: Array<[number, number]>,
  proj: Projector,
  color: string,
  dash: number[] | null,
  widthPx: number,
): string {
  const coords = pts
    .map(([x, p]) => proj.toPx(x, p))
    .map(([px, py]) => `${fmt(px)},${fmt(py)}`)
    .join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash.join(",")}"` : "";
  return `<polyline fill="none" stroke="${color}" stroke-width="${widthPx}"${dashAttr} points="${coords}"/>`;
}

function markerElement(
  x: number,
  p: number,
  proj: Projector,
  color: string,
  shape: "circle" | "square" | "triangle",
): string {
  const [px, py] = proj.toPx(x, p);
  const r = 4;
  if (shape === "circle") {
    return `<circle cx="${fmt(px)}" cy="${fmt(py)}" r="${r}" fill="none" stroke="${color}" stroke-width="1.3"/>`;
  }
  if (shape === "square") {
    return `<rect x="${fmt(px - r)}" y="${fmt(py - r)}" width="${2 * r}" height="${2 * r}" fill="none" stroke="${color}" stroke-width="1.3"/>`;
  }
  const pts = [
    [px, py - r],
    [px - r, py + r],
    [px + r, py + r],
  ]
    .map(([a, b]) => `${fmt(a)},${fmt(b)}`)
    .join(" ");
  return `<polygon points="${pts}" fill="none" stroke="${color}" stroke-width="1.3"/>`;
}

export function renderSvg(draw: DrawList): string {
  const proj = makeProjector(draw.bounds);
  const { width, height, margin } = proj;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<rect x="${margin}" y="${margin}" width="${width - 2 * margin}" height="${height - 2 * margin}" fill="none" stroke="#444" stroke-width="1"/>`,
  );
  // zero axes when the origin is inside the frame
  const [ox, oy] = proj.toPx(0, 0);
  if (ox > margin && ox < width - margin) {
    parts.push(
      `<line x1="${fmt(ox)}" y1="${margin}" x2="${fmt(ox)}" y2="${height - margin}" stroke="#bbb" stroke-width="0.7"/>`,
    );
  }
  if (oy > margin && oy < height - margin) {
    parts.push(
      `<line x1="${margin}" y1="${fmt(oy)}" x2="${width - margin}" y2="${fmt(oy)}" stroke="#bbb" stroke-width="0.7"/>`,
    );
  }
  for (const curve of draw.curves) {
    if (curve.points.length >= 2) {
      parts.push(polylineElement(curve.points, proj, curve.color, curve.dash, curve.widthPx));
    }
  }
  for (const group of draw.markers) {
    for (const [x, p] of group.points) {
      parts.push(markerElement(x, p, proj, group.color, group.shape));
    }
  }
  // axes labels and title
  parts.push(
    `<text x="${width / 2}" y="${height - margin / 4}" font-family="sans-serif" font-size="15" text-anchor="middle">${draw.axesLabels[0]}</text>`,
  );
  parts.push(
    `<text x="${margin / 3}" y="${height / 2}" font-family="sans-serif" font-size="15" text-anchor="middle" transform="rotate(-90 ${margin / 3} ${height / 2})">${draw.axesLabels[1]}</text>`,
  );
  parts.push(
    `<text x="${width / 2}" y="${margin / 2}" font-family="sans-serif" font-size="16" text-anchor="middle">${draw.title}</text>`,
  );
  // legend box, top-left inside the frame
  draw.legend.forEach((entry, i) => {
    const ly = margin + 18 + i * 20;
    const dashAttr = entry.dash ? ` stroke-dasharray="${entry.dash.join(",")}"` : "";
    parts.push(
      `<line x1="${margin + 10}" y1="${ly}" x2="${margin + 44}" y2="${ly}" stroke="${entry.color}" stroke-width="2"${dashAttr}/>`,
    );
    parts.push(
      `<text x="${margin + 50}" y="${ly + 4}" font-family="sans-serif" font-size="13">${entry.label}</text>`,
    );
  });
  for (const warning of draw.warnings) {
    parts.push(`<!-- warning: ${warning} -->`);
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
