/** Shared plotting geometry: data ranges and the data->pixel transform. */

export interface Bounds {
  xMin: number;
  xMax: number;
  pMin: number;
  pMax: number;
}

export function boundsOf(pointLists: Array<Array<[number, number]>>): Bounds | null {
  let xMin = Infinity;
  let xMax = -Infinity;
  let pMin = Infinity;
  let pMax = -Infinity;
  for (const pts of pointLists) {
    for (const [x, p] of pts) {
      xMin = Math.min(xMin, x);
      xMax = Math.max(xMax, x);
      pMin = Math.min(pMin, p);
      pMax = Math.max(pMax, p);
    }
  }
  if (!Number.isFinite(xMin)) {
    return null;
  }
  return { xMin, xMax, pMin, pMax };
}

export function padBounds(b: Bounds, frac = 0.08): Bounds {
  const dx = (b.xMax - b.xMin) * frac || 1;
  const dp = (b.pMax - b.pMin) * frac || 1;
  return { xMin: b.xMin - dx, xMax: b.xMax + dx, pMin: b.pMin - dp, pMax: b.pMax + dp };
}

export interface Projector {
  toPx(x: number, p: number): [number, number];
  width: number;
  height: number;
  margin: number;
  bounds: Bounds;
}

export function makeProjector(
  bounds: Bounds,
  width = 720,
  height = 560,
  margin = 56,
): Projector {
  const sx = (width - 2 * margin) / (bounds.xMax - bounds.xMin);
  const sy = (height - 2 * margin) / (bounds.pMax - bounds.pMin);
  return {
    toPx(x: number, p: number): [number, number] {
      return [
        margin + (x - bounds.xMin) * sx,
        height - margin - (p - bounds.pMin) * sy,
      ];
    },
    width,
    height,
    margin,
    bounds,
  };
}
