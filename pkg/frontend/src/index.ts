#!/usr/bin/env node
/**
 * render_figures --fig 1|2|3 --data DIR --out FILE.(svg|png) [--labels a,b,c]
 *
 * Reads the curve and marker CSV files the formpreserve CLI wrote into DIR
 * (fig<N>.csv and fig<N>.csv.markers.csv) and renders the corresponding
 * publication-style figure.  Exits 2 on usage errors, 1 on data errors.
 */

import { specForFigure } from "./figures";
import { renderFigure } from "./render";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new UsageError(`malformed arguments near ${key}`);
    }
    out.set(key.slice(2), argv[i + 1]);
  }
  return out;
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const figRaw = args.get("fig");
    const dataDir = args.get("data");
    const outPath = args.get("out");
    if (!figRaw || !dataDir || !outPath) {
      throw new UsageError("required: --fig 1|2|3 --data DIR --out FILE.(svg|png)");
    }
    const fig = Number(figRaw);
    if (![1, 2, 3].includes(fig)) {
      throw new UsageError(`--fig must be 1, 2 or 3, got ${figRaw}`);
    }
    const labels = args.get("labels")?.split(",");
    const spec = specForFigure(fig, dataDir, outPath, labels);
    const result = renderFigure(spec);
    process.stderr.write(
      `wrote ${result.outputPath} (${result.format}, ${result.curveCount} curves, ` +
        `${result.markerCount} markers)\n`,
    );
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`usage error: ${err.message}\n`);
      return 2;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
