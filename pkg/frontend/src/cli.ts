#!/usr/bin/env node
// Render one figure from simulator CSV sweeps.  Flags mirror FigureSpec:
//   --input FILE ...   --x COL   --y COL   --series COL
//   --output FILE.svg  --x-log   --y-log   --title TEXT

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { renderFigure } from "./figure.js";
import { DEFAULT_X_COLUMN, DEFAULT_Y_COLUMN, type FigureSpec } from "./spec.js";

export function parseArgs(argv: string[]): FigureSpec {
  const spec: FigureSpec = {
    inputs: [],
    xColumn: DEFAULT_X_COLUMN,
    yColumn: DEFAULT_Y_COLUMN,
    output: "",
  };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      if (i + 1 >= argv.length) throw new Error(`${flag} needs a value`);
      return argv[++i];
    };
    switch (flag) {
      case "--input":
        spec.inputs.push(next());
        break;
      case "--x":
        spec.xColumn = next();
        break;
      case "--y":
        spec.yColumn = next();
        break;
      case "--series":
        spec.seriesColumn = next();
        break;
      case "--output":
        spec.output = next();
        break;
      case "--title":
        spec.title = next();
        break;
      case "--x-log":
        spec.xLog = true;
        break;
      case "--y-log":
        spec.yLog = true;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (spec.inputs.length === 0) throw new Error("at least one --input CSV is required");
  if (!spec.output) throw new Error("--output is required");
  return spec;
}

export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`usage error: ${(err as Error).message}\n`);
    return 1;
  }
  try {
    const svg = renderFigure(spec);
    mkdirSync(dirname(spec.output), { recursive: true });
    writeFileSync(spec.output, svg);
    process.stdout.write(`wrote ${spec.output}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
