/** render --csv <path> --fig <id> --out <dir> */

import { EmptyInputError, SchemaError } from "./csv.js";
import { FIGURES } from "./figures.js";
import { renderFigure } from "./render.js";

const USAGE = "usage: render --csv <path> --fig <id> --out <dir>";

export function main(argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    if (!flag.startsWith("--") || i + 1 >= argv.length) {
      console.error(USAGE);
      return 2;
    }
    args.set(flag.slice(2), argv[i + 1]);
  }
  const csv = args.get("csv");
  const fig = args.get("fig");
  const out = args.get("out");
  if (!csv || !fig || !out || args.size !== 3) {
    console.error(USAGE);
    return 2;
  }
  if (!(fig in FIGURES)) {
    console.error(`unknown figure id: ${fig} (expected ${Object.keys(FIGURES).join(", ")})`);
    return 2;
  }
  try {
    const result = renderFigure(csv, fig, out);
    console.log(JSON.stringify(result));
    return 0;
  } catch (error) {
    if (error instanceof SchemaError) {
      console.error(`schema error: ${(error as Error).message}`);
      return 1;
    }
    if (error instanceof EmptyInputError) {
      console.error(`empty input: ${(error as Error).message}`);
      return 1;
    }
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}
