/** Cell heatmap: purple = missing, grey scale = recorded value.
 *
 * Columns follow the shared variable order and visible subset. Up to
 * MAX_ROWS items render one cell per datum; larger datasets aggregate
 * consecutive rows (column-preserving) and say so in a notice.
 */

import { Items, ItemColumn } from "../api.js";
import { COLOURS, clear, htmlElement, svgElement } from "../svg.js";
import { greyRamp } from "../scales.js";

export class Heatmap {
  static readonly MAX_ROWS = 250;
  static readonly CELL = 4;

  constructor(private readonly container: HTMLElement) {}

  render(items: Items, order: string[]): void {
    clear(this.container);
    const byName = new Map(items.columns.map((c) => [c.name, c]));
    const columns = order.filter((n) => byName.has(n)).map((n) => byName.get(n)!);
    if (columns.length === 0) return;

    const n = items.item_count;
    const stride = Math.max(1, Math.ceil(n / Heatmap.MAX_ROWS));
    const rows = Math.ceil(n / stride);

    if (stride > 1) {
      this.container.appendChild(htmlElement(
        "div",
        { class: "heatmap-notice", role: "note" },
        `showing ${rows} aggregated row groups of ${stride} items each`,
      ));
    }

    const svg = svgElement("svg", {
      width: columns.length * Heatmap.CELL,
      height: rows * Heatmap.CELL,
      class: "heatmap",
      "data-row-stride": stride,
    });

    const ranges = columns.map((c) => numericRange(c));
    columns.forEach((column, colIndex) => {
      const group = svgElement("g", { "data-variable": column.name });
      for (let row = 0; row < rows; row += 1) {
        const begin = row * stride;
        const end = Math.min(n, begin + stride);
        const fill = cellColour(column, begin, end, ranges[colIndex]);
        group.appendChild(svgElement("rect", {
          x: colIndex * Heatmap.CELL,
          y: row * Heatmap.CELL,
          width: Heatmap.CELL,
          height: Heatmap.CELL,
          fill,
        }));
      }
      svg.appendChild(group);
    });
    this.container.appendChild(svg);
  }
}

function numericRange(column: ItemColumn): [number, number] {
  if (column.kind !== "numerical") return [0, 1];
  let lo = Infinity;
  let hi = -Infinity;
  for (const value of column.values) {
    if (typeof value === "number") {
      if (value < lo) lo = value;
      if (value > hi) hi = value;
    }
  }
  return lo <= hi ? [lo, hi] : [0, 1];
}

function cellColour(column: ItemColumn, begin: number, end: number, range: [number, number]): string {
  let missing = 0;
  let sum = 0;
  let recorded = 0;
  for (let i = begin; i < end; i += 1) {
    if (column.missing[i]) {
      missing += 1;
    } else {
      recorded += 1;
      const value = column.values[i];
      if (typeof value === "number") {
        const span = range[1] - range[0];
        sum += span === 0 ? 0.5 : (value - range[0]) / span;
      } else {
        sum += 0.5; // categorical values carry no grey ordering
      }
    }
  }
  const total = end - begin;
  if (missing === total) return COLOURS.missing;
  const grey = greyRamp(recorded > 0 ? sum / recorded : 0);
  if (missing === 0) return grey;
  // aggregated group with partial missingness: lean purple by fraction
  return missing / total >= 0.5 ? COLOURS.missing : grey;
}
