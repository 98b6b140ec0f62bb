/** Parallel coordinates with below-axis missing values.
 *
 * Every polyline visits each visible axis; a missing value routes the line
 * to a fixed point below that axis. Lines are grey when fully recorded,
 * purple when the item misses at least one visible variable, red when a
 * selection is active and the item is missing in the selected variable.
 */

import { Items, ItemColumn } from "../api.js";
import { COLOURS, clear, svgElement } from "../svg.js";
import { linearScale } from "../scales.js";

export class ParallelCoordinates {
  static readonly HEIGHT = 180;
  static readonly BELOW = 22;
  static readonly SPACING = 64;
  static readonly MAX_LINES = 600;

  constructor(private readonly container: HTMLElement) {}

  render(items: Items, order: string[], selected: string | null): void {
    clear(this.container);
    const byName = new Map(items.columns.map((c) => [c.name, c]));
    const axes = order.filter((n) => byName.has(n)).map((n) => byName.get(n)!);
    if (axes.length === 0) return;

    const width = (axes.length - 1) * ParallelCoordinates.SPACING + 40;
    const svg = svgElement("svg", {
      width: Math.max(width, 80),
      height: ParallelCoordinates.HEIGHT + ParallelCoordinates.BELOW + 24,
      class: "parallel-coordinates",
    });

    const positions = axes.map((c) => valuePositions(c));
    const axisX = (index: number) => 20 + index * ParallelCoordinates.SPACING;
    const belowY = ParallelCoordinates.HEIGHT + ParallelCoordinates.BELOW;

    const selectedColumn = selected ? byName.get(selected) ?? null : null;
    const lines = svgElement("g", { class: "pc-lines" });
    const stride = Math.max(1, Math.ceil(items.item_count / ParallelCoordinates.MAX_LINES));
    for (let i = 0; i < items.item_count; i += stride) {
      const points = axes.map((column, a) => {
        const y = column.missing[i] ? belowY : positions[a](i);
        return `${axisX(a)},${y}`;
      });
      const anyMissing = axes.some((column) => column.missing[i]);
      const inSelection = selectedColumn !== null && selectedColumn.missing[i];
      const colour = inSelection
        ? COLOURS.selection
        : anyMissing
          ? COLOURS.missing
          : COLOURS.recorded;
      lines.appendChild(svgElement("polyline", {
        points: points.join(" "),
        fill: "none",
        stroke: colour,
        "stroke-opacity": inSelection ? 0.85 : 0.4,
        "data-item": i,
        class: inSelection ? "pc-line selected-missing" : "pc-line",
      }));
    }
    svg.appendChild(lines);

    axes.forEach((column, a) => {
      const x = axisX(a);
      const axis = svgElement("g", { class: "pc-axis", "data-variable": column.name });
      axis.appendChild(svgElement("line", {
        x1: x, y1: 0, x2: x, y2: ParallelCoordinates.HEIGHT,
        stroke: "#444",
      }));
      // tick marking the below-axis missing position
      axis.appendChild(svgElement("line", {
        x1: x - 3, y1: belowY, x2: x + 3, y2: belowY,
        stroke: COLOURS.missing,
      }));
      const label = svgElement("text", {
        x, y: ParallelCoordinates.HEIGHT + ParallelCoordinates.BELOW + 16,
        "text-anchor": "middle",
        class: column.name === selected ? "pc-label selected" : "pc-label",
        fill: column.name === selected ? COLOURS.selection : "#222",
      });
      label.textContent = column.name;
      axis.appendChild(label);
      svg.appendChild(axis);
    });

    this.container.appendChild(svg);
  }
}

/** Per-item vertical position of a column's values (recorded ones). */
function valuePositions(column: ItemColumn): (item: number) => number {
  if (column.kind === "numerical") {
    let lo = Infinity;
    let hi = -Infinity;
    for (const value of column.values) {
      if (typeof value === "number") {
        lo = Math.min(lo, value);
        hi = Math.max(hi, value);
      }
    }
    const scale = linearScale(lo <= hi ? [lo, hi] : [0, 1], [ParallelCoordinates.HEIGHT, 0]);
    return (item) => scale(column.values[item] as number);
  }
  const labels = Array.from(
    new Set(column.values.filter((v): v is string => typeof v === "string")),
  ).sort();
  const scale = linearScale([0, Math.max(labels.length - 1, 1)], [ParallelCoordinates.HEIGHT, 0]);
  return (item) => scale(labels.indexOf(column.values[item] as string));
}
