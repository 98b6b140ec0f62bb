/** Amount-missing barchart: one bar per visible variable, current order.
 *
 * Bar heights are a pure function of the served q_am values; clicking a bar
 * selects that variable, shift-click-dragging across bars selects the
 * brushed block of variables as the visible subset.
 */

import { Profile } from "../api.js";
import { COLOURS, clear, svgElement } from "../svg.js";

export interface BarchartCallbacks {
  onSelect(variable: string | null): void;
  onBrush(variables: string[]): void;
}

export class Barchart {
  static readonly HEIGHT = 120;
  static readonly BAR_WIDTH = 18;
  static readonly GAP = 3;

  private brushStart: number | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: BarchartCallbacks,
  ) {}

  render(profile: Profile, order: string[], selected: string | null): void {
    clear(this.container);
    const byName = new Map(profile.entries.map((e) => [e.variable, e]));
    const names = order.filter((n) => byName.has(n));
    const width = names.length * (Barchart.BAR_WIDTH + Barchart.GAP) + Barchart.GAP;
    const svg = svgElement("svg", {
      width,
      height: Barchart.HEIGHT + 18,
      class: "barchart",
      role: "img",
    });

    names.forEach((name, position) => {
      const entry = byName.get(name)!;
      const barHeight = entry.q_am * Barchart.HEIGHT;
      const x = Barchart.GAP + position * (Barchart.BAR_WIDTH + Barchart.GAP);
      const bar = svgElement("rect", {
        x,
        y: Barchart.HEIGHT - barHeight,
        width: Barchart.BAR_WIDTH,
        height: barHeight,
        fill: name === selected ? COLOURS.selection : COLOURS.missing,
        "data-variable": name,
        "data-q-am": entry.q_am,
        class: "bar",
      });
      bar.addEventListener("mousedown", (event) => {
        if ((event as MouseEvent).shiftKey) this.brushStart = position;
      });
      bar.addEventListener("mouseup", (event) => {
        if (this.brushStart !== null && (event as MouseEvent).shiftKey) {
          const [lo, hi] = [Math.min(this.brushStart, position), Math.max(this.brushStart, position)];
          this.brushStart = null;
          this.callbacks.onBrush(names.slice(lo, hi + 1));
        } else {
          this.brushStart = null;
          this.callbacks.onSelect(name === selected ? null : name);
        }
      });
      svg.appendChild(bar);

      const label = svgElement("text", {
        x: x + Barchart.BAR_WIDTH / 2,
        y: Barchart.HEIGHT + 12,
        "text-anchor": "middle",
        class: "bar-label",
        "data-variable": name,
      });
      label.textContent = name.length > 6 ? `${name.slice(0, 5)}…` : name;
      svg.appendChild(label);
    });

    this.container.appendChild(svg);
  }
}
