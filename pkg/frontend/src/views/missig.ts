/** MissiG glyphs: per-variable missingness summaries with four components.
 *
 * Each glyph shows a light-blue amount-missing block and a grey histogram
 * of recorded values. With a variable selected, a red block shows the
 * jointly-missing amount with the selection and a red histogram shows the
 * recorded-value distribution of items missing in the selected variable.
 * All heights are pure functions of served values: block height =
 * (count / item count) * GLYPH_HEIGHT, histogram bar height =
 * probability * HIST_HEIGHT.
 */

import { ConditionalPayload, Distribution, Profile } from "../api.js";
import { COLOURS, clear, htmlElement, svgElement } from "../svg.js";

export class MissiGGrid {
  static readonly GLYPH_HEIGHT = 80;
  static readonly HIST_HEIGHT = 80;
  static readonly BLOCK_WIDTH = 14;
  static readonly HIST_WIDTH = 72;

  constructor(private readonly container: HTMLElement) {}

  /** Render without a selection: blue blocks and grey histograms only. */
  renderOverview(
    profile: Profile,
    distributions: Map<string, Distribution | null>,
    itemCount: number,
    order: string[],
  ): void {
    clear(this.container);
    const byName = new Map(profile.entries.map((e) => [e.variable, e]));
    for (const name of order) {
      const entry = byName.get(name);
      if (!entry) continue;
      this.container.appendChild(glyph({
        variable: name,
        itemCount,
        missingCount: entry.missing_count,
        overall: distributions.get(name) ?? null,
        jointCount: null,
        conditioned: null,
        selected: false,
      }));
    }
  }

  /** Render under a selection: red joint blocks and conditioned histograms. */
  renderSelection(payload: ConditionalPayload, order: string[]): void {
    clear(this.container);
    const byCondition = new Map(payload.entries.map((e) => [e.condition, e]));
    for (const name of order) {
      if (name === payload.selected) {
        this.container.appendChild(glyph({
          variable: name,
          itemCount: payload.item_count,
          missingCount: payload.selected_missing_count,
          overall: payload.selected_overall,
          jointCount: null,
          conditioned: null,
          selected: true,
        }));
        continue;
      }
      const entry = byCondition.get(name);
      if (!entry) continue;
      this.container.appendChild(glyph({
        variable: name,
        itemCount: payload.item_count,
        missingCount: entry.missing_count,
        overall: entry.overall,
        jointCount: entry.joint_missing_count,
        conditioned: entry.conditioned,
        selected: false,
      }));
    }
  }
}

interface GlyphSpec {
  variable: string;
  itemCount: number;
  missingCount: number;
  overall: Distribution | null;
  jointCount: number | null;
  conditioned: Distribution | null;
  selected: boolean;
}

function glyph(spec: GlyphSpec): HTMLElement {
  const hasJoint = spec.jointCount !== null;
  const blocks = hasJoint ? 2 : 1;
  const histRows = spec.conditioned ? 2 : 1;
  const width = blocks * (MissiGGrid.BLOCK_WIDTH + 2) + MissiGGrid.HIST_WIDTH + 8;
  const height = histRows * (MissiGGrid.HIST_HEIGHT + 4) + 18;

  const wrapper = htmlElement("div", {
    class: spec.selected ? "missig-glyph selected" : "missig-glyph",
    "data-variable": spec.variable,
  });
  const svg = svgElement("svg", { width, height, class: "missig" });

  const amHeight = (spec.missingCount / spec.itemCount) * MissiGGrid.GLYPH_HEIGHT;
  svg.appendChild(svgElement("rect", {
    x: 0,
    y: MissiGGrid.GLYPH_HEIGHT - amHeight,
    width: MissiGGrid.BLOCK_WIDTH,
    height: amHeight,
    fill: COLOURS.amountBlock,
    class: "am-block",
    "data-count": spec.missingCount,
  }));

  if (hasJoint) {
    const jointHeight = (spec.jointCount! / spec.itemCount) * MissiGGrid.GLYPH_HEIGHT;
    svg.appendChild(svgElement("rect", {
      x: MissiGGrid.BLOCK_WIDTH + 2,
      y: MissiGGrid.GLYPH_HEIGHT - jointHeight,
      width: MissiGGrid.BLOCK_WIDTH,
      height: jointHeight,
      fill: COLOURS.selection,
      class: "jm-block",
      "data-count": spec.jointCount!,
    }));
  }

  const histX = blocks * (MissiGGrid.BLOCK_WIDTH + 2) + 4;
  if (spec.overall) {
    svg.appendChild(histogram(spec.overall, histX, 0, COLOURS.histogram, "hist-overall"));
  }
  if (spec.conditioned) {
    svg.appendChild(histogram(
      spec.conditioned, histX, MissiGGrid.HIST_HEIGHT + 4, COLOURS.selection, "hist-conditioned",
    ));
  }

  const label = svgElement("text", {
    x: width / 2,
    y: height - 4,
    "text-anchor": "middle",
    class: "missig-label",
    fill: spec.selected ? COLOURS.selection : "#222",
  });
  label.textContent = spec.variable;
  svg.appendChild(label);

  wrapper.appendChild(svg);
  return wrapper;
}

function histogram(dist: Distribution, x: number, y: number, colour: string, cls: string) {
  const group = svgElement("g", { class: cls, transform: `translate(${x},${y})` });
  const barWidth = MissiGGrid.HIST_WIDTH / Math.max(dist.bin_count, 1);
  dist.probabilities.forEach((p, bin) => {
    const barHeight = p * MissiGGrid.HIST_HEIGHT;
    group.appendChild(svgElement("rect", {
      x: bin * barWidth,
      y: MissiGGrid.HIST_HEIGHT - barHeight,
      width: Math.max(barWidth - 0.5, 0.5),
      height: barHeight,
      fill: colour,
      "data-bin": bin,
      "data-probability": p,
    }));
  });
  return group;
}
