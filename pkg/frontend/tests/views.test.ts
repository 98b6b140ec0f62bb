import { beforeEach, describe, expect, it, vi } from "vitest";

import { Barchart } from "../src/views/barchart.js";
import { Heatmap } from "../src/views/heatmap.js";
import { MissiGGrid } from "../src/views/missig.js";
import { NetworkView } from "../src/views/network.js";
import { ParallelCoordinates } from "../src/views/parallel.js";
import { CONDITIONAL, ITEMS, NETWORK, PROFILE, distribution } from "./fixtures.js";

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.appendChild(container);
});

describe("barchart", () => {
  it("bar heights are q_am times the chart height, in the given order", () => {
    const chart = new Barchart(container, { onSelect: () => {}, onBrush: () => {} });
    chart.render(PROFILE, ["b", "c", "a"], null);
    const bars = [...container.querySelectorAll("rect.bar")];
    expect(bars.map((b) => b.getAttribute("data-variable"))).toEqual(["b", "c", "a"]);
    const heights = bars.map((b) => Number(b.getAttribute("height")));
    expect(heights[0]).toBeCloseTo(0.5 * Barchart.HEIGHT, 9);
    expect(heights[1]).toBeCloseTo(0, 9);
    expect(heights[2]).toBeCloseTo(0.25 * Barchart.HEIGHT, 9);
  });

  it("clicking a bar reports a selection; clicking again clears it", () => {
    const onSelect = vi.fn();
    const chart = new Barchart(container, { onSelect, onBrush: () => {} });
    chart.render(PROFILE, ["a", "b", "c"], "b");
    const bar = container.querySelector('rect.bar[data-variable="b"]')!;
    bar.dispatchEvent(new MouseEvent("mouseup", { bubbles: true }));
    expect(onSelect).toHaveBeenCalledWith(null);
    const other = container.querySelector('rect.bar[data-variable="a"]')!;
    other.dispatchEvent(new MouseEvent("mouseup", { bubbles: true }));
    expect(onSelect).toHaveBeenCalledWith("a");
  });

  it("shift-dragging across bars brushes the block", () => {
    const onBrush = vi.fn();
    const chart = new Barchart(container, { onSelect: () => {}, onBrush });
    chart.render(PROFILE, ["a", "b", "c"], null);
    const first = container.querySelector('rect.bar[data-variable="a"]')!;
    const last = container.querySelector('rect.bar[data-variable="c"]')!;
    first.dispatchEvent(new MouseEvent("mousedown", { shiftKey: true, bubbles: true }));
    last.dispatchEvent(new MouseEvent("mouseup", { shiftKey: true, bubbles: true }));
    expect(onBrush).toHaveBeenCalledWith(["a", "b", "c"]);
  });
});

describe("missig", () => {
  it("renders blue blocks and grey histograms without a selection", () => {
    const grid = new MissiGGrid(container);
    const dists = new Map([
      ["a", distribution("a", [0.5, 0.5])],
      ["b", distribution("b", [1.0])],
      ["c", null],
    ]);
    grid.renderOverview(PROFILE, dists, 4, ["a", "b", "c"]);
    const glyphs = [...container.querySelectorAll(".missig-glyph")];
    expect(glyphs).toHaveLength(3);
    const amHeights = glyphs.map((g) =>
      Number(g.querySelector(".am-block")!.getAttribute("height")));
    expect(amHeights[0]).toBeCloseTo((1 / 4) * MissiGGrid.GLYPH_HEIGHT, 9);
    expect(amHeights[1]).toBeCloseTo((2 / 4) * MissiGGrid.GLYPH_HEIGHT, 9);
    expect(container.querySelectorAll(".jm-block")).toHaveLength(0);
    expect(container.querySelectorAll(".hist-conditioned")).toHaveLength(0);
  });

  it("red block height encodes the jointly-missing count under selection", () => {
    const grid = new MissiGGrid(container);
    grid.renderSelection(CONDITIONAL, ["a", "b", "c"]);
    const bGlyph = container.querySelector('.missig-glyph[data-variable="b"]')!;
    const jm = bGlyph.querySelector(".jm-block")!;
    expect(Number(jm.getAttribute("data-count"))).toBe(1);
    expect(Number(jm.getAttribute("height")))
      .toBeCloseTo((1 / 4) * MissiGGrid.GLYPH_HEIGHT, 9);
    // conditioned histogram bars scale by probability
    const bars = [...bGlyph.querySelectorAll(".hist-conditioned rect")];
    expect(Number(bars[0].getAttribute("height"))).toBeCloseTo(MissiGGrid.HIST_HEIGHT, 9);
    expect(Number(bars[1].getAttribute("height"))).toBeCloseTo(0, 9);
    // the selected glyph shows no red-on-itself components
    const selectedGlyph = container.querySelector('.missig-glyph[data-variable="a"]')!;
    expect(selectedGlyph.classList.contains("selected")).toBe(true);
    expect(selectedGlyph.querySelector(".jm-block")).toBeNull();
  });
});

describe("parallel coordinates", () => {
  it("shows one axis per visible variable in order", () => {
    const pc = new ParallelCoordinates(container);
    pc.render(ITEMS, ["b", "a"], null);
    const axes = [...container.querySelectorAll(".pc-axis")];
    expect(axes.map((a) => a.getAttribute("data-variable"))).toEqual(["b", "a"]);
  });

  it("routes missing values below the axis", () => {
    const pc = new ParallelCoordinates(container);
    pc.render(ITEMS, ["a", "b"], null);
    const lines = [...container.querySelectorAll(".pc-line")];
    const belowY = ParallelCoordinates.HEIGHT + ParallelCoordinates.BELOW;
    // item 1 misses variable a: its first point sits at the below-axis y
    const item1 = lines.find((l) => l.getAttribute("data-item") === "1")!;
    const firstPoint = item1.getAttribute("points")!.split(" ")[0];
    expect(Number(firstPoint.split(",")[1])).toBeCloseTo(belowY, 6);
  });

  it("colours items missing in the selected variable red", () => {
    const pc = new ParallelCoordinates(container);
    pc.render(ITEMS, ["a", "b"], "a");
    const red = [...container.querySelectorAll(".pc-line.selected-missing")];
    expect(red.map((l) => l.getAttribute("data-item"))).toEqual(["1"]);
    // clearing the selection removes every red encoding
    pc.render(ITEMS, ["a", "b"], null);
    expect(container.querySelectorAll(".pc-line.selected-missing")).toHaveLength(0);
  });
});

describe("heatmap", () => {
  it("renders purple cells for missing and grey for recorded", () => {
    const hm = new Heatmap(container);
    hm.render(ITEMS, ["a", "b", "c"]);
    const colA = container.querySelector('g[data-variable="a"]')!;
    const cells = [...colA.querySelectorAll("rect")];
    expect(cells).toHaveLength(4);
    expect(cells[1].getAttribute("fill")).toBe("#7b3294");
    expect(cells[0].getAttribute("fill")).not.toBe("#7b3294");
  });

  it("aggregates rows beyond the cap and says so", () => {
    const n = 1000;
    const big = {
      item_count: n,
      columns: [{
        name: "x",
        kind: "numerical" as const,
        values: Array.from({ length: n }, (_, i) => i),
        missing: Array.from({ length: n }, () => false),
      }],
    };
    const hm = new Heatmap(container);
    hm.render(big, ["x"]);
    expect(container.querySelector(".heatmap-notice")).not.toBeNull();
    const svg = container.querySelector("svg.heatmap")!;
    expect(Number(svg.getAttribute("data-row-stride"))).toBe(4);
  });
});

describe("network", () => {
  it("node radius follows q_am and edges carry metric values", () => {
    const net = new NetworkView(container);
    net.render(NETWORK, "jm_abs");
    const nodes = [...container.querySelectorAll(".net-node")];
    const radii = new Map(nodes.map((n) => [n.getAttribute("data-variable"), Number(n.getAttribute("r"))]));
    expect(radii.get("b")!).toBeGreaterThan(radii.get("c")!);
    const edge = container.querySelector(".net-edge")!;
    expect(Number(edge.getAttribute("data-value"))).toBeCloseTo(0.125, 9);
    expect(container.querySelector("svg.network")!.getAttribute("data-edge-count")).toBe("1");
  });

  it("layout is deterministic across renders", () => {
    const net = new NetworkView(container);
    net.render(NETWORK, "jm_abs");
    const first = [...container.querySelectorAll(".net-node")].map((n) => n.getAttribute("cx"));
    net.render(NETWORK, "jm_abs");
    const second = [...container.querySelectorAll(".net-node")].map((n) => n.getAttribute("cx"));
    expect(second).toEqual(first);
  });
});
