/** End-to-end checks against the real metrics service.
 *
 * Spawns the Python service, loads a complete table shaped like the
 * breast-cancer study data, injects conditional missingness through the
 * generator endpoint, and audits the rendered DOM against the API:
 * red block geometry, threshold-driven axis counts, and ordering
 * coordination across all views.
 */

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Explorer } from "../src/main.js";
import { MissiGGrid } from "../src/views/missig.js";
import { seededRandom } from "../src/scales.js";

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let api: ApiClient;
let datasetId: string;

const NAMES = [
  "Age", "BMI", "Glucose", "Insulin", "HOMA",
  "Leptin", "Adiponectin", "Resistin", "MCP_1", "Classification",
];

/** Deterministic complete 116 x 10 table with the study's column names. */
function completeCsv(): string {
  const random = seededRandom(116);
  const gauss = () => {
    const u = Math.max(random(), 1e-12);
    const v = random();
    return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * v);
  };
  const rows = [NAMES.join(",")];
  for (let i = 0; i < 116; i += 1) {
    const cells = NAMES.slice(0, 9).map(() => Math.exp(2.5 + 0.6 * gauss()).toFixed(4));
    cells.push(i < 52 ? "1.0" : "2.0");
    rows.push(cells.join(","));
  }
  return rows.join("\n") + "\n";
}

const CM_SPEC = {
  seed: 90210,
  mode: "cm",
  cm_pairs: [
    { j: "Age", k: "BMI", am_j: 0.28, range_type: "medium", strength: 0.3 },
    { j: "Glucose", k: "Insulin", am_j: 0.15, range_type: "high", strength: 0.6 },
    { j: "HOMA", k: "Leptin", am_j: 0.26, range_type: "medium", strength: 0.9 },
    { j: "Adiponectin", k: "Resistin", am_j: 0.25, range_type: "medium", strength: 0.3 },
    { j: "MCP_1", k: "Classification", am_j: 0.14, range_type: "low", strength: 0.6 },
  ],
};

async function waitForService(timeoutMs = 60_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  service = spawn(
    "python3", ["-m", "missqm.cli", "serve", "--host", "127.0.0.1", "--port", String(PORT)],
    { cwd: "..", stdio: ["ignore", "pipe", "pipe"] },
  );
  service.stderr?.on("data", () => {});
  await waitForService();

  api = new ApiClient(BASE);
  const base = await api.loadCsvText(completeCsv(), "coimbra_like");
  await api.waitReady(base.id);
  const generated = await api.generate(base.id, CM_SPEC, "coimbra_cm");
  datasetId = generated.dataset.id;
  await api.waitReady(datasetId);
});

afterAll(() => {
  service?.kill("SIGTERM");
});

interface Harness {
  explorer: Explorer;
  root: HTMLElement;
}

function makeExplorer(initial: Record<string, unknown>): Harness {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return { explorer: new Explorer(root, api, { datasetId, ...initial }), root };
}

describe("explorer against the live service", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("9a: red JM block heights reproduce jm_magnitude * N from the API", async () => {
    const { explorer, root } = makeExplorer({ selected: "MCP_1" });
    await explorer.render();

    const matrix = await api.matrix(datasetId, "jm_mag");
    const summary = await api.summary(datasetId);
    const n = summary.item_count;
    const selectedIndex = matrix.variables.indexOf("MCP_1");

    const glyphs = [...root.querySelectorAll(".missig-glyph")];
    expect(glyphs.length).toBe(10);
    let audited = 0;
    for (const glyph of glyphs) {
      const name = glyph.getAttribute("data-variable")!;
      if (name === "MCP_1") continue;
      const block = glyph.querySelector(".jm-block")!;
      expect(block, `jm block for ${name}`).not.toBeNull();
      const k = matrix.variables.indexOf(name);
      const magnitude = matrix.values[selectedIndex][k] as number;
      const expectedCount = magnitude * n;
      expect(Number(block.getAttribute("data-count"))).toBeCloseTo(expectedCount, 6);
      const height = Number(block.getAttribute("height"));
      expect(height).toBeCloseTo((expectedCount / n) * MissiGGrid.GLYPH_HEIGHT, 6);
      audited += 1;
    }
    expect(audited).toBe(9);
  });

  it("9a continued: clearing the selection removes every red encoding", async () => {
    const { explorer, root } = makeExplorer({ selected: "MCP_1" });
    await explorer.render();
    expect(root.querySelectorAll(".jm-block").length).toBeGreaterThan(0);
    explorer.store.update({ selected: null });
    await explorer.render();
    expect(root.querySelectorAll(".jm-block")).toHaveLength(0);
    expect(root.querySelectorAll(".hist-conditioned")).toHaveLength(0);
    expect(root.querySelectorAll(".pc-line.selected-missing")).toHaveLength(0);
  });

  it("9b: a top-5 amount-missing threshold reduces the PC to the served axes", async () => {
    const { explorer, root } = makeExplorer({ topN: 5 });
    await explorer.render();

    const served = await api.selection(datasetId, { metric: "q_am", topN: 5 });
    const axes = [...root.querySelectorAll(".pc-axis")]
      .map((a) => a.getAttribute("data-variable"));
    expect(axes).toHaveLength(5);
    expect(new Set(axes)).toEqual(new Set(served.variables));
  });

  it("9c: switching the ordering metric reorders all views identically", async () => {
    const audit = (root: HTMLElement) => {
      const bars = [...root.querySelectorAll("rect.bar")]
        .map((b) => b.getAttribute("data-variable"));
      const heatCols = [...root.querySelectorAll("svg.heatmap g[data-variable]")]
        .map((g) => g.getAttribute("data-variable"));
      const axes = [...root.querySelectorAll(".pc-axis")]
        .map((a) => a.getAttribute("data-variable"));
      const glyphs = [...root.querySelectorAll(".missig-glyph")]
        .map((g) => g.getAttribute("data-variable"));
      return { bars, heatCols, axes, glyphs };
    };

    const first = makeExplorer({});
    await first.explorer.render();
    const initial = await api.ordering(datasetId, "q_am");
    let views = audit(first.root);
    expect(views.bars).toEqual(initial.variables);
    expect(views.heatCols).toEqual(initial.variables);
    expect(views.axes).toEqual(initial.variables);
    expect(views.glyphs).toEqual(initial.variables);

    document.body.innerHTML = "";
    const second = makeExplorer({ orderingMetric: "jm_abs" });
    await second.explorer.render();
    const served = await api.ordering(datasetId, "jm_abs");
    views = audit(second.root);
    expect(views.bars).toEqual(served.variables);
    expect(views.heatCols).toEqual(served.variables);
    expect(views.axes).toEqual(served.variables);
    expect(views.glyphs).toEqual(served.variables);
    expect(served.variables).not.toEqual(initial.variables);
  });

  it("bar heights recover q_am within rendering quantization", async () => {
    const { explorer, root } = makeExplorer({});
    await explorer.render();
    const profile = await api.profile(datasetId);
    const byName = new Map(profile.entries.map((e) => [e.variable, e.q_am]));
    for (const bar of root.querySelectorAll("rect.bar")) {
      const name = bar.getAttribute("data-variable")!;
      const height = Number(bar.getAttribute("height"));
      expect(height / 120).toBeCloseTo(byName.get(name)!, 9);
    }
  });

  it("shows a visible error state when the dataset is unknown", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const explorer = new Explorer(root, api, { datasetId: "ds-does-not-exist" });
    await explorer.render();
    const banner = root.querySelector(".error-banner") as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("service error");
  });
});
