import { describe, expect, it, vi } from "vitest";

import { DEFAULT_STATE, StateStore, deserializeState, serializeState } from "../src/state.js";

describe("state store", () => {
  it("notifies subscribers on change only", () => {
    const store = new StateStore();
    const seen = vi.fn();
    store.subscribe(seen);
    store.update({ selected: "Age" });
    store.update({ selected: "Age" }); // no-op
    expect(seen).toHaveBeenCalledTimes(1);
    expect(store.get().selected).toBe("Age");
  });

  it("url serialization round-trips every field", () => {
    const state = {
      ...DEFAULT_STATE,
      datasetId: "ds-3",
      orderingMetric: "jm_abs",
      selected: "MCP_1",
      thresholdFilter: "q_am>0.3",
      topN: 9,
      visible: ["Age", "BMI"],
      edgeFilter: "jm_dir<0.05,cm_did>0.9",
      edgeMetric: "cm_did",
    };
    const restored = { ...DEFAULT_STATE, ...deserializeState(`#${serializeState(state)}`) };
    expect(restored).toEqual(state);
  });

  it("default state serializes to an empty hash", () => {
    expect(serializeState(DEFAULT_STATE)).toBe("");
    expect(deserializeState("")).toEqual({});
  });
});
