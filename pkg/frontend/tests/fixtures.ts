/** Hand-built payloads mirroring the service JSON, for view unit tests. */

import {
  ConditionalPayload,
  Distribution,
  Items,
  Network,
  Profile,
} from "../src/api.js";

export const PROFILE: Profile = {
  entries: [
    { variable: "a", q_am: 0.25, missing_count: 1, recorded_count: 3 },
    { variable: "b", q_am: 0.5, missing_count: 2, recorded_count: 2 },
    { variable: "c", q_am: 0.0, missing_count: 0, recorded_count: 4 },
  ],
  total_missing_fraction: 0.25,
};

export const ITEMS: Items = {
  item_count: 4,
  columns: [
    {
      name: "a",
      kind: "numerical",
      values: [1, null, 3, 4],
      missing: [false, true, false, false],
    },
    {
      name: "b",
      kind: "numerical",
      values: [10, 20, null, null],
      missing: [false, false, true, true],
    },
    {
      name: "c",
      kind: "categorical",
      values: ["x", "y", "x", "y"],
      missing: [false, false, false, false],
    },
  ],
};

export function distribution(
  variable: string,
  probabilities: number[],
  counts?: number[],
): Distribution {
  return {
    variable,
    kind: "numerical",
    bin_count: probabilities.length,
    counts: counts ?? probabilities.map((p) => Math.round(p * 100)),
    probabilities,
    edges: Array.from({ length: probabilities.length + 1 }, (_, i) => i),
    categories: null,
  };
}

export const CONDITIONAL: ConditionalPayload = {
  selected: "a",
  selected_index: 0,
  item_count: 4,
  selected_q_am: 0.25,
  selected_missing_count: 1,
  selected_overall: distribution("a", [0.5, 0.5]),
  entries: [
    {
      target: "a",
      condition: "b",
      overall: distribution("b", [0.25, 0.75]),
      conditioned: distribution("b", [1.0, 0.0], [1, 0]),
      support: 1,
      joint_missing_count: 1,
      q_cm_did: 0.75,
      q_cm_h: 0.3,
      q_am: 0.5,
      missing_count: 2,
    },
    {
      target: "a",
      condition: "c",
      overall: distribution("c", [0.5, 0.5]),
      conditioned: distribution("c", [0.0, 1.0], [0, 1]),
      support: 1,
      joint_missing_count: 0,
      q_cm_did: 0.5,
      q_cm_h: 1.0,
      q_am: 0.0,
      missing_count: 0,
    },
  ],
};

export const NETWORK: Network = {
  nodes: [
    { id: "a", label: "a", q_am: 0.25, missing_count: 1 },
    { id: "b", label: "b", q_am: 0.5, missing_count: 2 },
    { id: "c", label: "c", q_am: 0.0, missing_count: 0 },
  ],
  edges: [
    {
      source: "a", target: "b",
      jm_mag: 0.25, jm_dir: 0.125, jm_abs: 0.125, jm_support: 1,
      cm_did_fwd: 0.75, cm_did_rev: 0.2, cm_h_fwd: 0.3, cm_h_rev: 0.1,
      cm_support_fwd: 1, cm_support_rev: 2,
    },
  ],
  applied_filters: [],
};
