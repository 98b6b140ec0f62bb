/** Shared view state: every view renders from this single source. */

export interface ViewState {
  datasetId: string | null;
  orderingMetric: string;
  selected: string | null;
  /** conjunctive q_am predicate text, e.g. "q_am>0.3" (empty = none) */
  thresholdFilter: string;
  topN: number | null;
  /** explicit visible subset (variable names); null = all */
  visible: string[] | null;
  /** conjunctive edge predicate text for the network view */
  edgeFilter: string;
  edgeMetric: string;
}

export const DEFAULT_STATE: ViewState = {
  datasetId: null,
  orderingMetric: "q_am",
  selected: null,
  thresholdFilter: "",
  topN: null,
  visible: null,
  edgeFilter: "",
  edgeMetric: "jm_abs",
};

type Listener = (state: ViewState) => void;

export class StateStore {
  private state: ViewState;
  private listeners: Listener[] = [];

  constructor(initial: Partial<ViewState> = {}) {
    this.state = { ...DEFAULT_STATE, ...initial };
  }

  get(): ViewState {
    return this.state;
  }

  /** Apply a partial update; listeners run only when something changed. */
  update(patch: Partial<ViewState>): void {
    const next = { ...this.state, ...patch };
    if (statesEqual(next, this.state)) return;
    this.state = next;
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

function statesEqual(a: ViewState, b: ViewState): boolean {
  return serializeState(a) === serializeState(b);
}

/** URL-hash form of the state, for reproducible sessions. */
export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.datasetId) params.set("ds", state.datasetId);
  if (state.orderingMetric !== DEFAULT_STATE.orderingMetric) params.set("order", state.orderingMetric);
  if (state.selected) params.set("sel", state.selected);
  if (state.thresholdFilter) params.set("thr", state.thresholdFilter);
  if (state.topN != null) params.set("top", String(state.topN));
  if (state.visible) params.set("vis", state.visible.join("|"));
  if (state.edgeFilter) params.set("ef", state.edgeFilter);
  if (state.edgeMetric !== DEFAULT_STATE.edgeMetric) params.set("em", state.edgeMetric);
  return params.toString();
}

export function deserializeState(hash: string): Partial<ViewState> {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const state: Partial<ViewState> = {};
  if (params.has("ds")) state.datasetId = params.get("ds");
  if (params.has("order")) state.orderingMetric = params.get("order")!;
  if (params.has("sel")) state.selected = params.get("sel");
  if (params.has("thr")) state.thresholdFilter = params.get("thr")!;
  if (params.has("top")) state.topN = Number(params.get("top"));
  if (params.has("vis")) state.visible = params.get("vis")!.split("|");
  if (params.has("ef")) state.edgeFilter = params.get("ef")!;
  if (params.has("em")) state.edgeMetric = params.get("em")!;
  return state;
}
