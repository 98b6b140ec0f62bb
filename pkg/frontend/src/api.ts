/** Typed client for the missingness metrics service. */

export interface VariableSummary {
  name: string;
  kind: "numerical" | "categorical";
  missing_count: number;
  recorded_count: number;
}

export interface DatasetSummary {
  id: string;
  version: number;
  status: "pending" | "ready" | "failed";
  name: string;
  variable_count: number;
  item_count: number;
  total_missing_count: number;
  total_missing_fraction: number;
  variables: VariableSummary[];
}

export interface ProfileEntry {
  variable: string;
  q_am: number;
  missing_count: number;
  recorded_count: number;
}

export interface Profile {
  entries: ProfileEntry[];
  total_missing_fraction: number;
}

export interface Matrix {
  metric: string;
  variables: string[];
  symmetric: boolean;
  values: (number | null)[][];
  support: number[][];
}

export interface Ordering {
  metric: string;
  permutation: number[];
  anchor_pair: [number, number] | null;
  variables: string[];
}

export interface Selection {
  indices: number[];
  variables: string[];
}

export interface Distribution {
  variable: string;
  kind: "numerical" | "categorical";
  bin_count: number;
  counts: number[];
  probabilities: number[];
  edges: number[] | null;
  categories: string[] | null;
}

export interface ConditionalEntry {
  target: string;
  condition: string;
  overall: Distribution | null;
  conditioned: Distribution | null;
  support: number;
  joint_missing_count: number;
  q_cm_did: number;
  q_cm_h: number;
  q_am: number;
  missing_count: number;
}

export interface ConditionalPayload {
  selected: string;
  selected_index: number;
  item_count: number;
  selected_q_am: number;
  selected_missing_count: number;
  selected_overall: Distribution | null;
  entries: ConditionalEntry[];
}

export interface ItemColumn {
  name: string;
  kind: "numerical" | "categorical";
  values: (number | string | null)[];
  missing: boolean[];
}

export interface Items {
  item_count: number;
  columns: ItemColumn[];
}

export interface NetworkNode {
  id: string;
  label: string;
  q_am: number;
  missing_count: number;
}

export interface NetworkEdge {
  source: string;
  target: string;
  jm_mag: number;
  jm_dir: number;
  jm_abs: number;
  jm_support: number;
  cm_did_fwd: number;
  cm_did_rev: number;
  cm_h_fwd: number;
  cm_h_rev: number;
  cm_support_fwd: number;
  cm_support_rev: number;
}

export interface Network {
  nodes: NetworkNode[];
  edges: NetworkEdge[];
  applied_filters: string[];
}

export class PendingError extends Error {
  constructor() {
    super("computation pending");
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const query = params ? `?${new URLSearchParams(params)}` : "";
    const response = await fetch(`${this.baseUrl}${path}${query}`);
    if (response.status === 202) throw new PendingError();
    if (!response.ok) {
      const body = await response.text();
      throw new Error(`${response.status} for ${path}: ${body}`);
    }
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      const text = await response.text();
      throw new Error(`${response.status} for ${path}: ${text}`);
    }
    return (await response.json()) as T;
  }

  listDatasets(): Promise<DatasetSummary[]> {
    return this.get("/datasets");
  }

  loadCsvText(csvText: string, name?: string): Promise<DatasetSummary> {
    return this.post("/datasets", { csv_text: csvText, name });
  }

  summary(id: string): Promise<DatasetSummary> {
    return this.get(`/datasets/${id}`);
  }

  status(id: string): Promise<{ status: string; error: string | null }> {
    return this.get(`/datasets/${id}/status`);
  }

  /** Poll until the dataset's artifacts are computed. */
  async waitReady(id: string, timeoutMs = 60_000): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const status = await this.status(id);
      if (status.status === "ready") return;
      if (status.status === "failed") throw new Error(`computation failed: ${status.error}`);
      if (Date.now() > deadline) throw new Error("timed out waiting for computation");
      await new Promise((resolve) => setTimeout(resolve, 150));
    }
  }

  profile(id: string): Promise<Profile> {
    return this.get(`/datasets/${id}/profile`);
  }

  matrix(id: string, metric: string): Promise<Matrix> {
    return this.get(`/datasets/${id}/matrices/${metric}`);
  }

  ordering(id: string, metric: string, descending = true): Promise<Ordering> {
    return this.get(`/datasets/${id}/ordering`, {
      metric,
      descending: String(descending),
    });
  }

  selection(id: string, opts: { filter?: string; metric?: string; topN?: number }): Promise<Selection> {
    const params: Record<string, string> = {};
    if (opts.filter) params.filter = opts.filter;
    if (opts.metric) params.metric = opts.metric;
    if (opts.topN != null) params.top_n = String(opts.topN);
    return this.get(`/datasets/${id}/selection`, params);
  }

  conditional(id: string, variable: string): Promise<ConditionalPayload> {
    return this.get(`/datasets/${id}/conditional`, { variable });
  }

  items(id: string): Promise<Items> {
    return this.get(`/datasets/${id}/items`);
  }

  network(id: string, filter?: string): Promise<Network> {
    return this.get(`/datasets/${id}/network`, filter ? { filter } : undefined);
  }

  generate(id: string, spec: unknown, name?: string): Promise<{ dataset: DatasetSummary; manifest: unknown }> {
    return this.post(`/datasets/${id}/generate`, { spec, name });
  }
}
