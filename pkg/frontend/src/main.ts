/** Explorer controller: one shared state, five coordinated views.
 *
 * Every interaction funnels through the state store; a render pass fetches
 * whatever the new state needs and redraws all views from the same
 * payloads, so no view can lag behind another.
 */

import { ApiClient, ConditionalPayload, Distribution, Items, Network, Ordering, Profile } from "./api.js";
import { Barchart } from "./views/barchart.js";
import { Heatmap } from "./views/heatmap.js";
import { MissiGGrid } from "./views/missig.js";
import { NetworkView } from "./views/network.js";
import { ParallelCoordinates } from "./views/parallel.js";
import { StateStore, ViewState, deserializeState, serializeState } from "./state.js";
import { htmlElement } from "./svg.js";

interface PayloadBundle {
  profile: Profile;
  ordering: Ordering;
  items: Items;
  distributions: Map<string, Distribution | null>;
  network: Network;
  conditional: ConditionalPayload | null;
  visible: string[];
  itemCount: number;
}

export class Explorer {
  readonly store: StateStore;
  private readonly barchart: Barchart;
  private readonly heatmap: Heatmap;
  private readonly parallel: ParallelCoordinates;
  private readonly missig: MissiGGrid;
  private readonly network: NetworkView;
  private renderToken = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    initial: Partial<ViewState> = {},
  ) {
    this.store = new StateStore(initial);
    this.buildChrome();
    this.barchart = new Barchart(this.section("barchart"), {
      onSelect: (variable) => this.store.update({ selected: variable }),
      onBrush: (variables) => this.store.update({ visible: variables, topN: null, thresholdFilter: "" }),
    });
    this.heatmap = new Heatmap(this.section("heatmap"));
    this.parallel = new ParallelCoordinates(this.section("parallel"));
    this.missig = new MissiGGrid(this.section("missig"));
    this.network = new NetworkView(this.section("network"));
    this.store.subscribe(() => {
      this.syncHash();
      void this.render();
    });
  }

  section(name: string): HTMLElement {
    return this.root.querySelector(`[data-view="${name}"]`) as HTMLElement;
  }

  private buildChrome(): void {
    this.root.innerHTML = `
      <div class="toolbar">
        <label>dataset <select data-control="dataset"></select></label>
        <label>order by <select data-control="ordering">
          <option value="q_am">amount missing</option>
          <option value="jm_mag">joint magnitude</option>
          <option value="jm_dir">joint deviation (signed)</option>
          <option value="jm_abs">joint deviation (absolute)</option>
          <option value="cm_did">conditional density diff</option>
          <option value="cm_h">conditional entropy diff</option>
        </select></label>
        <label>top-n <input data-control="top-n" type="number" min="1" size="4"></label>
        <label>threshold <input data-control="threshold" placeholder="q_am>0.3" size="10"></label>
        <button data-control="clear-subset">all variables</button>
        <button data-control="clear-selection">clear selection</button>
        <label>edges <input data-control="edge-filter" placeholder="jm_dir<0.05,cm_did>0.9" size="18"></label>
        <label>edge metric <select data-control="edge-metric">
          <option value="jm_abs">jm_abs</option>
          <option value="jm_mag">jm_mag</option>
          <option value="jm_dir">jm_dir</option>
          <option value="cm_did">cm_did</option>
          <option value="cm_h">cm_h</option>
        </select></label>
      </div>
      <div class="error-banner" role="alert" hidden></div>
      <section><h2>Amount missing</h2><div data-view="barchart"></div></section>
      <section><h2>Heatmap</h2><div data-view="heatmap"></div></section>
      <section><h2>Parallel coordinates</h2><div data-view="parallel"></div></section>
      <section><h2>MissiG</h2><div data-view="missig" class="missig-grid"></div></section>
      <section><h2>Network</h2><div data-view="network"></div></section>
    `;

    this.control<HTMLSelectElement>("dataset").addEventListener("change", (e) => {
      const id = (e.target as HTMLSelectElement).value;
      this.store.update({ datasetId: id || null, selected: null, visible: null, topN: null });
    });
    this.control<HTMLSelectElement>("ordering").addEventListener("change", (e) => {
      this.store.update({ orderingMetric: (e.target as HTMLSelectElement).value });
    });
    this.control<HTMLInputElement>("top-n").addEventListener("change", (e) => {
      const raw = (e.target as HTMLInputElement).value;
      this.store.update({ topN: raw ? Number(raw) : null, visible: null });
    });
    this.control<HTMLInputElement>("threshold").addEventListener("change", (e) => {
      this.store.update({ thresholdFilter: (e.target as HTMLInputElement).value.trim(), visible: null });
    });
    this.control<HTMLButtonElement>("clear-subset").addEventListener("click", () => {
      this.store.update({ visible: null, topN: null, thresholdFilter: "" });
    });
    this.control<HTMLButtonElement>("clear-selection").addEventListener("click", () => {
      this.store.update({ selected: null });
    });
    this.control<HTMLInputElement>("edge-filter").addEventListener("change", (e) => {
      this.store.update({ edgeFilter: (e.target as HTMLInputElement).value.trim() });
    });
    this.control<HTMLSelectElement>("edge-metric").addEventListener("change", (e) => {
      this.store.update({ edgeMetric: (e.target as HTMLSelectElement).value });
    });
  }

  control<T extends HTMLElement>(name: string): T {
    return this.root.querySelector(`[data-control="${name}"]`) as T;
  }

  private showError(message: string | null): void {
    const banner = this.root.querySelector(".error-banner") as HTMLElement;
    if (message) {
      banner.textContent = message;
      banner.hidden = false;
    } else {
      banner.hidden = true;
    }
  }

  private syncHash(): void {
    if (typeof window !== "undefined" && window.location) {
      const serialized = serializeState(this.store.get());
      window.history?.replaceState?.(null, "", serialized ? `#${serialized}` : "#");
    }
  }

  async start(): Promise<void> {
    try {
      const datasets = await this.api.listDatasets();
      const picker = this.control<HTMLSelectElement>("dataset");
      picker.innerHTML = "";
      picker.appendChild(htmlElement("option", { value: "" }, "choose…"));
      for (const d of datasets) {
        picker.appendChild(htmlElement("option", { value: d.id }, `${d.name} (${d.id})`));
      }
      const state = this.store.get();
      if (!state.datasetId && datasets.length > 0) {
        this.store.update({ datasetId: datasets[0].id });
      } else {
        await this.render();
      }
    } catch (error) {
      this.showError(`service unreachable: ${String(error)}`);
    }
  }

  /** Fetch the bundle the state needs and redraw every view from it. */
  async render(): Promise<void> {
    const token = ++this.renderToken;
    const state = this.store.get();
    if (!state.datasetId) return;
    try {
      await this.api.waitReady(state.datasetId);
      const bundle = await this.fetchBundle(state);
      if (token !== this.renderToken) return; // superseded
      this.draw(state, bundle);
      this.showError(null);
    } catch (error) {
      if (token === this.renderToken) this.showError(`service error: ${String(error)}`);
    }
  }

  private async fetchBundle(state: ViewState): Promise<PayloadBundle> {
    const id = state.datasetId!;
    const [profile, ordering, items, distributionsRaw, network] = await Promise.all([
      this.api.profile(id),
      this.api.ordering(id, state.orderingMetric),
      this.api.items(id),
      fetch(`${this.api.baseUrl}/datasets/${id}/distributions`).then((r) => r.json()),
      this.api.network(id, state.edgeFilter || undefined),
    ]);

    const distributions = new Map<string, Distribution | null>();
    (distributionsRaw.variables as string[]).forEach((name, i) => {
      distributions.set(name, distributionsRaw.distributions[i]);
    });

    let visible: string[];
    if (state.visible) {
      visible = state.visible;
    } else if (state.topN != null || state.thresholdFilter) {
      const selection = await this.api.selection(id, {
        filter: state.thresholdFilter || undefined,
        metric: state.thresholdFilter ? undefined : "q_am",
        topN: state.topN ?? undefined,
      });
      visible = selection.variables;
    } else {
      visible = profile.entries.map((e) => e.variable);
    }
    // selection always stays visible
    if (state.selected && !visible.includes(state.selected)) {
      visible = [...visible, state.selected];
    }

    const conditional = state.selected
      ? await this.api.conditional(id, state.selected)
      : null;

    return {
      profile,
      ordering,
      items,
      distributions,
      network,
      conditional,
      visible,
      itemCount: items.item_count,
    };
  }

  private draw(state: ViewState, bundle: PayloadBundle): void {
    const visibleSet = new Set(bundle.visible);
    const order = bundle.ordering.variables.filter((name) => visibleSet.has(name));
    this.barchart.render(bundle.profile, order, state.selected);
    this.heatmap.render(bundle.items, order);
    this.parallel.render(bundle.items, order, state.selected);
    if (bundle.conditional) {
      this.missig.renderSelection(bundle.conditional, order);
    } else {
      this.missig.renderOverview(bundle.profile, bundle.distributions, bundle.itemCount, order);
    }
    this.network.render(bundle.network, state.edgeMetric);
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const initial = deserializeState(window.location.hash);
  const explorer = new Explorer(root, new ApiClient(""), initial);
  void explorer.start();
}

declare global {
  interface Window {
    missqmExplorerBoot?: () => void;
  }
}

if (typeof window !== "undefined") {
  window.missqmExplorerBoot = boot;
  if (document.readyState !== "loading") {
    if (document.getElementById("app")) boot();
  } else {
    document.addEventListener("DOMContentLoaded", () => {
      if (document.getElementById("app")) boot();
    });
  }
}
