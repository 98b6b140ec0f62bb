/** Variable-pair network: node size follows q_am, edge width and colour
 * follow a chosen pairwise metric. Layout is a small seeded force
 * simulation, so identical data renders identically.
 */

import { Network, NetworkEdge } from "../api.js";
import { COLOURS, clear, svgElement } from "../svg.js";
import { divergingRamp, seededRandom, sequentialRamp } from "../scales.js";

const SIZE = 420;
const ITERATIONS = 150;

export class NetworkView {
  constructor(private readonly container: HTMLElement) {}

  render(network: Network, metric: string): void {
    clear(this.container);
    const svg = svgElement("svg", {
      width: SIZE,
      height: SIZE,
      class: "network",
      "data-metric": metric,
      "data-edge-count": network.edges.length,
    });

    const index = new Map(network.nodes.map((n, i) => [n.id, i]));
    const positions = forceLayout(network, index);

    const weights = network.edges.map((e) => edgeValue(e, metric));
    const maxAbs = Math.max(...weights.map((w) => Math.abs(w)), 1e-9);
    network.edges.forEach((edge, i) => {
      const a = positions[index.get(edge.source)!];
      const b = positions[index.get(edge.target)!];
      const value = weights[i];
      const colour = metric === "jm_dir"
        ? divergingRamp(value / maxAbs)
        : sequentialRamp(Math.abs(value) / maxAbs);
      svg.appendChild(svgElement("line", {
        x1: a[0], y1: a[1], x2: b[0], y2: b[1],
        stroke: colour,
        "stroke-width": 0.5 + 4 * (Math.abs(value) / maxAbs),
        class: "net-edge",
        "data-source": edge.source,
        "data-target": edge.target,
        "data-value": value,
      }));
    });

    network.nodes.forEach((node) => {
      const [x, y] = positions[index.get(node.id)!];
      svg.appendChild(svgElement("circle", {
        cx: x, cy: y,
        r: 4 + 14 * node.q_am,
        fill: COLOURS.amountBlock,
        stroke: "#456",
        class: "net-node",
        "data-variable": node.id,
        "data-q-am": node.q_am,
      }));
      const label = svgElement("text", {
        x, y: y - (6 + 14 * node.q_am),
        "text-anchor": "middle",
        class: "net-label",
      });
      label.textContent = node.label;
      svg.appendChild(label);
    });

    this.container.appendChild(svg);
  }
}

function edgeValue(edge: NetworkEdge, metric: string): number {
  switch (metric) {
    case "jm_mag": return edge.jm_mag;
    case "jm_dir": return edge.jm_dir;
    case "jm_abs": return edge.jm_abs;
    case "cm_did": return Math.max(edge.cm_did_fwd, edge.cm_did_rev);
    case "cm_h": return Math.max(edge.cm_h_fwd, edge.cm_h_rev);
    default: return edge.jm_abs;
  }
}

function forceLayout(network: Network, index: Map<string, number>): [number, number][] {
  const n = network.nodes.length;
  const random = seededRandom(0x5eed);
  const pos: [number, number][] = Array.from({ length: n }, () => [
    SIZE / 2 + (random() - 0.5) * SIZE * 0.8,
    SIZE / 2 + (random() - 0.5) * SIZE * 0.8,
  ]);
  if (n <= 1) return pos.map(() => [SIZE / 2, SIZE / 2]);

  const springs = network.edges.map((e) => ({
    a: index.get(e.source)!,
    b: index.get(e.target)!,
    strength: Math.abs(e.jm_abs) + 0.05,
  }));

  const area = SIZE * SIZE;
  const k = Math.sqrt(area / n);
  for (let iter = 0; iter < ITERATIONS; iter += 1) {
    const temp = 0.1 * SIZE * (1 - iter / ITERATIONS) + 1;
    const disp: [number, number][] = Array.from({ length: n }, () => [0, 0]);
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        const dx = pos[i][0] - pos[j][0];
        const dy = pos[i][1] - pos[j][1];
        const dist = Math.max(Math.hypot(dx, dy), 0.01);
        const force = (k * k) / dist / dist;
        disp[i][0] += dx * force;
        disp[i][1] += dy * force;
        disp[j][0] -= dx * force;
        disp[j][1] -= dy * force;
      }
    }
    for (const spring of springs) {
      const dx = pos[spring.a][0] - pos[spring.b][0];
      const dy = pos[spring.a][1] - pos[spring.b][1];
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const force = (dist / k) * spring.strength;
      disp[spring.a][0] -= (dx / dist) * force * dist * 0.05;
      disp[spring.a][1] -= (dy / dist) * force * dist * 0.05;
      disp[spring.b][0] += (dx / dist) * force * dist * 0.05;
      disp[spring.b][1] += (dy / dist) * force * dist * 0.05;
    }
    for (let i = 0; i < n; i += 1) {
      const length = Math.max(Math.hypot(disp[i][0], disp[i][1]), 0.01);
      pos[i][0] += (disp[i][0] / length) * Math.min(length, temp);
      pos[i][1] += (disp[i][1] / length) * Math.min(length, temp);
      pos[i][0] = Math.min(SIZE - 20, Math.max(20, pos[i][0]));
      pos[i][1] = Math.min(SIZE - 20, Math.max(20, pos[i][1]));
    }
  }
  return pos;
}
