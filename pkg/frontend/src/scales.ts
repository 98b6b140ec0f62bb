/** Scales, colour ramps and a seeded PRNG for reproducible layouts. */

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const scale = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

function channel(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

function mix(from: [number, number, number], to: [number, number, number], t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  return `rgb(${channel(from[0], to[0], clamped)},${channel(from[1], to[1], clamped)},${channel(from[2], to[2], clamped)})`;
}

/** Yellow -> dark blue sequential ramp (conditional metrics). */
export function sequentialRamp(t: number): string {
  return mix([255, 237, 160], [37, 52, 148], t);
}

/** Green -> white -> purple diverging ramp (signed joint deviation). */
export function divergingRamp(t: number): string {
  const clamped = Math.max(-1, Math.min(1, t));
  return clamped < 0
    ? mix([255, 255, 255], [0, 136, 55], -clamped)
    : mix([255, 255, 255], [123, 50, 148], clamped);
}

/** Grey ramp for recorded heatmap cells (0 = light, 1 = dark). */
export function greyRamp(t: number): string {
  return mix([238, 238, 238], [51, 51, 51], t);
}

/** Deterministic 32-bit PRNG (mulberry32); seeds the network layout. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}
