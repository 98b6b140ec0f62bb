/** Small DOM/SVG construction helpers shared by the views. */

export const SVG_NS = "http://www.w3.org/2000/svg";

export function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export function htmlElement<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const el = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  if (text !== undefined) el.textContent = text;
  return el;
}

export function clear(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

/** Colours shared across the coordinated views. */
export const COLOURS = {
  missing: "#7b3294",      // purple: missing cells / any-missing items
  amountBlock: "#92c5de",  // light blue: amount-missing block
  selection: "#d7191c",    // red: structures tied to the selected variable
  recorded: "#9e9e9e",     // grey: recorded values
  histogram: "#bdbdbd",
};
