/**
 * Tiny SVG document builder: element string helpers and linear scales.
 * Output is deterministic given identical inputs.
 */

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  children: string[] = [],
  text?: string,
): string {
  const attrText = Object.entries(attrs)
    .map(([key, value]) => `${key}="${value}"`)
    .join(" ");
  if (children.length === 0 && text === undefined) {
    return `<${tag} ${attrText}/>`;
  }
  const body = text !== undefined ? escapeText(text) : children.join("\n");
  return `<${tag} ${attrText}>${body}</${tag}>`;
}

export function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function svgDocument(width: number, height: number, children: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    el("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }),
    ...children,
    "</svg>",
  ].join("\n");
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 100) return value.toFixed(0);
  if (abs >= 1) return parseFloat(value.toFixed(2)).toString();
  if (abs >= 0.01) return parseFloat(value.toFixed(3)).toString();
  return value.toExponential(1);
}

/** Round-valued tick positions covering [lo, hi]. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (count * step) / span;
  const refined = err <= 0.15 ? step * 10 : err <= 0.35 ? step * 5 : err <= 0.75 ? step * 2 : step;
  const start = Math.ceil(lo / refined) * refined;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += refined) {
    out.push(parseFloat(v.toPrecision(12)));
  }
  return out;
}
