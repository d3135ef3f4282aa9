/**
 * Perceptually uniform sequential colormap (viridis anchors, linear
 * interpolation) plus categorical line colors.
 */

const VIRIDIS_ANCHORS: [number, number, number][] = [
  [0x44, 0x01, 0x54],
  [0x48, 0x28, 0x78],
  [0x3e, 0x49, 0x89],
  [0x31, 0x68, 0x8e],
  [0x26, 0x82, 0x8e],
  [0x1f, 0x9e, 0x89],
  [0x35, 0xb7, 0x79],
  [0x6e, 0xce, 0x58],
  [0xb5, 0xde, 0x2b],
  [0xfd, 0xe7, 0x25],
];

/** Map t in [0, 1] to an RGB triple. */
export function viridis(t: number): [number, number, number] {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (VIRIDIS_ANCHORS.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, VIRIDIS_ANCHORS.length - 1);
  const f = pos - lo;
  const a = VIRIDIS_ANCHORS[lo];
  const b = VIRIDIS_ANCHORS[hi];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}

export function viridisHex(t: number): string {
  const [r, g, b] = viridis(t);
  return `#${((1 << 24) | (r << 16) | (g << 8) | b).toString(16).slice(1)}`;
}

/** Distinct line colors, one per series cohort. */
export const SERIES_COLORS = ["#1b6ca8", "#d1495b", "#3a7d44"];

/** Dash patterns to distinguish a second grouping dimension. */
export const SERIES_DASHES = ["", "6 3", "2 3"];
