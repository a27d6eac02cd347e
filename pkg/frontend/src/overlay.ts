/** Gradient overlay view model: badge text and outline colors per cell. */

import type { GradientWireCell } from "./protocol.js";

export type Rgb = readonly [number, number, number];

// Normalized RGB chosen to stay distinguishable for colorblind users.
export const POSITIVE_OUTLINE: Rgb = [0.5, 1.0, 0.5];
export const NEGATIVE_OUTLINE: Rgb = [1.0, 0.5, 0.5];

export function outlineCss(rgb: Rgb): string {
  return `rgb(${rgb[0] * 100}% ${rgb[1] * 100}% ${rgb[2] * 100}%)`;
}

export interface OverlayBadge {
  col: number;
  row: number;
  text: string;
  outline: Rgb;
}

/**
 * Badge for one sweep cell, or null when nothing should be shown
 * (unchanged cells and cells that cannot be edited).
 */
export function badgeFor(cell: GradientWireCell): OverlayBadge | null {
  if (cell.d !== undefined) {
    return {
      col: cell.col,
      row: cell.row,
      text: cell.d > 0 ? `+${cell.d}` : `${cell.d}`,
      outline: cell.d > 0 ? POSITIVE_OUTLINE : NEGATIVE_OUTLINE,
    };
  }
  if (cell.x) {
    return { col: cell.col, row: cell.row, text: "X", outline: NEGATIVE_OUTLINE };
  }
  if (cell.b) {
    return { col: cell.col, row: cell.row, text: "B", outline: NEGATIVE_OUTLINE };
  }
  if (cell.s !== undefined) {
    return { col: cell.col, row: cell.row, text: "?", outline: POSITIVE_OUTLINE };
  }
  return null;
}
