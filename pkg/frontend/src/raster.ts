/** A tiny software canvas: RGB pixel buffer with lines, rects and bitmap text. */

import { ADVANCE, GLYPH_H, GLYPH_W, glyph } from "./font.js";

export type Rgb = [number, number, number];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.data[3 * i] = background[0];
      this.data[3 * i + 1] = background[1];
      this.data[3 * i + 2] = background[2];
    }
  }

  px(x: number, y: number, rgb: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const at = 3 * (y * this.width + x);
    this.data[at] = rgb[0];
    this.data[at + 1] = rgb[1];
    this.data[at + 2] = rgb[2];
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: Rgb): void {
    const x1 = Math.max(0, Math.round(x));
    const y1 = Math.max(0, Math.round(y));
    const x2 = Math.min(this.width, Math.round(x + w));
    const y2 = Math.min(this.height, Math.round(y + h));
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.px(xx, yy, rgb);
      }
    }
  }

  rect(x: number, y: number, w: number, h: number, rgb: Rgb): void {
    this.line(x, y, x + w, y, rgb);
    this.line(x, y + h, x + w, y + h, rgb);
    this.line(x, y, x, y + h, rgb);
    this.line(x + w, y, x + w, y + h, rgb);
  }

  /** Bresenham segment, integer endpoints. */
  line(x0: number, y0: number, x1: number, y1: number, rgb: Rgb): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.px(ax, ay, rgb);
      if (ax === bx && ay === by) break;
      const doubled = 2 * err;
      if (doubled >= dy) {
        err += dy;
        ax += sx;
      }
      if (doubled <= dx) {
        err += dx;
        ay += sy;
      }
    }
  }

  text(x: number, y: number, content: string, rgb: Rgb): void {
    let cursor = Math.round(x);
    const top = Math.round(y);
    for (const char of content) {
      const rows = glyph(char);
      for (let row = 0; row < GLYPH_H; row++) {
        for (let col = 0; col < GLYPH_W; col++) {
          if ((rows[row] >> (GLYPH_W - 1 - col)) & 1) {
            this.px(cursor + col, top + row, rgb);
          }
        }
      }
      cursor += ADVANCE;
    }
  }

  textRight(x: number, y: number, content: string, rgb: Rgb): void {
    this.text(x - content.length * ADVANCE + 1, y, content, rgb);
  }

  textCentered(x: number, y: number, content: string, rgb: Rgb): void {
    this.text(x - Math.floor((content.length * ADVANCE) / 2), y, content, rgb);
  }
}

/** Five-anchor approximation of a perceptually ordered colormap. */
const STOPS: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function colormap(t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const span = clamped * (STOPS.length - 1);
  const lo = Math.min(STOPS.length - 2, Math.floor(span));
  const frac = span - lo;
  const a = STOPS[lo];
  const b = STOPS[lo + 1];
  return [
    Math.round(a[0] + frac * (b[0] - a[0])),
    Math.round(a[1] + frac * (b[1] - a[1])),
    Math.round(a[2] + frac * (b[2] - a[2])),
  ];
}
