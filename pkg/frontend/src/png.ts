/**
 * Self-contained PNG backend: an RGBA raster with Bresenham strokes, a tiny
 * 5x7 bitmap font for labels, and a minimal PNG encoder on top of zlib.
 */

import * as zlib from "zlib";

import { DrawList } from "./figures";
import { makeProjector } from "./geometry";

class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) {
      return;
    }
    const at = (yi * this.width + xi) * 4;
    this.data[at] = rgb[0];
    this.data[at + 1] = rgb[1];
    this.data[at + 2] = rgb[2];
    this.data[at + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(xa, ya, rgb);
      if (xa === xb && ya === yb) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }
}

// 5x7 font rows, most significant bit = leftmost column
const FONT: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  "=": [0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  " ": [0, 0, 0, 0, 0, 0, 0],
  t: [0x08, 0x08, 0x1e, 0x08, 0x08, 0x09, 0x06],
  x: [0x00, 0x00, 0x11, 0x0a, 0x04, 0x0a, 0x11],
  p: [0x00, 0x00, 0x1e, 0x11, 0x1e, 0x10, 0x10],
  s: [0x00, 0x00, 0x0f, 0x10, 0x0e, 0x01, 0x1e],
  l: [0x0c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  i: [0x04, 0x00, 0x0c, 0x04, 0x04, 0x04, 0x0e],
  c: [0x00, 0x00, 0x0e, 0x10, 0x10, 0x11, 0x0e],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
};

function drawText(img: Raster, text: string, x: number, y: number, rgb: [number, number, number]): void {
  let cursor = Math.round(x);
  for (const ch of text) {
    const glyph = FONT[ch] ?? FONT[" "];
    for (let row = 0; row < 7; row++) {
      for (let col = 0; col < 5; col++) {
        if ((glyph[row] >> (4 - col)) & 1) {
          img.set(cursor + col, Math.round(y) + row, rgb);
        }
      }
    }
    cursor += 6;
  }
}

function hexToRgb(hex: string): [number, number, number] {
  const v = parseInt(hex.replace("#", ""), 16);
  return [(v >> 16) & 255, (v >> 8) & 255, v & 255];
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const byte of buf) {
    c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const len = Buffer.alloc(4);
  len.writeUInt32BE(payload.length, 0);
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(payload)]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([len, body, tail]);
}

export function encodePng(img: Raster): Buffer {
  const signature = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(img.width, 0);
  ihdr.writeUInt32BE(img.height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  ihdr[10] = 0;
  ihdr[11] = 0;
  ihdr[12] = 0;
  const stride = img.width * 4;
  const raw = Buffer.alloc((stride + 1) * img.height);
  for (let y = 0; y < img.height; y++) {
    raw[y * (stride + 1)] = 0; // filter: none
    Buffer.from(img.data.buffer, y * stride, stride).copy(raw, y * (stride + 1) + 1);
  }
  const idat = zlib.deflateSync(raw, { level: 6 });
  return Buffer.concat([
    signature,
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function renderPng(draw: DrawList): Buffer {
  const proj = makeProjector(draw.bounds);
  const img = new Raster(proj.width, proj.height);
  const frame: [number, number, number] = [68, 68, 68];
  const m = proj.margin;
  img.line(m, m, proj.width - m, m, frame);
  img.line(m, proj.height - m, proj.width - m, proj.height - m, frame);
  img.line(m, m, m, proj.height - m, frame);
  img.line(proj.width - m, m, proj.width - m, proj.height - m, frame);

  for (const curve of draw.curves) {
    const rgb = hexToRgb(curve.color);
    const px = curve.points.map(([x, p]) => proj.toPx(x, p));
    for (let i = 1; i < px.length; i++) {
      if (curve.dash && curve.dash.length > 0 && i % 4 === 3) {
        continue; // crude dash pattern: skip every fourth segment
      }
      img.line(px[i - 1][0], px[i - 1][1], px[i][0], px[i][1], rgb);
    }
  }
  for (const group of draw.markers) {
    const rgb = hexToRgb(group.color);
    for (const [x, p] of group.points) {
      const [cx, cy] = proj.toPx(x, p);
      for (let a = 0; a < 16; a++) {
        img.set(cx + 4 * Math.cos((a * Math.PI) / 8), cy + 4 * Math.sin((a * Math.PI) / 8), rgb);
      }
    }
  }
  draw.legend.forEach((entry, i) => {
    const rgb = hexToRgb(entry.color);
    const ly = m + 14 + i * 16;
    img.line(m + 8, ly, m + 36, ly, rgb);
    drawText(img, entry.label, m + 42, ly - 4, [20, 20, 20]);
  });
  drawText(img, draw.axesLabels[0].replace(/[^ -~]/g, "x"), proj.width / 2, proj.height - m / 2, [20, 20, 20]);
  drawText(img, draw.axesLabels[1].replace(/[^ -~]/g, "p"), m / 3, proj.height / 2, [20, 20, 20]);
  return encodePng(img);
}
