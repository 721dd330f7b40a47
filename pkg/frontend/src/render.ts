import { HistRow, totalSamples } from "./csv.js";

const WIDTH = 720;
const HEIGHT = 440;
const MARGIN = { top: 40, right: 20, bottom: 48, left: 64 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const SERIES_COLORS = ["#4878a8", "#e07b39"];

/** Fixed-precision coordinate formatting keeps output byte-stable. */
function fmt(v: number): string {
  return String(Math.round(v * 10000) / 10000);
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const unit = norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10;
  return unit * mag;
}

interface Frame {
  x: (lineCount: number) => number;
  y: (value: number) => number;
  barWidth: number;
  parts: string[];
}

/** Shared axes, ticks, and title; bars are appended by the callers. */
function makeFrame(lcMin: number, lcMax: number, yMax: number,
                   yLabel: string, title: string | undefined): Frame {
  const span = lcMax - lcMin + 1;
  const x = (lc: number) =>
    MARGIN.left + ((lc - lcMin + 0.5) / span) * PLOT_W;
  const yTop = niceStep(yMax / 5) * Math.ceil(yMax / niceStep(yMax / 5));
  const y = (v: number) => MARGIN.top + PLOT_H * (1 - v / yTop);
  const barWidth = (PLOT_W / span) * 0.85;

  const parts: string[] = [];
  parts.push(`<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (title) {
    parts.push(`<text x="${WIDTH / 2}" y="24" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="16">${esc(title)}</text>`);
  }

  const yStep = niceStep(yMax / 5);
  for (let v = 0; v <= yTop + yStep / 2; v += yStep) {
    const yy = y(v);
    parts.push(`<line x1="${MARGIN.left}" y1="${fmt(yy)}" ` +
      `x2="${WIDTH - MARGIN.right}" y2="${fmt(yy)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${fmt(yy + 4)}" text-anchor="end" ` +
      `font-family="sans-serif" font-size="11">${fmt(v)}</text>`);
  }

  const xStep = Math.max(1, Math.round(niceStep(span / 12)));
  for (let lc = Math.ceil(lcMin / xStep) * xStep; lc <= lcMax; lc += xStep) {
    const xx = x(lc);
    parts.push(`<line x1="${fmt(xx)}" y1="${MARGIN.top + PLOT_H}" ` +
      `x2="${fmt(xx)}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(xx)}" y="${MARGIN.top + PLOT_H + 20}" ` +
      `text-anchor="middle" font-family="sans-serif" font-size="11">${lc}</text>`);
  }

  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top + PLOT_H}" ` +
    `x2="${WIDTH - MARGIN.right}" y2="${MARGIN.top + PLOT_H}" stroke="#333"/>`);
  parts.push(`<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 10}" ` +
    `text-anchor="middle" font-family="sans-serif" font-size="13">line count</text>`);
  parts.push(`<text x="18" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" ` +
    `font-family="sans-serif" font-size="13" ` +
    `transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${esc(yLabel)}</text>`);

  return { x, y, barWidth, parts };
}

function bars(frame: Frame, rows: HistRow[], value: (r: HistRow) => number,
              color: string, opacity: number, cls: string): string[] {
  const out: string[] = [];
  const base = MARGIN.top + PLOT_H;
  for (const r of rows) {
    const v = value(r);
    const yy = frame.y(v);
    out.push(`<rect class="${cls}" x="${fmt(frame.x(r.lineCount) - frame.barWidth / 2)}" ` +
      `y="${fmt(yy)}" width="${fmt(frame.barWidth)}" height="${fmt(base - yy)}" ` +
      `fill="${color}" fill-opacity="${opacity}"/>`);
  }
  return out;
}

function wrap(parts: string[]): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
    parts.join("\n") + "\n</svg>\n";
}

export function renderHistogram(rows: HistRow[], title?: string): string {
  const lcMin = rows[0].lineCount;
  const lcMax = rows[rows.length - 1].lineCount;
  const yMax = Math.max(...rows.map((r) => r.frequency));
  const frame = makeFrame(lcMin, lcMax, yMax, "frequency", title);
  frame.parts.push(...bars(frame, rows, (r) => r.frequency,
    SERIES_COLORS[0], 1, "bar"));
  return wrap(frame.parts);
}

/** Two distributions on shared axes, each normalized to relative frequency
 * so differently sized samples compare by shape. */
export function renderOverlay(allRows: HistRow[], smoothRows: HistRow[],
                              title?: string): string {
  const nAll = totalSamples(allRows);
  const nSmooth = totalSamples(smoothRows);
  const lcMin = Math.min(allRows[0].lineCount, smoothRows[0].lineCount);
  const lcMax = Math.max(allRows[allRows.length - 1].lineCount,
    smoothRows[smoothRows.length - 1].lineCount);
  const yMax = Math.max(
    ...allRows.map((r) => r.frequency / nAll),
    ...smoothRows.map((r) => r.frequency / nSmooth));
  const frame = makeFrame(lcMin, lcMax, yMax, "relative frequency", title);
  frame.parts.push(...bars(frame, allRows, (r) => r.frequency / nAll,
    SERIES_COLORS[0], 0.55, "bar-all"));
  frame.parts.push(...bars(frame, smoothRows, (r) => r.frequency / nSmooth,
    SERIES_COLORS[1], 0.55, "bar-smooth"));

  const lx = WIDTH - MARGIN.right - 130;
  const ly = MARGIN.top + 8;
  frame.parts.push(`<rect x="${lx}" y="${ly}" width="14" height="14" ` +
    `fill="${SERIES_COLORS[0]}" fill-opacity="0.55"/>`);
  frame.parts.push(`<text x="${lx + 20}" y="${ly + 12}" font-family="sans-serif" ` +
    `font-size="12">all</text>`);
  frame.parts.push(`<rect x="${lx}" y="${ly + 20}" width="14" height="14" ` +
    `fill="${SERIES_COLORS[1]}" fill-opacity="0.55"/>`);
  frame.parts.push(`<text x="${lx + 20}" y="${ly + 32}" font-family="sans-serif" ` +
    `font-size="12">smooth</text>`);
  return wrap(frame.parts);
}
