// SVG chart rendering for the shared plot payload schema.
// Pure string output so every renderer is unit-testable without a DOM.

import { isPlotPayload, PlotPayload, PlotSeries } from "./types.js";

const W = 520;
const H = 300;
const MARGIN = { left: 56, right: 16, top: 18, bottom: 38 };

const COLORS = ["#2a7de1", "#e1662a", "#2aa05a", "#8c5fd0", "#c02a50", "#708090"];

interface Scale {
  (value: number): number;
}

function finite(values: (number | null | undefined)[]): number[] {
  return values.filter((v): v is number => typeof v === "number" && isFinite(v));
}

function makeScale(domain: [number, number], range: [number, number], log: boolean): Scale {
  let [d0, d1] = domain;
  if (log) {
    d0 = Math.log10(Math.max(d0, 1e-12));
    d1 = Math.log10(Math.max(d1, 1e-12));
  }
  if (d1 === d0) d1 = d0 + 1;
  const [r0, r1] = range;
  return (value: number) => {
    const v = log ? Math.log10(Math.max(value, 1e-12)) : value;
    return r0 + ((v - d0) / (d1 - d0)) * (r1 - r0);
  };
}

function ticks(lo: number, hi: number, log: boolean, count = 5): number[] {
  if (log) {
    const result: number[] = [];
    const lowExp = Math.ceil(Math.log10(Math.max(lo, 1e-12)));
    const highExp = Math.floor(Math.log10(Math.max(hi, 1e-12)));
    for (let e = lowExp; e <= highExp; e++) result.push(10 ** e);
    return result.length ? result : [lo, hi];
  }
  const step = (hi - lo) / (count - 1);
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

function fmtTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-2) return value.toExponential(0);
  return String(Math.round(value * 100) / 100);
}

function polylinePoints(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const points: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    points.push(`${sx(xs[i]).toFixed(1)},${sy(ys[i]).toFixed(1)}`);
  }
  return points.join(" ");
}

interface XYSeries {
  label: string;
  xs: number[];
  ys: number[];
}

function xySeries(series: PlotSeries): XYSeries {
  if (series.complex) {
    const xs: number[] = [];
    const ys: number[] = [];
    for (const pair of series.complex) {
      if (pair[0] !== null && pair[1] !== null && isFinite(pair[0]!) && isFinite(pair[1]!)) {
        xs.push(pair[0]!);
        ys.push(pair[1]!);
      }
    }
    return { label: series.label, xs, ys };
  }
  const xs: number[] = [];
  const ys: number[] = [];
  const rawY = series.y ?? [];
  for (let i = 0; i < series.x.length; i++) {
    const x = series.x[i];
    const y = rawY[i];
    if (typeof x === "number" && typeof y === "number" && isFinite(x) && isFinite(y)) {
      xs.push(x);
      ys.push(y);
    }
  }
  return { label: series.label, xs, ys };
}

function chartFrame(
  data: XYSeries[],
  options: { xLabel: string; yLabel: string; xLog: boolean; markers?: string[] },
  yOffset = 0,
  height = H,
): string {
  const allX = data.flatMap((s) => s.xs);
  const allY = data.flatMap((s) => s.ys);
  if (allX.length === 0) return `<text x="20" y="${yOffset + 30}">no finite samples</text>`;
  const xLo = Math.min(...allX);
  const xHi = Math.max(...allX);
  const yLo = Math.min(...allY, 0);
  const yHi = Math.max(...allY);
  const pad = (yHi - yLo) * 0.08 || 1;
  const sx = makeScale([xLo, xHi], [MARGIN.left, W - MARGIN.right], options.xLog);
  const sy = makeScale([yLo - pad, yHi + pad], [yOffset + height - MARGIN.bottom, yOffset + MARGIN.top], false);

  const parts: string[] = [];
  const axisY = yOffset + height - MARGIN.bottom;
  parts.push(`<line class="axis" x1="${MARGIN.left}" y1="${axisY}" x2="${W - MARGIN.right}" y2="${axisY}"/>`);
  parts.push(`<line class="axis" x1="${MARGIN.left}" y1="${yOffset + MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}"/>`);
  for (const t of ticks(xLo, xHi, options.xLog)) {
    const x = sx(t);
    parts.push(`<line class="tick" x1="${x}" y1="${axisY}" x2="${x}" y2="${axisY + 4}"/>`);
    parts.push(`<text class="tick-label" x="${x}" y="${axisY + 16}">${fmtTick(t)}</text>`);
  }
  for (const t of ticks(yLo - pad, yHi + pad, false)) {
    const y = sy(t);
    parts.push(`<line class="tick" x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left}" y2="${y}"/>`);
    parts.push(`<text class="tick-label y" x="${MARGIN.left - 8}" y="${y + 4}">${fmtTick(t)}</text>`);
  }
  parts.push(`<text class="axis-label" x="${(MARGIN.left + W - MARGIN.right) / 2}" y="${axisY + 32}">${options.xLabel}</text>`);
  parts.push(`<text class="axis-label" transform="rotate(-90 14 ${yOffset + height / 2})" x="14" y="${yOffset + height / 2}">${options.yLabel}</text>`);

  data.forEach((series, i) => {
    const color = COLORS[i % COLORS.length];
    const marker = options.markers?.[i] ?? "line";
    if (marker === "line") {
      parts.push(
        `<polyline class="series" fill="none" stroke="${color}" stroke-width="2" ` +
          `data-label="${series.label}" points="${polylinePoints(series.xs, series.ys, sx, sy)}"/>`,
      );
    } else {
      for (let j = 0; j < series.xs.length; j++) {
        const x = sx(series.xs[j]);
        const y = sy(series.ys[j]);
        if (marker === "x") {
          parts.push(
            `<path class="marker" data-label="${series.label}" stroke="${color}" stroke-width="2" ` +
              `d="M${x - 5},${y - 5} L${x + 5},${y + 5} M${x - 5},${y + 5} L${x + 5},${y - 5}"/>`,
          );
        } else {
          parts.push(
            `<circle class="marker" data-label="${series.label}" stroke="${color}" fill="none" ` +
              `stroke-width="2" cx="${x}" cy="${y}" r="5"/>`,
          );
        }
      }
    }
  });
  return parts.join("\n");
}

const SVG_STYLE = `<style>
  .axis { stroke: #444; stroke-width: 1; }
  .tick { stroke: #444; }
  .tick-label { font: 10px sans-serif; text-anchor: middle; fill: #333; }
  .tick-label.y { text-anchor: end; }
  .axis-label { font: 11px sans-serif; text-anchor: middle; fill: #333; }
  .chart-title { font: bold 12px sans-serif; fill: #333; }
</style>`;

function svgDocument(body: string, height = H): string {
  return `<svg class="chart" viewBox="0 0 ${W} ${height}" xmlns="http://www.w3.org/2000/svg">${SVG_STYLE}${body}</svg>`;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

// Renders any payload to an SVG chart; malformed payloads come back as a
// placeholder card showing the raw payload instead of a chart.
export function renderPlot(payload: unknown): string {
  if (!isPlotPayload(payload)) {
    const raw = escapeHtml(JSON.stringify(payload, null, 2) ?? "undefined");
    return `<div class="plot-error"><p>Unrecognized plot payload</p><pre>${raw}</pre></div>`;
  }
  const p = payload as PlotPayload;
  const xLog = p.axes.x_scale === "log";
  if (p.kind === "bode" && p.series.length >= 2) {
    const magnitude = chartFrame([xySeries(p.series[0])], {
      xLabel: "",
      yLabel: p.series[0].label,
      xLog: true,
    });
    const phase = chartFrame([xySeries(p.series[1])], {
      xLabel: p.axes.x_label,
      yLabel: p.series[1].label,
      xLog: true,
    }, H);
    return svgDocument(
      `<g class="subchart" data-subchart="magnitude">${magnitude}</g>` +
        `<g class="subchart" data-subchart="phase">${phase}</g>`,
      2 * H,
    );
  }
  if (p.kind === "pzmap") {
    const markers = p.series.map((s) => (s.label === "poles" ? "x" : "o"));
    const body = chartFrame(p.series.map(xySeries), {
      xLabel: p.axes.x_label,
      yLabel: p.axes.y_label,
      xLog: false,
      markers,
    });
    return svgDocument(body);
  }
  if (p.kind === "nyquist" || p.kind === "rlocus") {
    const body = chartFrame(p.series.map(xySeries), {
      xLabel: p.axes.x_label,
      yLabel: p.axes.y_label,
      xLog: false,
    });
    return svgDocument(body);
  }
  // step / impulse / forced / generic xy data.
  const body = chartFrame(p.series.map(xySeries), {
    xLabel: p.axes.x_label,
    yLabel: p.axes.y_label,
    xLog,
  });
  return svgDocument(`<text class="chart-title" x="${MARGIN.left}" y="12">${escapeHtml(p.kind)}</text>` + body);
}
