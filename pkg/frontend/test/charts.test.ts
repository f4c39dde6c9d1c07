import { describe, expect, it } from "vitest";

import { renderPlot } from "../src/charts.js";

const stepPayload = {
  kind: "step",
  series: [{ label: "step response", x: [0, 0.5, 1.0, 1.5], y: [0, 0.4, 0.7, 0.9] }],
  axes: { x_label: "time (s)", y_label: "output", x_scale: "linear" },
};

describe("renderPlot", () => {
  it("renders a step payload as one polyline series", () => {
    const svg = renderPlot(stepPayload);
    expect(svg).toContain("<svg");
    expect(svg.match(/<polyline/g) ?? []).toHaveLength(1);
    expect(svg).toContain('data-label="step response"');
    expect(svg).toContain("time (s)");
  });

  it("renders bode as two linked log charts", () => {
    const omega = [0.01, 0.1, 1, 10, 100];
    const svg = renderPlot({
      kind: "bode",
      series: [
        { label: "magnitude (dB)", x: omega, y: [0, -0.04, -3, -20, -40] },
        { label: "phase (deg)", x: omega, y: [-0.6, -5.7, -45, -84, -89] },
      ],
      axes: { x_label: "frequency (rad/s)", y_label: "", x_scale: "log" },
    });
    expect(svg.match(/data-subchart=/g) ?? []).toHaveLength(2);
    expect(svg.match(/<polyline/g) ?? []).toHaveLength(2);
    // log ticks at powers of ten
    expect(svg).toContain(">0.01<");
    expect(svg).toContain(">100<");
  });

  it("renders nyquist from complex pairs", () => {
    const svg = renderPlot({
      kind: "nyquist",
      series: [
        {
          label: "G(jw)",
          x: [0.1, 1, 10],
          complex: [[0.99, -0.1], [0.5, -0.5], [0.01, -0.1]],
        },
      ],
      axes: { x_label: "Re", y_label: "Im", x_scale: "linear" },
    });
    expect(svg.match(/<polyline/g) ?? []).toHaveLength(1);
    expect(svg).toContain('data-label="G(jw)"');
  });

  it("renders pole-zero maps with distinct markers", () => {
    const svg = renderPlot({
      kind: "pzmap",
      series: [
        { label: "poles", x: [], complex: [[-1, 0], [3, 0]] },
        { label: "zeros", x: [], complex: [[-3, 0]] },
      ],
      axes: { x_label: "Re", y_label: "Im", x_scale: "linear" },
    });
    expect(svg.match(/<path class="marker" data-label="poles"/g) ?? []).toHaveLength(2);
    expect(svg.match(/<circle class="marker" data-label="zeros"/g) ?? []).toHaveLength(1);
  });

  it("skips non-finite samples", () => {
    const svg = renderPlot({
      kind: "step",
      series: [{ label: "y", x: [0, 1, 2], y: [0, null, 1] }],
      axes: { x_label: "t", y_label: "y", x_scale: "linear" },
    });
    const points = svg.match(/points="([^"]*)"/)![1].trim().split(" ");
    expect(points).toHaveLength(2);
  });

  it("falls back to a placeholder card with the raw payload", () => {
    const html = renderPlot({ bogus: true });
    expect(html).toContain("plot-error");
    expect(html).toContain("Unrecognized plot payload");
    expect(html).toContain("bogus");
    const escaped = renderPlot({ kind: "<script>", series: "nope" });
    expect(escaped).not.toContain("<script>");
  });
});
