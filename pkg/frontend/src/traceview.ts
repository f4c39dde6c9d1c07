// SVG rendering of the node network with the visited path highlighted.

import { EDGES, NODE_POSITIONS, NodeName, NODES, visitedEdges } from "./topology.js";

const WIDTH = 800;
const HEIGHT = 450;
const NODE_RX = 52;
const NODE_RY = 22;

function edgeLine(a: NodeName, b: NodeName, cls: string, label?: string): string {
  const pa = NODE_POSITIONS[a];
  const pb = NODE_POSITIONS[b];
  const midX = (pa.x + pb.x) / 2;
  const midY = (pa.y + pb.y) / 2;
  const text =
    label === undefined
      ? ""
      : `<text class="edge-order" x="${midX}" y="${midY - 4}">${label}</text>`;
  return (
    `<line class="${cls}" x1="${pa.x}" y1="${pa.y}" x2="${pb.x}" y2="${pb.y}"/>` + text
  );
}

export function renderTraceSvg(path: string[]): string {
  const valid = path.filter((name): name is NodeName =>
    (NODES as readonly string[]).includes(name),
  );
  const visited = new Set(valid);
  const parts: string[] = [];
  parts.push(
    `<svg class="trace-graph" viewBox="0 0 ${WIDTH} ${HEIGHT}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    `<style>
      .edge { stroke: #c8cdd4; stroke-width: 1.5; }
      .edge-visited { stroke: #2a7de1; stroke-width: 3; }
      .edge-order { fill: #2a7de1; font: bold 12px sans-serif; text-anchor: middle; }
      .node ellipse { fill: #f4f6f8; stroke: #9aa3ad; stroke-width: 1.5; }
      .node.visited ellipse { fill: #dcebfd; stroke: #2a7de1; stroke-width: 2.5; }
      .node text { font: 13px sans-serif; text-anchor: middle; dominant-baseline: middle; }
    </style>`,
  );
  for (const [a, b] of EDGES) {
    parts.push(edgeLine(a, b, "edge"));
  }
  visitedEdges(valid).forEach(([a, b], i) => {
    parts.push(edgeLine(a as NodeName, b as NodeName, "edge-visited", String(i + 1)));
  });
  for (const name of NODES) {
    const pos = NODE_POSITIONS[name];
    const cls = visited.has(name) ? "node visited" : "node";
    parts.push(
      `<g class="${cls}" data-node="${name}">` +
        `<ellipse cx="${pos.x}" cy="${pos.y}" rx="${NODE_RX}" ry="${NODE_RY}"/>` +
        `<text x="${pos.x}" y="${pos.y}">${name}</text>` +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}
