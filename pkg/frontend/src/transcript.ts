// HTML rendering for transcript entries (string output, DOM-free).

import { TranscriptEntry } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const KIND_LABELS: Record<string, string> = {
  agent_started: "▶",
  thought: "💭",
  tool_call: "🔧",
  observation: "👁",
  plot_payload: "📈",
  question_to_user: "❓",
  critic_verdict: "⚖",
  final_answer: "✔",
  error: "⚠",
};

export function renderEntry(entry: TranscriptEntry): string {
  const badge = KIND_LABELS[entry.kind] ?? "·";
  const agent = entry.agent ? `<span class="agent">${escapeHtml(entry.agent)}</span>` : "";
  return (
    `<div class="entry entry-${entry.kind}" data-seq="${entry.seq}">` +
    `<span class="badge">${badge}</span>${agent}` +
    `<span class="text">${escapeHtml(entry.text)}</span></div>`
  );
}

export function renderTranscript(entries: TranscriptEntry[]): string {
  return entries.map(renderEntry).join("\n");
}
