// Session view state: a pure reducer over the event stream, so the whole
// console can be exercised headlessly.

import { isNodeName } from "./topology.js";
import { PlotPayload, SessionEvent } from "./types.js";

export interface TranscriptEntry {
  seq: number;
  kind: string;
  agent: string | null;
  text: string;
}

export interface SessionView {
  sessionId: string;
  cursor: number;
  transcript: TranscriptEntry[];
  tracePath: string[];
  plots: PlotPayload[];
  pendingQuestion: string | null;
  finalAnswer: string | null;
}

export function emptyView(sessionId: string): SessionView {
  return {
    sessionId,
    cursor: -1,
    transcript: [],
    tracePath: [],
    plots: [],
    pendingQuestion: null,
    finalAnswer: null,
  };
}

function entryText(event: SessionEvent): string {
  switch (event.kind) {
    case "agent_started":
      return `${event.agent} started`;
    case "tool_call":
      return `${event.agent} called ${event.payload.tool ?? "a tool"}`;
    case "critic_verdict": {
      const sim = Number(event.payload.similarity ?? 0).toFixed(2);
      return event.payload.accepted
        ? `accepted (similarity ${sim})`
        : `rejected (similarity ${sim})`;
    }
    case "plot_payload":
      return `${event.agent} produced a ${event.payload.plot?.kind ?? "plot"} plot`;
    case "error":
      return `${event.payload.error_class ?? "Error"}: ${event.payload.message ?? ""}`;
    default:
      return event.text;
  }
}

// Applies one event in sequence order; stale or duplicate sequence numbers
// (replays after a reconnect) are ignored, keeping the cursor monotone.
export function applyEvent(view: SessionView, event: SessionEvent): SessionView {
  if (event.seq <= view.cursor) return view;
  const next: SessionView = {
    ...view,
    cursor: event.seq,
    transcript: [
      ...view.transcript,
      { seq: event.seq, kind: event.kind, agent: event.agent, text: entryText(event) },
    ],
    tracePath: view.tracePath,
    plots: view.plots,
  };
  switch (event.kind) {
    case "agent_started":
      if (event.agent && isNodeName(event.agent)) {
        next.tracePath = [...view.tracePath, event.agent];
      }
      break;
    case "plot_payload":
      if (event.payload.plot) {
        next.plots = [...view.plots, event.payload.plot as PlotPayload];
      }
      break;
    case "question_to_user":
      next.pendingQuestion = event.text;
      break;
    case "observation":
      // An answered question is no longer pending once the run moves on.
      if (view.pendingQuestion !== null) next.pendingQuestion = null;
      break;
    case "final_answer":
      next.finalAnswer = event.text;
      next.pendingQuestion = null;
      break;
  }
  return next;
}

export function applyAll(view: SessionView, events: SessionEvent[]): SessionView {
  return events.reduce(applyEvent, view);
}
