// Event and payload shapes mirrored from the service's wire format.

export type EventKind =
  | "agent_started"
  | "thought"
  | "tool_call"
  | "observation"
  | "plot_payload"
  | "question_to_user"
  | "critic_verdict"
  | "final_answer"
  | "error";

export interface SessionEvent {
  seq: number;
  kind: EventKind;
  agent: string | null;
  text: string;
  payload: Record<string, any>;
  session_id?: string;
}

export interface PlotSeries {
  label: string;
  x: (number | null)[];
  y?: (number | null)[];
  complex?: [number | null, number | null][];
}

export interface PlotPayload {
  kind: string;
  series: PlotSeries[];
  axes: { x_label: string; y_label: string; x_scale: "linear" | "log" };
}

export function isSessionEvent(value: any): value is SessionEvent {
  return (
    value !== null &&
    typeof value === "object" &&
    typeof value.seq === "number" &&
    typeof value.kind === "string"
  );
}

export function isPlotPayload(value: any): value is PlotPayload {
  if (value === null || typeof value !== "object") return false;
  if (typeof value.kind !== "string" || !Array.isArray(value.series)) return false;
  if (value.axes === null || typeof value.axes !== "object") return false;
  for (const series of value.series) {
    if (typeof series.label !== "string" || !Array.isArray(series.x)) return false;
    if (!Array.isArray(series.y) && !Array.isArray(series.complex)) return false;
  }
  return true;
}
