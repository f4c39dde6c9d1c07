// End-to-end acceptance against a live service running the scripted
// backend: posting the document-retrieval query renders a transcript, a
// seven-node trace path, and one step-response chart; answering the
// format prompt with "pdf" resumes and completes the turn.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/client.js";
import { renderPlot } from "../src/charts.js";
import { applyEvent, emptyView, SessionView } from "../src/state.js";
import { renderTraceSvg } from "../src/traceview.js";
import { renderTranscript } from "../src/transcript.js";

const PORT = 8900 + (process.pid % 90);
const BASE = `http://127.0.0.1:${PORT}`;

const QUERY_1 =
  "Retrieve the Transfer Function of the system from the provided document, " +
  "Sys_Control.pdf. Then, plot its step response to assess the system's stability.";

const GOLDEN_PATH = [
  "Supervisor", "Retriever", "Planner", "Controller", "Critic", "Memory", "Communicator",
];

const BOOT = `
import tempfile
import uvicorn
import agentctl
from agentctl.auxtools import ingest_corpus
from agentctl.backends import ScriptedBackend
from agentctl.service import create_app

fixtures = agentctl.fixtures_dir()
app = create_app(
    backend=ScriptedBackend.from_file(str(fixtures / "appendix_c.script")),
    corpus_index=ingest_corpus([str(fixtures / "corpus")]),
    output_dir=tempfile.mkdtemp(),
)
uvicorn.run(app, host="127.0.0.1", port=${PORT}, log_level="warning")
`;

let service: ChildProcess;

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/sessions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({}),
      });
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    await sleep(200);
  }
  throw new Error("service did not come up in time");
}

beforeAll(async () => {
  service = spawn("python3", ["-c", BOOT], { stdio: ["ignore", "inherit", "inherit"] });
  await waitForService();
}, 40_000);

afterAll(() => {
  service?.kill();
});

describe("console against a live scripted service", () => {
  it(
    "runs the retrieval query end to end with a format answer",
    async () => {
      const client = new ServiceClient(BASE);
      const sessionId = await client.createSession();
      let view: SessionView = emptyView(sessionId);
      const abort = new AbortController();
      const streaming = client.streamEvents(sessionId, {
        signal: abort.signal,
        onEvent: (event) => {
          view = applyEvent(view, event);
        },
      });

      await client.postMessage(sessionId, QUERY_1);

      const deadline = Date.now() + 30_000;
      let answered = false;
      while (view.finalAnswer === null && Date.now() < deadline) {
        if (view.pendingQuestion && !answered) {
          expect(view.pendingQuestion).toContain("format");
          answered = await client.answerQuestion(sessionId, "pdf");
        }
        await sleep(50);
      }
      abort.abort();
      await streaming;

      // The turn completed after the "pdf" answer.
      expect(answered).toBe(true);
      expect(view.finalAnswer).not.toBeNull();
      expect(view.finalAnswer).toContain("unstable");

      // Transcript rendered with content from the stream.
      const transcriptHtml = renderTranscript(view.transcript);
      expect(view.transcript.length).toBeGreaterThan(10);
      expect(transcriptHtml).toContain("entry-final_answer");
      expect(transcriptHtml).toContain("Retriever");

      // Trace path: all seven golden nodes highlighted in order.
      expect(view.tracePath).toEqual(GOLDEN_PATH);
      const traceSvg = renderTraceSvg(view.tracePath);
      expect(traceSvg.match(/class="node visited"/g) ?? []).toHaveLength(7);

      // Exactly one step-response chart in the gallery.
      const stepPlots = view.plots.filter((p) => p.kind === "step");
      expect(stepPlots).toHaveLength(1);
      const chart = renderPlot(stepPlots[0]);
      expect(chart).toContain("<svg");
      expect(chart).toContain("<polyline");

      // The streamed event count matches the stored trace.
      const trace = await client.getTrace(sessionId);
      const storedEvents = trace.trim().split("\n").length - 1; // header line
      expect(storedEvents).toBe(view.cursor + 1);
    },
    60_000,
  );
});
