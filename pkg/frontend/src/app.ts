// Browser bootstrap: wires the service client, the state reducer, and the
// renderers to the page. All computation beyond rendering happens server
// side; every number shown here arrived in a session event.

import { ServiceClient } from "./client.js";
import { renderPlot } from "./charts.js";
import { applyEvent, emptyView, SessionView } from "./state.js";
import { renderTraceSvg } from "./traceview.js";
import { renderTranscript } from "./transcript.js";
import { SessionEvent } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

class ConsoleApp {
  private client!: ServiceClient;
  private view: SessionView = emptyView("");
  private abort: AbortController | null = null;

  async connect(): Promise<void> {
    const base = el<HTMLInputElement>("service-url").value.trim();
    this.client = new ServiceClient(base);
    const sessionId = await this.client.createSession();
    this.view = emptyView(sessionId);
    el("session-label").textContent = `session ${sessionId}`;
    this.abort?.abort();
    this.abort = new AbortController();
    void this.client.streamEvents(sessionId, {
      signal: this.abort.signal,
      onEvent: (event) => this.onEvent(event),
      onConnected: () => this.setBanner(null),
      onRetry: (attempt) => this.setBanner(`connection lost, retrying (#${attempt})…`),
    });
    this.render();
  }

  private setBanner(text: string | null): void {
    const banner = el("banner");
    banner.textContent = text ?? "";
    banner.style.display = text ? "block" : "none";
  }

  private onEvent(event: SessionEvent): void {
    const before = this.view;
    this.view = applyEvent(this.view, event);
    if (this.view !== before) this.render();
  }

  async send(): Promise<void> {
    const input = el<HTMLInputElement>("query");
    const text = input.value.trim();
    if (!text || !this.view.sessionId) return;
    input.value = "";
    try {
      await this.client.postMessage(this.view.sessionId, text);
    } catch (error) {
      this.setBanner(String(error));
    }
  }

  async answer(): Promise<void> {
    const input = el<HTMLInputElement>("reply");
    const reply = input.value.trim();
    if (!reply) return;
    input.value = "";
    await this.client.answerQuestion(this.view.sessionId, reply);
  }

  private render(): void {
    el("transcript").innerHTML = renderTranscript(this.view.transcript);
    el("transcript").scrollTop = el("transcript").scrollHeight;
    el("trace").innerHTML = renderTraceSvg(this.view.tracePath);
    el("plots").innerHTML = this.view.plots.map((p) => renderPlot(p)).join("\n");
    const ask = el("ask");
    if (this.view.pendingQuestion) {
      ask.style.display = "block";
      el("question-text").textContent = this.view.pendingQuestion;
    } else {
      ask.style.display = "none";
    }
    el("final").textContent = this.view.finalAnswer ?? "";
  }
}

const app = new ConsoleApp();
el("connect").addEventListener("click", () => void app.connect());
el("send").addEventListener("click", () => void app.send());
el<HTMLInputElement>("query").addEventListener("keydown", (e) => {
  if (e.key === "Enter") void app.send();
});
el("reply-send").addEventListener("click", () => void app.answer());
el<HTMLInputElement>("reply").addEventListener("keydown", (e) => {
  if (e.key === "Enter") void app.answer();
});
