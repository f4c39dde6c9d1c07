// HTTP client for the agentctl service: session management, turn posting,
// answers, and a resumable event subscription.

import { SSEParser } from "./sse.js";
import { isSessionEvent, SessionEvent } from "./types.js";

export interface StreamOptions {
  after?: number;
  signal?: AbortSignal;
  onEvent: (event: SessionEvent) => void;
  onRetry?: (attempt: number, error: unknown) => void;
  onConnected?: () => void;
  waitSeconds?: number;
  maxBackoffMs?: number;
}

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  async createSession(overrides: Record<string, unknown> = {}): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ overrides }),
    });
    if (!response.ok) throw new Error(`createSession failed: ${response.status}`);
    const body = await response.json();
    return body.session_id;
  }

  // Fire the turn; its SSE body is drained in the background because the
  // console renders from the session-wide /events subscription instead.
  async postMessage(sessionId: string, text: string): Promise<void> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/sessions/${sessionId}/messages`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text }),
      },
    );
    if (!response.ok) throw new Error(`postMessage failed: ${response.status}`);
    if (response.body) {
      const reader = response.body.getReader();
      void (async () => {
        try {
          while (!(await reader.read()).done) {
            /* discard */
          }
        } catch {
          /* turn stream interrupted; events arrive via /events anyway */
        }
      })();
    }
  }

  async answerQuestion(sessionId: string, reply: string): Promise<boolean> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/sessions/${sessionId}/answers`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ reply }),
      },
    );
    return response.ok;
  }

  async getTrace(sessionId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/trace`);
    if (!response.ok) throw new Error(`getTrace failed: ${response.status}`);
    return response.text();
  }

  async getPendingQuestion(sessionId: string): Promise<string | null> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/question`);
    if (!response.ok) return null;
    const body = await response.json();
    return body.pending ?? null;
  }

  // Long-lived subscription: replays from the last seen sequence number and
  // reconnects with exponential backoff, so a dropped connection loses
  // nothing.  Runs until the signal aborts.
  async streamEvents(sessionId: string, options: StreamOptions): Promise<void> {
    let cursor = options.after ?? -1;
    let attempt = 0;
    const wait = options.waitSeconds ?? 25;
    const maxBackoff = options.maxBackoffMs ?? 10_000;
    while (!options.signal?.aborted) {
      try {
        const url =
          `${this.baseUrl}/sessions/${sessionId}/events?after=${cursor}&wait=${wait}`;
        const response = await this.fetchImpl(url, { signal: options.signal });
        if (!response.ok) throw new Error(`events stream failed: ${response.status}`);
        options.onConnected?.();
        attempt = 0;
        const reader = response.body!.getReader();
        const decoder = new TextDecoder();
        const parser = new SSEParser();
        while (true) {
          const { done, value } = await reader.read();
          if (done) break;
          for (const message of parser.feed(decoder.decode(value, { stream: true }))) {
            const event = JSON.parse(message.data);
            if (isSessionEvent(event) && event.seq > cursor) {
              cursor = event.seq;
              options.onEvent(event);
            }
          }
        }
        // Clean idle close: reconnect immediately from the cursor.
      } catch (error) {
        if (options.signal?.aborted) return;
        attempt += 1;
        options.onRetry?.(attempt, error);
        await sleep(Math.min(500 * 2 ** attempt, maxBackoff));
      }
    }
  }
}
