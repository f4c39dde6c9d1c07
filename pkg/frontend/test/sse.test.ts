import { describe, expect, it } from "vitest";

import { SSEParser } from "../src/sse.js";

describe("SSEParser", () => {
  it("parses complete frames with ids", () => {
    const parser = new SSEParser();
    const messages = parser.feed('id: 3\ndata: {"seq": 3}\n\n');
    expect(messages).toEqual([{ id: 3, data: '{"seq": 3}' }]);
  });

  it("reassembles frames split across chunks", () => {
    const parser = new SSEParser();
    expect(parser.feed("id: 1\nda")).toEqual([]);
    expect(parser.feed('ta: {"a": ')).toEqual([]);
    const messages = parser.feed('1}\n\nid: 2\ndata: {"b": 2}\n\n');
    expect(messages).toEqual([
      { id: 1, data: '{"a": 1}' },
      { id: 2, data: '{"b": 2}' },
    ]);
  });

  it("ignores keepalive comments", () => {
    const parser = new SSEParser();
    expect(parser.feed(": keepalive\n\n")).toEqual([]);
    expect(parser.feed(': ping\n\ndata: {"x": 1}\n\n')).toEqual([
      { id: null, data: '{"x": 1}' },
    ]);
  });

  it("joins multi-line data", () => {
    const parser = new SSEParser();
    const messages = parser.feed("data: line one\ndata: line two\n\n");
    expect(messages[0].data).toBe("line one\nline two");
  });
});
