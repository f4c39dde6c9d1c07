// Incremental server-sent-events parser. Feed raw chunks in, get
// complete events out; comment lines (keepalives) are dropped.

export interface SSEMessage {
  id: number | null;
  data: string;
}

export class SSEParser {
  private buffer = "";

  feed(chunk: string): SSEMessage[] {
    this.buffer += chunk;
    const messages: SSEMessage[] = [];
    let boundary: number;
    while ((boundary = this.buffer.indexOf("\n\n")) >= 0) {
      const block = this.buffer.slice(0, boundary);
      this.buffer = this.buffer.slice(boundary + 2);
      const message = parseBlock(block);
      if (message !== null) messages.push(message);
    }
    return messages;
  }
}

function parseBlock(block: string): SSEMessage | null {
  let id: number | null = null;
  const dataLines: string[] = [];
  for (const line of block.split("\n")) {
    if (line.startsWith(":")) continue; // comment / keepalive
    if (line.startsWith("id:")) {
      const parsed = Number(line.slice(3).trim());
      if (!Number.isNaN(parsed)) id = parsed;
    } else if (line.startsWith("data:")) {
      dataLines.push(line.slice(5).trimStart());
    }
  }
  if (dataLines.length === 0) return null;
  return { id, data: dataLines.join("\n") };
}
