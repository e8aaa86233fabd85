import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, type Interface } from "node:readline";

import type { WireResponse } from "./protocol.js";

export class ServeProtocolError extends Error {
  constructor(
    readonly errorType: string,
    message: string,
  ) {
    super(`${errorType}: ${message}`);
    this.name = "ServeProtocolError";
  }
}

interface PendingRequest {
  resolve: (result: Record<string, unknown>) => void;
  reject: (error: Error) => void;
}

/**
 * Owns a `heurobench serve` child process and matches responses to
 * requests by id. One client means one protocol session: problem and
 * logger handles are only meaningful on the client that created them.
 */
export class ServeClient {
  private readonly child: ChildProcessWithoutNullStreams;
  private readonly lines: Interface;
  private readonly pending = new Map<number, PendingRequest>();
  private nextId = 1;
  private closed = false;
  private stderrTail = "";

  constructor(pythonCommand = "python3") {
    this.child = spawn(pythonCommand, ["-m", "heurobench", "serve"], {
      stdio: ["pipe", "pipe", "pipe"],
    });
    this.child.stderr.on("data", (chunk: Buffer) => {
      this.stderrTail = (this.stderrTail + chunk.toString()).slice(-2000);
    });
    this.lines = createInterface({ input: this.child.stdout });
    this.lines.on("line", (line) => this.dispatch(line));
    this.child.on("exit", () => this.failAllPending());
  }

  private dispatch(line: string): void {
    let response: WireResponse;
    try {
      response = JSON.parse(line) as WireResponse;
    } catch {
      return; // stray non-JSON output; the id map keeps callers safe
    }
    if (response.id === null || !this.pending.has(response.id)) return;
    const waiter = this.pending.get(response.id)!;
    this.pending.delete(response.id);
    if (response.ok) {
      waiter.resolve(response.result ?? {});
    } else {
      const err = response.error ?? { type: "ServeError", message: "unknown error" };
      waiter.reject(new ServeProtocolError(err.type, err.message));
    }
  }

  private failAllPending(): void {
    const tail = this.stderrTail.trim();
    const reason = new Error(
      tail === "" ? "serve process exited" : `serve process exited: ${tail}`,
    );
    for (const waiter of this.pending.values()) waiter.reject(reason);
    this.pending.clear();
  }

  request(op: string, params: Record<string, unknown> = {}): Promise<Record<string, unknown>> {
    if (this.closed) return Promise.reject(new Error("client is closed"));
    const id = this.nextId++;
    const payload = JSON.stringify({ id, op, ...params });
    return new Promise((resolve, reject) => {
      this.pending.set(id, { resolve, reject });
      this.child.stdin.write(payload + "\n", (error) => {
        if (error) {
          this.pending.delete(id);
          reject(error);
        }
      });
    });
  }

  async close(): Promise<void> {
    if (this.closed) return;
    this.closed = true;
    try {
      const id = this.nextId++;
      const done = new Promise<void>((resolve) => {
        this.pending.set(id, { resolve: () => resolve(), reject: () => resolve() });
      });
      this.child.stdin.write(JSON.stringify({ id, op: "shutdown" }) + "\n");
      await Promise.race([done, new Promise((r) => setTimeout(r, 2000))]);
    } finally {
      this.child.stdin.end();
      this.child.kill();
    }
  }
}
