/**
 * Line-oriented JSON client for the kernel's stdio bridge
 * (`python -m envkit.bridge`).
 *
 * One request per line, one reply per line, correlated by id.  Kernel
 * errors surface as {@link KernelError} carrying the kernel's error class
 * name (e.g. "InvalidAction", "ResetNeeded").
 */

import { spawn, type ChildProcessByStdio } from "node:child_process";
import { createInterface, type Interface } from "node:readline";
import type { Readable, Writable } from "node:stream";

export type Json =
  | null
  | boolean
  | number
  | string
  | Json[]
  | { [key: string]: Json };

/** A kernel-side failure, named after the kernel's error class. */
export class KernelError extends Error {
  constructor(
    public readonly kernelName: string,
    message: string,
  ) {
    super(`${kernelName}: ${message}`);
    this.name = "KernelError";
  }
}

interface Waiter {
  resolve: (value: Json) => void;
  reject: (error: Error) => void;
}

/** Seeds may exceed 2^53, so they always travel as decimal strings. */
export function encodeSeed(seed: number | bigint | undefined): string | undefined {
  if (seed === undefined) return undefined;
  if (typeof seed === "bigint") return seed.toString(10);
  if (!Number.isSafeInteger(seed) || seed < 0) {
    throw new RangeError(`seed must be a non-negative safe integer or bigint, got ${seed}`);
  }
  return seed.toString(10);
}

export class Bridge {
  private readonly proc: ChildProcessByStdio<Writable, Readable, null>;
  private readonly lines: Interface;
  private nextId = 1;
  private readonly pending = new Map<number, Waiter>();
  private closed = false;

  constructor(python: string = process.env.ENVKIT_PYTHON ?? "python3") {
    this.proc = spawn(python, ["-m", "envkit.bridge"], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    this.lines = createInterface({ input: this.proc.stdout });
    this.lines.on("line", (line) => this.onLine(line));
    this.proc.on("exit", () => this.failAll(new Error("bridge process exited")));
  }

  private onLine(line: string): void {
    let reply: {
      id: number;
      ok: boolean;
      result?: Json;
      error?: { name: string; message: string };
    };
    try {
      reply = JSON.parse(line);
    } catch {
      return; // stray non-protocol output
    }
    const waiter = this.pending.get(reply.id);
    if (!waiter) return;
    this.pending.delete(reply.id);
    if (reply.ok) {
      waiter.resolve(reply.result ?? null);
    } else {
      const error = reply.error ?? { name: "UnknownError", message: "no detail" };
      waiter.reject(new KernelError(error.name, error.message));
    }
  }

  private failAll(error: Error): void {
    for (const waiter of this.pending.values()) waiter.reject(error);
    this.pending.clear();
  }

  call(op: string, params: Record<string, Json | undefined> = {}): Promise<Json> {
    if (this.closed) return Promise.reject(new Error("bridge is closed"));
    const id = this.nextId++;
    const request: Record<string, Json> = { id, op };
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined) request[key] = value;
    }
    return new Promise<Json>((resolve, reject) => {
      this.pending.set(id, { resolve, reject });
      this.proc.stdin.write(JSON.stringify(request) + "\n");
    });
  }

  async close(): Promise<void> {
    if (this.closed) return;
    this.closed = true;
    try {
      const id = this.nextId++;
      await new Promise<Json>((resolve, reject) => {
        this.pending.set(id, { resolve, reject });
        this.proc.stdin.write(JSON.stringify({ id, op: "shutdown" }) + "\n");
      });
    } catch {
      // the process may already be gone; termination below still applies
    }
    this.proc.stdin.end();
    await new Promise<void>((resolve) => {
      const timer = setTimeout(() => {
        this.proc.kill();
        resolve();
      }, 5000);
      this.proc.once("exit", () => {
        clearTimeout(timer);
        resolve();
      });
    });
  }
}
