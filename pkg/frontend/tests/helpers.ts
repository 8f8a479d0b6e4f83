/**
 * Test harness: spawns the real backend server (the Python package in this
 * repository) on a free port with an empty store, and tears it down after
 * the suite. The UI is exercised against live HTTP, never against mocks.
 */

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const EDITOR_TOKEN = "ui-test-editor";

export interface Backend {
  baseUrl: string;
  token: string;
  stop: () => Promise<void>;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        probe.close(() => reject(new Error("no port")));
      }
    });
  });
}

export async function startBackend(): Promise<Backend> {
  const dir = mkdtempSync(join(tmpdir(), "termforge-ui-"));
  writeFileSync(
    join(dir, "auth.json"),
    JSON.stringify({ [EDITOR_TOKEN]: { name: "editor", role: "editor" } }),
  );
  writeFileSync(
    join(dir, "pipeline.yaml"),
    [
      "languages: [cs, en]",
      "pivot: cs",
      "workdir: work",
      "store: work/store.json",
      "auth: auth.json",
      "sources:",
      "  cs: []",
      "  en: []",
    ].join("\n"),
  );
  const port = await freePort();
  const child: ChildProcess = spawn(
    "python3",
    ["-m", "termforge.cli", "-c", join(dir, "pipeline.yaml"), "serve", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => (stderr += String(chunk)));

  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30_000;
  for (;;) {
    if (child.exitCode !== null) {
      throw new Error(`backend exited early (${child.exitCode}): ${stderr}`);
    }
    try {
      const response = await fetch(`${baseUrl}/health`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error(`backend did not start in time: ${stderr}`);
    }
    await sleep(50);
  }
  return {
    baseUrl,
    token: EDITOR_TOKEN,
    stop: () =>
      new Promise<void>((resolve) => {
        child.once("exit", () => resolve());
        child.kill();
        setTimeout(() => {
          if (child.exitCode === null) child.kill("SIGKILL");
          resolve();
        }, 5_000);
      }),
  };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Poll until the probe returns truthy (UI handlers are fire-and-forget). */
export async function until<T>(
  probe: () => T | Promise<T>,
  timeoutMs = 10_000,
): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const value = await probe();
    if (value) return value;
    if (Date.now() > deadline) throw new Error("condition not reached in time");
    await sleep(25);
  }
}

/** Store dumps compared up to wall-clock revision timestamps. */
export function normalizeDump(dump: unknown): unknown {
  const clone = JSON.parse(JSON.stringify(dump)) as {
    entries?: { revisions?: { timestamp?: string }[] }[];
  };
  for (const entry of clone.entries ?? []) {
    for (const revision of entry.revisions ?? []) {
      revision.timestamp = "1970-01-01T00:00:00+00:00";
    }
  }
  return clone;
}

export async function seedEntry(
  backend: Backend,
  body: Record<string, unknown>,
): Promise<string> {
  const response = await fetch(`${backend.baseUrl}/entries`, {
    method: "POST",
    headers: {
      "Content-Type": "application/json",
      Authorization: `Bearer ${backend.token}`,
    },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    throw new Error(`seed failed: ${response.status} ${await response.text()}`);
  }
  const parsed = (await response.json()) as { id: string };
  return parsed.id;
}
