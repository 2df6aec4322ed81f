// UI parity: a scripted session that executes the five mutations of the
// worked A3 chain (with the branch realized by one undo) through the HTTP
// client, comparing after every step against a CLI replay byte for byte,
// and checking the class minimap returns to the start class at the end.

import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionClient } from "../src/api.js";
import { buildViewModel } from "../src/viewmodel.js";

const FIXTURE = resolve(__dirname, "../../fixtures/a3-auslander.json");
const CLI = "quivermute";

let server: ReturnType<typeof spawn>;
let client: SessionClient;

function cliMutate(sliceSpec: string, at: string, dir: string, outFile: string): string {
  const run = spawnSync(
    CLI,
    ["mutate", FIXTURE, "--slice", sliceSpec, "--at", at, "--dir", dir, "-o", outFile],
    { encoding: "utf-8" },
  );
  expect(run.status, run.stderr).toBe(0);
  return run.stdout;
}

beforeAll(async () => {
  server = spawn(CLI, ["serve", "--port", "0", "--ambient", FIXTURE, "--start", "level:0"], {
    stdio: ["ignore", "ignore", "pipe"],
  });
  const port = await new Promise<number>((resolvePort, reject) => {
    let buffer = "";
    server.stderr!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const hit = buffer.match(/serving on 127\.0\.0\.1:(\d+)/);
      if (hit) resolvePort(Number(hit[1]));
    });
    server.on("exit", (code) => reject(new Error(`server exited early (${code})`)));
    setTimeout(() => reject(new Error("server did not announce a port")), 30_000);
  });
  client = new SessionClient(`http://127.0.0.1:${port}`);
}, 40_000);

afterAll(() => {
  server?.kill();
});

describe("scripted Example 5.1 session", () => {
  it("replays byte-identically against the CLI and returns to the start class", async () => {
    const work = mkdtempSync(join(tmpdir(), "quivermute-parity-"));
    const startEnum = await client.fetchEnumeration();
    expect(startEnum.current_class).toBe(startEnum.start_class);

    // the five published mutations; the fourth branches off the second
    // state, which the session reaches with one undo
    const steps: { vertex: string; dir: "plus" | "minus" }[] = [
      { vertex: "1@0", dir: "plus" },
      { vertex: "2@0", dir: "plus" },
      { vertex: "3@0", dir: "plus" },
      { vertex: "4@0", dir: "plus" },
      { vertex: "1@1", dir: "plus" },
    ];

    // CLI replay, chaining subset files; step 4 restarts from the file of
    // step 2 exactly like the session's undo does
    const sliceFiles: Record<number, string> = {};
    let spec = "level:0";
    const cliStates: string[] = [];
    for (const [k, step] of steps.entries()) {
      if (k === 3) spec = sliceFiles[1];
      const out = join(work, `slice${k}.json`);
      cliStates.push(cliMutate(spec, step.vertex, step.dir, out));
      sliceFiles[k] = out;
      spec = out;
    }

    // scripted session: mutate, mutate, mutate, undo, mutate, mutate
    const serviceStates: string[] = [];
    for (const [k, step] of steps.entries()) {
      if (k === 3) await client.undo();
      await client.requestMutation(step.vertex, step.dir);
      serviceStates.push(await client.fetchStateRaw());
    }

    for (const [k, cliState] of cliStates.entries()) {
      expect(serviceStates[k], `step ${k}`).toBe(cliState);
    }

    const finalEnum = await client.fetchEnumeration();
    expect(finalEnum.current_class).toBe(startEnum.start_class);

    // and the rendered view is a pure function of the final response
    const session = await client.fetchState();
    const layout = await client.fetchLayout();
    const vm = buildViewModel(session, layout, finalEnum);
    expect(vm.minimap!.current).toBe(vm.minimap!.start);
    expect(vm.undoDepth).toBe(session.history.length);
  }, 120_000);

  it("rejects a non-movable click with the backend code and keeps state", async () => {
    const before = await client.fetchStateRaw();
    await expect(client.requestMutation("3@0", "minus")).rejects.toMatchObject({
      status: 400,
      diagnostic: { code: "NOT_MOVABLE" },
    });
    const after = await client.fetchStateRaw();
    expect(after).toBe(before);
  }, 30_000);
});
