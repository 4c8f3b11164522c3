/** Binding surface: delegation fidelity, error names, spaces, vectors. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import {
  BoundEnv,
  BoundRng,
  BoundSpace,
  BoundVectorEnv,
  Bridge,
  KernelError,
  type SpaceDoc,
} from "../src/index.js";

describe("bound environments", () => {
  let bridge: Bridge;

  beforeAll(() => {
    bridge = new Bridge();
  });

  afterAll(async () => {
    await bridge.close();
  });

  it("exposes spec and spaces from make", async () => {
    const env = await BoundEnv.make(bridge, "CartPole-v1");
    expect(env.spec.id).toBe("CartPole-v1");
    expect(env.spec.max_episode_steps).toBe(500);
    expect(env.observationSpace.doc.kind).toBe("box");
    expect(env.actionSpace.doc.kind).toBe("discrete");
    await env.close();
  });

  it("resets deterministically for equal seeds", async () => {
    const a = await BoundEnv.make(bridge, "CartPole-v1");
    const b = await BoundEnv.make(bridge, "CartPole-v1");
    const first = await a.reset({ seed: 42 });
    const second = await b.reset({ seed: 42n });
    expect(first.observation).toEqual(second.observation);
    await a.close();
    await b.close();
  });

  it("surfaces kernel error names", async () => {
    const env = await BoundEnv.make(bridge, "CartPole-v1");
    await expect(env.step(0)).rejects.toMatchObject({ kernelName: "ResetNeeded" });
    await env.reset({ seed: 0 });
    await expect(env.step(99)).rejects.toMatchObject({ kernelName: "InvalidAction" });
    await expect(env.step("left")).rejects.toThrowError(KernelError);
    await env.close();

    await expect(BoundEnv.make(bridge, "Nope-v0")).rejects.toMatchObject({
      kernelName: "UnknownEnvironment",
    });
  });

  it("renders rgb frames with the declared geometry", async () => {
    const env = await BoundEnv.make(bridge, "CartPole-v1", "rgb_array");
    await env.reset({ seed: 0 });
    const frame = await env.render();
    expect(frame).not.toBeNull();
    if (frame !== null && typeof frame !== "string") {
      expect(frame.shape).toEqual([400, 600, 3]);
      expect(Buffer.from(frame.data_base64, "base64").length).toBe(400 * 600 * 3);
    }
    await env.close();
  });

  it("samples spaces deterministically and checks membership", async () => {
    const doc: SpaceDoc = { kind: "discrete", n: 4, start: 0 };
    const space = new BoundSpace(bridge, doc);
    const rngA = await BoundRng.create(bridge, 7);
    const rngB = await BoundRng.create(bridge, 7);
    const seqA: unknown[] = [];
    const seqB: unknown[] = [];
    for (let i = 0; i < 16; i++) {
      seqA.push(await space.sample(rngA));
      seqB.push(await space.sample(rngB));
    }
    expect(seqA).toEqual(seqB);
    expect(await space.contains(2)).toBe(true);
    expect(await space.contains(4)).toBe(false);
    expect(await space.contains("two")).toBe(false);
  });

  it("drives vector environments end to end", async () => {
    const a = await BoundVectorEnv.make(bridge, "FrozenLake-v1", 2);
    const b = await BoundVectorEnv.make(bridge, "FrozenLake-v1", 2);
    expect(a.numEnvs).toBe(2);
    const resetA = await a.reset({ seed: 9 });
    const resetB = await b.reset({ seed: 9 });
    expect(resetA.observations).toEqual(resetB.observations);

    const rng = await BoundRng.create(bridge, 1);
    for (let i = 0; i < 25; i++) {
      const actions = await a.actionSpace.sample(rng);
      const stepA = await a.step(actions);
      const stepB = await b.step(actions);
      expect(stepA.observations).toEqual(stepB.observations);
      expect(stepA.rewards).toEqual(stepB.rewards);
      expect(stepA.terminateds).toEqual(stepB.terminateds);
      expect(stepA.rewards).toHaveLength(2);
    }
    await a.close();
    await b.close();
  });
});
