/**
 * Bound environment handles: make / reset / step / render / close, plus the
 * vectorized variants.  Every call delegates 1:1 to the kernel over the
 * bridge; values cross by copy.  A bound handle serializes its own calls,
 * so concurrent callers cannot interleave requests on one environment.
 */

import { Bridge, encodeSeed, type Json } from "./bridge.js";
import { BoundRng, BoundSpace, type SpaceDoc, type Value } from "./spaces.js";

export interface EnvSpecDoc {
  id: string;
  entry_point: string;
  max_episode_steps: number | null;
  kwargs: Record<string, Json>;
  order_enforcing: boolean;
  render_mode: string | null;
}

export interface StepResult {
  observation: Value;
  reward: number;
  terminated: boolean;
  truncated: boolean;
  info: Record<string, Json>;
}

export interface ResetResult {
  observation: Value;
  info: Record<string, Json>;
}

export type RenderOutput =
  | string
  | { shape: number[]; data_base64: string }
  | null;

class CallSerializer {
  private tail: Promise<unknown> = Promise.resolve();

  run<T>(fn: () => Promise<T>): Promise<T> {
    const next = this.tail.then(fn, fn);
    this.tail = next.catch(() => undefined);
    return next;
  }
}

export class BoundEnv {
  readonly observationSpace: BoundSpace;
  readonly actionSpace: BoundSpace;
  private readonly serializer = new CallSerializer();

  private constructor(
    private readonly bridge: Bridge,
    private readonly handle: number,
    readonly spec: EnvSpecDoc,
    observationSpace: SpaceDoc,
    actionSpace: SpaceDoc,
  ) {
    this.observationSpace = new BoundSpace(bridge, observationSpace);
    this.actionSpace = new BoundSpace(bridge, actionSpace);
  }

  static async make(bridge: Bridge, envId: string, renderMode?: string): Promise<BoundEnv> {
    const result = (await bridge.call("make", {
      env_id: envId,
      render_mode: renderMode ?? null,
    })) as unknown as {
      env: number;
      spec: EnvSpecDoc;
      observation_space: SpaceDoc;
      action_space: SpaceDoc;
    };
    return new BoundEnv(bridge, result.env, result.spec, result.observation_space, result.action_space);
  }

  reset(options?: { seed?: number | bigint; options?: Record<string, Json> }): Promise<ResetResult> {
    return this.serializer.run(async () => {
      return (await this.bridge.call("reset", {
        env: this.handle,
        seed: encodeSeed(options?.seed),
        options: options?.options,
      })) as unknown as ResetResult;
    });
  }

  step(action: Value): Promise<StepResult> {
    return this.serializer.run(async () => {
      return (await this.bridge.call("step", {
        env: this.handle,
        action,
      })) as unknown as StepResult;
    });
  }

  render(): Promise<RenderOutput> {
    return this.serializer.run(async () => {
      const result = (await this.bridge.call("render", { env: this.handle })) as {
        output: RenderOutput;
      };
      return result.output;
    });
  }

  close(): Promise<void> {
    return this.serializer.run(async () => {
      await this.bridge.call("close", { env: this.handle });
    });
  }
}

export interface VectorStepResult {
  observations: Value;
  rewards: number[];
  terminateds: boolean[];
  truncateds: boolean[];
  infos: Record<string, Json>[];
}

export class BoundVectorEnv {
  readonly singleObservationSpace: BoundSpace;
  readonly singleActionSpace: BoundSpace;
  readonly observationSpace: BoundSpace;
  readonly actionSpace: BoundSpace;
  private readonly serializer = new CallSerializer();

  private constructor(
    private readonly bridge: Bridge,
    private readonly handle: number,
    readonly numEnvs: number,
    docs: {
      single_observation_space: SpaceDoc;
      single_action_space: SpaceDoc;
      observation_space: SpaceDoc;
      action_space: SpaceDoc;
    },
  ) {
    this.singleObservationSpace = new BoundSpace(bridge, docs.single_observation_space);
    this.singleActionSpace = new BoundSpace(bridge, docs.single_action_space);
    this.observationSpace = new BoundSpace(bridge, docs.observation_space);
    this.actionSpace = new BoundSpace(bridge, docs.action_space);
  }

  static async make(
    bridge: Bridge,
    envId: string,
    numEnvs: number,
    backend: "sequential" | "parallel" = "sequential",
  ): Promise<BoundVectorEnv> {
    const result = (await bridge.call("make_vec", {
      env_id: envId,
      num_envs: numEnvs,
      backend,
    })) as unknown as {
      venv: number;
      num_envs: number;
      single_observation_space: SpaceDoc;
      single_action_space: SpaceDoc;
      observation_space: SpaceDoc;
      action_space: SpaceDoc;
    };
    return new BoundVectorEnv(bridge, result.venv, result.num_envs, result);
  }

  reset(options?: { seed?: number | bigint }): Promise<{ observations: Value; infos: Record<string, Json>[] }> {
    return this.serializer.run(async () => {
      return (await this.bridge.call("vec_reset", {
        venv: this.handle,
        seed: encodeSeed(options?.seed),
      })) as unknown as { observations: Value; infos: Record<string, Json>[] };
    });
  }

  step(actions: Value): Promise<VectorStepResult> {
    return this.serializer.run(async () => {
      return (await this.bridge.call("vec_step", {
        venv: this.handle,
        actions,
      })) as unknown as VectorStepResult;
    });
  }

  close(): Promise<void> {
    return this.serializer.run(async () => {
      await this.bridge.call("vec_close", { venv: this.handle });
    });
  }
}

export { BoundRng };
