/**
 * Typed mirrors of the kernel's space JSON schema, plus bound handles for
 * sampling and membership.  All semantics live kernel-side; these classes
 * only ferry documents and values across the bridge.
 */

import { Bridge, encodeSeed, type Json } from "./bridge.js";

/** Bounds nodes are numbers or the strings "inf"/"-inf", nested per shape. */
export type BoundsNode = number | "inf" | "-inf" | BoundsNode[];

export interface BoxSpaceDoc {
  kind: "box";
  low: BoundsNode;
  high: BoundsNode;
  shape: number[];
  dtype: "real64" | "int64";
}

export interface DiscreteSpaceDoc {
  kind: "discrete";
  n: number;
  start: number;
}

export interface MultiDiscreteSpaceDoc {
  kind: "multi_discrete";
  nvec: number[];
}

export interface MultiBinarySpaceDoc {
  kind: "multi_binary";
  n: number;
}

export interface TextSpaceDoc {
  kind: "text";
  min_length: number;
  max_length: number;
  charset: string;
}

export interface ProductSpaceDoc {
  kind: "product";
  subspaces: SpaceDoc[];
}

export interface MappingSpaceDoc {
  kind: "mapping";
  entries: [string, SpaceDoc][];
}

export interface SequenceSpaceDoc {
  kind: "sequence";
  element: SpaceDoc;
}

export interface GraphSpaceDoc {
  kind: "graph";
  node_space: SpaceDoc;
  edge_space: SpaceDoc | null;
}

export interface OneOfSpaceDoc {
  kind: "one_of";
  alternatives: SpaceDoc[];
}

export type SpaceDoc =
  | BoxSpaceDoc
  | DiscreteSpaceDoc
  | MultiDiscreteSpaceDoc
  | MultiBinarySpaceDoc
  | TextSpaceDoc
  | ProductSpaceDoc
  | MappingSpaceDoc
  | SequenceSpaceDoc
  | GraphSpaceDoc
  | OneOfSpaceDoc;

/** Sample payloads as they cross the wire (space-shaped JSON). */
export type Value = Json;

/** A kernel random number generator owned by this client. */
export class BoundRng {
  private constructor(
    private readonly bridge: Bridge,
    readonly handle: number,
  ) {}

  static async create(bridge: Bridge, seed: number | bigint): Promise<BoundRng> {
    const result = (await bridge.call("rng", { seed: encodeSeed(seed) })) as unknown as {
      rng: number;
    };
    return new BoundRng(bridge, result.rng);
  }
}

/** A space document bound to a bridge, so it can sample and test values. */
export class BoundSpace {
  constructor(
    private readonly bridge: Bridge,
    readonly doc: SpaceDoc,
  ) {}

  async sample(rng: BoundRng): Promise<Value> {
    const result = (await this.bridge.call("sample", {
      rng: rng.handle,
      space: this.doc as unknown as Json,
    })) as { value: Value };
    return result.value;
  }

  async contains(value: Value): Promise<boolean> {
    const result = (await this.bridge.call("contains", {
      space: this.doc as unknown as Json,
      value,
    })) as { member: boolean };
    return result.member;
  }
}
