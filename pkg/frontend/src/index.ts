export { Bridge, KernelError, encodeSeed, type Json } from "./bridge.js";
export {
  BoundEnv,
  BoundRng,
  BoundVectorEnv,
  type EnvSpecDoc,
  type RenderOutput,
  type ResetResult,
  type StepResult,
  type VectorStepResult,
} from "./env.js";
export {
  BoundSpace,
  type BoundsNode,
  type SpaceDoc,
  type Value,
} from "./spaces.js";
