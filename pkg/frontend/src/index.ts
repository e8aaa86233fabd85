export { ServeClient, ServeProtocolError } from "./client.js";
export {
  AnalyzerHandle,
  BoundProblem,
  getProblem,
  wrapProblem,
  type AnalyzerOptions,
  type CustomProblemSpec,
  type EvaluationResult,
  type ProblemMetadata,
  type ProblemState,
} from "./problems.js";
export {
  fromWire,
  toWire,
  type Domain,
  type OptimizationDirection,
  type TriggerSpec,
  type WireNumber,
} from "./protocol.js";
