// Wire format shared with `heurobench serve`: one JSON object per line in
// each direction. Floats JSON cannot express travel as the strings "nan",
// "inf" and "-inf".

export type WireNumber = number | "nan" | "inf" | "-inf";

export type Domain = "boolean" | "continuous";
export type OptimizationDirection = "maximize" | "minimize";

export interface TriggerSpec {
  type: "always" | "on_improvement" | "each" | "at" | "targets";
  k?: number;
  points?: number[];
  values?: number[];
}

export interface WireMetadata {
  problem_id: number;
  name: string;
  instance_id: number;
  dimension: number;
  domain: Domain;
  direction: OptimizationDirection;
  lower_bound: number;
  upper_bound: number;
  optimum_known: boolean;
  optimum?: WireNumber;
}

export interface WireEvaluation {
  y: WireNumber;
  evaluations: number;
  y_best: WireNumber;
  improved: boolean;
}

export interface WireState {
  evaluations: number;
  y_best: WireNumber;
  final_target_hit: boolean | null;
}

export interface WireResponse {
  id: number | null;
  ok: boolean;
  result?: Record<string, unknown>;
  error?: { type: string; message: string };
}

export function fromWire(value: WireNumber): number {
  if (typeof value === "number") return value;
  if (value === "nan") return NaN;
  if (value === "inf") return Infinity;
  if (value === "-inf") return -Infinity;
  throw new Error(`not a wire number: ${JSON.stringify(value)}`);
}

export function toWire(value: number): WireNumber {
  if (Number.isNaN(value)) return "nan";
  if (value === Infinity) return "inf";
  if (value === -Infinity) return "-inf";
  return value;
}
