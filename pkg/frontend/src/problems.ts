import type { ServeClient } from "./client.js";
import {
  fromWire,
  toWire,
  type Domain,
  type OptimizationDirection,
  type TriggerSpec,
  type WireEvaluation,
  type WireMetadata,
  type WireNumber,
  type WireState,
} from "./protocol.js";

export interface ProblemMetadata {
  problemId: number;
  name: string;
  instanceId: number;
  dimension: number;
  domain: Domain;
  direction: OptimizationDirection;
  lowerBound: number;
  upperBound: number;
  optimumKnown: boolean;
  optimum?: number;
}

export interface EvaluationResult {
  y: number;
  evaluations: number;
  yBest: number;
  improved: boolean;
}

export interface ProblemState {
  evaluations: number;
  yBest: number;
  finalTargetHit: boolean | null;
}

export interface CustomProblemSpec {
  name: string;
  problemId: number;
  domain: Domain;
  dimension: number;
  direction?: OptimizationDirection;
  optimum?: number;
}

export interface AnalyzerOptions {
  rootDir: string;
  folderName: string;
  algorithmId?: string;
  algorithmInfo?: string;
  suiteName?: string;
  triggers?: TriggerSpec[];
  watchers?: string[];
}

function decodeMetadata(raw: WireMetadata): ProblemMetadata {
  const metadata: ProblemMetadata = {
    problemId: raw.problem_id,
    name: raw.name,
    instanceId: raw.instance_id,
    dimension: raw.dimension,
    domain: raw.domain,
    direction: raw.direction,
    lowerBound: raw.lower_bound,
    upperBound: raw.upper_bound,
    optimumKnown: raw.optimum_known,
  };
  if (raw.optimum !== undefined) metadata.optimum = fromWire(raw.optimum);
  return metadata;
}

function decodeEvaluation(raw: WireEvaluation): EvaluationResult {
  return {
    y: fromWire(raw.y),
    evaluations: raw.evaluations,
    yBest: fromWire(raw.y_best),
    improved: raw.improved,
  };
}

/** Handle to one analyzer logger attached to one problem. */
export class AnalyzerHandle {
  constructor(
    private readonly client: ServeClient,
    readonly handle: number,
    readonly outputDir: string,
  ) {}

  /** Update a watched value; it appears in rows logged from now on. */
  async setWatch(name: string, value: number): Promise<void> {
    await this.client.request("set_watch", {
      logger: this.handle,
      name,
      value: toWire(value),
    });
  }

  async close(): Promise<void> {
    await this.client.request("close_logger", { logger: this.handle });
  }
}

export class BoundProblem {
  constructor(
    private readonly client: ServeClient,
    readonly handle: number,
    readonly metadata: ProblemMetadata,
    private readonly kind: "catalog" | "custom",
  ) {}

  /** Evaluate a catalog problem server-side. */
  async evaluate(x: number[]): Promise<number> {
    const result = await this.client.request("evaluate", { problem: this.handle, x });
    return fromWire((result as unknown as WireEvaluation).y);
  }

  async evaluateDetailed(x: number[]): Promise<EvaluationResult> {
    const result = await this.client.request("evaluate", { problem: this.handle, x });
    return decodeEvaluation(result as unknown as WireEvaluation);
  }

  async evaluateBatch(xs: number[][]): Promise<number[]> {
    const result = await this.client.request("evaluate_batch", { problem: this.handle, xs });
    return (result.ys as WireNumber[]).map(fromWire);
  }

  /** Feed one client-computed evaluation of a wrapped problem. */
  async submit(x: number[], y: number): Promise<EvaluationResult> {
    const result = await this.client.request("submit", {
      problem: this.handle,
      x,
      y: toWire(y),
    });
    return decodeEvaluation(result as unknown as WireEvaluation);
  }

  async state(): Promise<ProblemState> {
    const raw = (await this.client.request("state", {
      problem: this.handle,
    })) as unknown as WireState;
    return {
      evaluations: raw.evaluations,
      yBest: fromWire(raw.y_best),
      finalTargetHit: raw.final_target_hit,
    };
  }

  /** End the current run (flushes loggers) and start a fresh one. */
  async reset(): Promise<void> {
    await this.client.request("reset", { problem: this.handle });
  }

  async attachAnalyzer(options: AnalyzerOptions): Promise<AnalyzerHandle> {
    const params: Record<string, unknown> = {
      problem: this.handle,
      root_dir: options.rootDir,
      folder_name: options.folderName,
    };
    if (options.algorithmId !== undefined) params.algorithm_id = options.algorithmId;
    if (options.algorithmInfo !== undefined) params.algorithm_info = options.algorithmInfo;
    if (options.suiteName !== undefined) params.suite_name = options.suiteName;
    if (options.triggers !== undefined) params.triggers = options.triggers;
    if (options.watchers !== undefined) params.watchers = options.watchers;
    const result = await this.client.request("attach_analyzer", params);
    return new AnalyzerHandle(
      this.client,
      result.logger as number,
      result.output_dir as string,
    );
  }

  async detach(analyzer: AnalyzerHandle): Promise<void> {
    await this.client.request("detach", {
      problem: this.handle,
      logger: analyzer.handle,
    });
  }

  /** Run one of the core's registered algorithms against this problem. */
  async runAlgorithm(
    name: string,
    budget: number,
    seed: number,
    options: { parameters?: Record<string, unknown>; stopOnOptimum?: boolean } = {},
  ): Promise<{ evaluations: number; yBest: number }> {
    const params: Record<string, unknown> = { problem: this.handle, name, budget, seed };
    if (options.parameters !== undefined) params.parameters = options.parameters;
    if (options.stopOnOptimum !== undefined) params.stop_on_optimum = options.stopOnOptimum;
    const result = await this.client.request("run_algorithm", params);
    return {
      evaluations: result.evaluations as number,
      yBest: fromWire(result.y_best as WireNumber),
    };
  }

  get isCustom(): boolean {
    return this.kind === "custom";
  }
}

export async function getProblem(
  client: ServeClient,
  domain: Domain,
  problemId: number,
  instanceId: number,
  dimension: number,
): Promise<BoundProblem> {
  const result = await client.request("get_problem", {
    domain,
    problem_id: problemId,
    instance_id: instanceId,
    dimension,
  });
  return new BoundProblem(
    client,
    result.problem as number,
    decodeMetadata(result.metadata as unknown as WireMetadata),
    "catalog",
  );
}

export async function wrapProblem(
  client: ServeClient,
  spec: CustomProblemSpec,
): Promise<BoundProblem> {
  const params: Record<string, unknown> = {
    name: spec.name,
    problem_id: spec.problemId,
    domain: spec.domain,
    dimension: spec.dimension,
  };
  if (spec.direction !== undefined) params.direction = spec.direction;
  if (spec.optimum !== undefined) params.optimum = toWire(spec.optimum);
  const result = await client.request("wrap_problem", params);
  return new BoundProblem(
    client,
    result.problem as number,
    decodeMetadata(result.metadata as unknown as WireMetadata),
    "custom",
  );
}
