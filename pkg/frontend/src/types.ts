/** Wire types for the analysis service (mirrors the JSON the service emits). */

export interface HyperParams {
  axis: number;
  scale: number;
  precision: number;
  parsimony: number;
}

export interface ClusterFit {
  coeffs: number[];
  intercept: number;
  members: number;
  slopesDefined: boolean;
}

export interface Cell extends HyperParams {
  quality: number | 'inf';
  clusters: number;
  labels: number[];
  displayOrder: number[];
  fits: ClusterFit[];
}

export interface HeatmapPane {
  axis: number;
  parsimony: number;
  rows: 'scale';
  cols: 'precision';
  values: (number | 'inf')[][];
}

export interface AnalysisResult {
  config: {
    scaleSteps: number[];
    precisionSteps: number[];
    parsimonySteps: number[];
    axes: number[];
    subsetSize: number | null;
    budget: number;
    seed: number;
    columnNames: string[];
  };
  cells: Cell[];
  best: HyperParams;
  heatmaps: HeatmapPane[];
}

export interface JobStatus {
  jobId: string;
  state: 'queued' | 'running' | 'done' | 'failed';
  cellsDone: number;
  cellsTotal: number;
  error?: string;
  result?: AnalysisResult;
}

export interface AffinityPayload {
  matrix: number[][];
  displayOrder: number[];
}

export interface DatasetInfo {
  kind: string;
  description: string;
  defaultSeed: number | null;
}

export function sameCell(a: HyperParams, b: HyperParams): boolean {
  return (
    a.axis === b.axis &&
    a.scale === b.scale &&
    a.precision === b.precision &&
    a.parsimony === b.parsimony
  );
}

export function findCell(result: AnalysisResult, hp: HyperParams): Cell | undefined {
  return result.cells.find((c) => sameCell(c, hp));
}
