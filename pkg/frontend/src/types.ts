export type HighpassMode = "subtract" | "log";

export interface TunerParams {
  sigmaLow: number;
  sigmaHigh: number;
  weight: number;
  mode: HighpassMode;
  /** index into DISTANCE_SCALES: larger = further away = smaller preview */
  distance: number;
}

export const SIGMA_MIN = 0.5;
export const SIGMA_MAX = 30;
export const SIGMA_STEP = 0.5;
export const WEIGHT_STEP = 0.01;

/** preview scales simulating viewing distance */
export const DISTANCE_SCALES = [1, 0.5, 0.25, 0.125] as const;

export const DEFAULT_PARAMS: TunerParams = {
  sigmaLow: 7,
  sigmaHigh: 7,
  weight: 0.5,
  mode: "subtract",
  distance: 0,
};

export function scaleFor(params: TunerParams): number {
  return DISTANCE_SCALES[params.distance] ?? 1;
}

export interface SessionInfo {
  session_id: string;
  width: number;
  height: number;
}

export interface LayersPayload {
  low_png_b64: string;
  high_png_b64: string;
}

/** the CLI invocation equivalent to the current parameter set */
export function cliCommand(params: TunerParams): string {
  return (
    `hybridlens hybrid low.png high.png hybrid.png ` +
    `--sigma-low ${params.sigmaLow} --sigma-high ${params.sigmaHigh} ` +
    `--weight ${params.weight} --mode ${params.mode}`
  );
}
