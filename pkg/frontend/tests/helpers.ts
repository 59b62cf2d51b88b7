import { TunerBackend, TunerView, ParamName } from "../src/controller";
import { HighpassMode, LayersPayload, SessionInfo, TunerParams } from "../src/types";

export function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export interface HybridCall {
  sessionId: string;
  params: TunerParams;
  respond: (blob: Blob) => void;
  fail: (err: unknown) => void;
}

export interface LayersCall {
  sessionId: string;
  sigmaLow: number;
  sigmaHigh: number;
  mode: string;
  respond: (payload: LayersPayload) => void;
  fail: (err: unknown) => void;
}

/** Scriptable backend: every request is held until the test releases it. */
export class FakeBackend implements TunerBackend {
  sessions = 0;
  deleted: string[] = [];
  hybridCalls: HybridCall[] = [];
  layersCalls: LayersCall[] = [];

  async createSession(): Promise<SessionInfo> {
    this.sessions += 1;
    return { session_id: `session-${this.sessions}`, width: 32, height: 32 };
  }

  async deleteSession(sessionId: string): Promise<void> {
    this.deleted.push(sessionId);
  }

  fetchHybrid(sessionId: string, params: TunerParams): Promise<Blob> {
    const d = deferred<Blob>();
    this.hybridCalls.push({
      sessionId,
      params: { ...params },
      respond: d.resolve,
      fail: d.reject,
    });
    return d.promise;
  }

  fetchLayers(
    sessionId: string,
    sigmaLow: number,
    sigmaHigh: number,
    mode: string,
  ): Promise<LayersPayload> {
    const d = deferred<LayersPayload>();
    this.layersCalls.push({
      sessionId,
      sigmaLow,
      sigmaHigh,
      mode,
      respond: d.resolve,
      fail: d.reject,
    });
    return d.promise;
  }
}

export interface ViewLog {
  previews: TunerParams[];
  lowPanelUpdates: number[];
  highPanelUpdates: Array<{ sigmaHigh: number; mode: HighpassMode }>;
  errors: Array<{ source: ParamName | "upload"; message: string }>;
  sessions: Array<SessionInfo | null>;
}

export function recordingView(): { view: TunerView; log: ViewLog } {
  const log: ViewLog = {
    previews: [],
    lowPanelUpdates: [],
    highPanelUpdates: [],
    errors: [],
    sessions: [],
  };
  const view: TunerView = {
    onSessionChange: (s) => log.sessions.push(s),
    onPreview: (_blob, params) => log.previews.push(params),
    onLayerLow: (_b64, sigmaLow) => log.lowPanelUpdates.push(sigmaLow),
    onLayerHigh: (_b64, sigmaHigh, mode) => log.highPanelUpdates.push({ sigmaHigh, mode }),
    onError: (source, message) => log.errors.push({ source, message }),
  };
  return { view, log };
}

export const PNG_BLOB = new Blob([new Uint8Array([0x89, 0x50, 0x4e, 0x47])], {
  type: "image/png",
});

export const LAYERS: LayersPayload = { low_png_b64: "bG93", high_png_b64: "aGlnaA==" };

/** settle promise continuations queued by resolved deferreds */
export async function flushMicrotasks(): Promise<void> {
  for (let i = 0; i < 8; i += 1) await Promise.resolve();
}
