import { ApiError } from "./api.js";
import { Debounced, debounce } from "./debounce.js";
import {
  DEFAULT_PARAMS,
  HighpassMode,
  LayersPayload,
  SessionInfo,
  TunerParams,
  cliCommand,
} from "./types.js";

export const DEBOUNCE_MS = 150;

export type ParamName = keyof TunerParams;

/** What the controller needs from the service client (see TunerApi). */
export interface TunerBackend {
  createSession(low: File | Blob, high: File | Blob): Promise<SessionInfo>;
  deleteSession(sessionId: string): Promise<void>;
  fetchHybrid(sessionId: string, params: TunerParams): Promise<Blob>;
  fetchLayers(
    sessionId: string,
    sigmaLow: number,
    sigmaHigh: number,
    mode: string,
  ): Promise<LayersPayload>;
}

/** Rendering surface; the controller never touches the DOM itself. */
export interface TunerView {
  onSessionChange(session: SessionInfo | null): void;
  onPreview(image: Blob, params: TunerParams): void;
  onLayerLow(pngB64: string, sigmaLow: number): void;
  onLayerHigh(pngB64: string, sigmaHigh: number, mode: HighpassMode): void;
  onError(source: ParamName | "upload", message: string): void;
  onBusyChange?(inFlight: number): void;
}

const WIRE_NAMES: ReadonlyArray<[string, ParamName]> = [
  ["sigma_low", "sigmaLow"],
  ["sigma_high", "sigmaHigh"],
  ["weight", "weight"],
  ["mode", "mode"],
  ["scale", "distance"],
];

export function offendingParam(detail: string): ParamName | null {
  for (const [wire, param] of WIRE_NAMES) {
    if (detail.includes(wire)) return param;
  }
  return null;
}

/**
 * Single source of interaction state. All filtering happens on the server;
 * this class only schedules requests: debounced, one in flight at a time,
 * latest parameters win, stale responses dropped.
 */
export class TunerController {
  readonly params: TunerParams = { ...DEFAULT_PARAMS };
  session: SessionInfo | null = null;
  /** parameters of the preview currently on screen */
  displayedParams: TunerParams | null = null;

  private previewSeq = 0;
  private previewInFlight = false;
  private previewDirty = false;

  private layersInFlight = false;
  private layersDirty = false;
  private lowStale = true;
  private highStale = true;

  private uploading = false;
  private readonly scheduleRefresh: Debounced<[]>;

  constructor(
    private readonly api: TunerBackend,
    private readonly view: TunerView,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.scheduleRefresh = debounce(debounceMs, () => {
      void this.refreshPreview();
      void this.refreshLayers();
    });
  }

  get inFlightCount(): number {
    return (this.previewInFlight ? 1 : 0) + (this.layersInFlight ? 1 : 0);
  }

  get controlsEnabled(): boolean {
    return this.session !== null && !this.uploading;
  }

  cliInvocation(): string {
    return cliCommand(this.params);
  }

  async uploadPair(low: File | Blob, high: File | Blob): Promise<void> {
    this.uploading = true;
    this.notifyBusy();
    const previous = this.session;
    try {
      const info = await this.api.createSession(low, high);
      if (previous) void this.api.deleteSession(previous.session_id);
      this.session = info;
      this.displayedParams = null;
      this.lowStale = true;
      this.highStale = true;
      this.view.onSessionChange(info);
      void this.refreshPreview();
      void this.refreshLayers();
    } catch (err) {
      this.view.onError("upload", err instanceof Error ? err.message : String(err));
    } finally {
      this.uploading = false;
      this.notifyBusy();
    }
  }

  setParam<K extends ParamName>(name: K, value: TunerParams[K]): void {
    if (this.params[name] === value) return;
    this.params[name] = value;
    if (name === "sigmaLow") this.lowStale = true;
    if (name === "sigmaHigh" || name === "mode") this.highStale = true;
    if (this.session) this.scheduleRefresh();
  }

  private notifyBusy(): void {
    this.view.onBusyChange?.(this.inFlightCount);
  }

  private async refreshPreview(): Promise<void> {
    const session = this.session;
    if (!session) return;
    if (this.previewInFlight) {
      this.previewDirty = true;
      return;
    }
    const seq = ++this.previewSeq;
    const snapshot: TunerParams = { ...this.params };
    this.previewInFlight = true;
    this.notifyBusy();
    try {
      const image = await this.api.fetchHybrid(session.session_id, snapshot);
      if (seq === this.previewSeq && !this.previewDirty) {
        this.displayedParams = snapshot;
        this.view.onPreview(image, snapshot);
      }
    } catch (err) {
      if (seq === this.previewSeq && !this.previewDirty && err instanceof ApiError) {
        const param = offendingParam(err.message);
        this.view.onError(param ?? "upload", err.message);
      }
    } finally {
      this.previewInFlight = false;
      this.notifyBusy();
      if (this.previewDirty) {
        this.previewDirty = false;
        void this.refreshPreview();
      }
    }
  }

  private async refreshLayers(): Promise<void> {
    const session = this.session;
    if (!session || (!this.lowStale && !this.highStale)) return;
    if (this.layersInFlight) {
      this.layersDirty = true;
      return;
    }
    const snapshot: TunerParams = { ...this.params };
    const applyLow = this.lowStale;
    const applyHigh = this.highStale;
    this.lowStale = false;
    this.highStale = false;
    this.layersInFlight = true;
    this.notifyBusy();
    try {
      const layers = await this.api.fetchLayers(
        session.session_id,
        snapshot.sigmaLow,
        snapshot.sigmaHigh,
        snapshot.mode,
      );
      if (!this.layersDirty) {
        // refresh only the panels whose inputs actually changed
        if (applyLow) this.view.onLayerLow(layers.low_png_b64, snapshot.sigmaLow);
        if (applyHigh) this.view.onLayerHigh(layers.high_png_b64, snapshot.sigmaHigh, snapshot.mode);
      } else {
        // response superseded; the panels it carried still need a refresh
        this.lowStale = this.lowStale || applyLow;
        this.highStale = this.highStale || applyHigh;
      }
    } catch (err) {
      if (err instanceof ApiError) {
        const param = offendingParam(err.message);
        this.view.onError(param ?? "upload", err.message);
      }
      this.lowStale = this.lowStale || applyLow;
      this.highStale = this.highStale || applyHigh;
    } finally {
      this.layersInFlight = false;
      this.notifyBusy();
      if (this.layersDirty) {
        this.layersDirty = false;
        void this.refreshLayers();
      }
    }
  }
}
