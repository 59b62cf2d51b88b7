import {
  LayersPayload,
  SessionInfo,
  TunerParams,
  scaleFor,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function detailOf(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (typeof body?.detail === "string") return body.detail;
    return JSON.stringify(body?.detail ?? body);
  } catch {
    return `HTTP ${resp.status}`;
  }
}

export function hybridQuery(params: TunerParams): string {
  const q = new URLSearchParams({
    sigma_low: String(params.sigmaLow),
    sigma_high: String(params.sigmaHigh),
    weight: String(params.weight),
    mode: params.mode,
    scale: String(scaleFor(params)),
  });
  return q.toString();
}

/** Thin client over the tuning service; all pixels come from the server. */
export class TunerApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async createSession(low: File | Blob, high: File | Blob): Promise<SessionInfo> {
    const form = new FormData();
    form.append("image_low", low);
    form.append("image_high", high);
    const resp = await this.fetchImpl(`${this.baseUrl}/session`, {
      method: "POST",
      body: form,
    });
    if (resp.status !== 201) throw new ApiError(resp.status, await detailOf(resp));
    return (await resp.json()) as SessionInfo;
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.fetchImpl(`${this.baseUrl}/session/${sessionId}`, { method: "DELETE" });
  }

  async fetchHybrid(sessionId: string, params: TunerParams): Promise<Blob> {
    const url = `${this.baseUrl}/session/${sessionId}/hybrid?${hybridQuery(params)}`;
    const resp = await this.fetchImpl(url);
    if (!resp.ok) throw new ApiError(resp.status, await detailOf(resp));
    return resp.blob();
  }

  async fetchLayers(
    sessionId: string,
    sigmaLow: number,
    sigmaHigh: number,
    mode: string,
  ): Promise<LayersPayload> {
    const q = new URLSearchParams({
      sigma_low: String(sigmaLow),
      sigma_high: String(sigmaHigh),
      mode,
    });
    const resp = await this.fetchImpl(`${this.baseUrl}/session/${sessionId}/layers?${q}`);
    if (!resp.ok) throw new ApiError(resp.status, await detailOf(resp));
    return (await resp.json()) as LayersPayload;
  }
}
