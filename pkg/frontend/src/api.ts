// Typed client for the chromaharmony JSON API. The server is the single
// source of truth: everything the UI shows comes back through these calls.

export interface ColorEntry {
  hex: string;
  lch: [number, number, number];
  in_gamut: boolean;
  hue_sigma: number;
  hue_std_diff: number | null;
  hue_db: number | null;
  hue_accepted: boolean;
  tone_cov: number[][];
  tone_db_min: number | null;
  d_perp: number | null;
  sigma_d_perp: number | null;
  inlier: boolean | null;
  tone_accepted: boolean;
}

export interface ToneLineInfo {
  r: number;
  phi_deg: number;
  cov: number[][] | null;
}

export interface FusedHue {
  h: number;
  c: number;
  sigma: number;
}

export interface Report {
  schema_version: number;
  hue_label: number;
  tone_label: number;
  hue_pattern: string;
  tone_pattern: string;
  harmonic: boolean;
  score: number;
  fused_hue: FusedHue | null;
  line: ToneLineInfo | null;
  per_color: ColorEntry[];
}

export interface Suggestion {
  hex: string;
  lch: [number, number, number];
  in_gamut: boolean;
  score: number;
}

export type HarmonyParams = Record<string, number>;

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = `HTTP ${resp.status}`;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body; keep the status text */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post(path: string, body: unknown): Promise<Response> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createSession(params?: HarmonyParams): Promise<string> {
    const resp = await this.post("/api/sessions", params ? { params } : {});
    const body = await asJson<{ id: string }>(resp);
    return body.id;
  }

  async addColor(sessionId: string, color: string | number[]): Promise<Report> {
    const resp = await this.post(`/api/sessions/${sessionId}/colors`, { color });
    return asJson<Report>(resp);
  }

  async undo(sessionId: string): Promise<Report | null> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${sessionId}/colors/last`,
      { method: "DELETE" },
    );
    const body = await asJson<{ report: Report | null }>(resp);
    return body.report;
  }

  async report(sessionId: string): Promise<Report | null> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${sessionId}/report`,
    );
    const body = await asJson<{ report: Report | null }>(resp);
    return body.report;
  }

  async suggestions(sessionId: string, n: number): Promise<Suggestion[]> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${sessionId}/suggestions?n=${n}`,
    );
    const body = await asJson<{ suggestions: Suggestion[] }>(resp);
    return body.suggestions;
  }

  async evaluate(colors: (string | number[])[], params?: HarmonyParams): Promise<Report> {
    const resp = await this.post("/api/evaluate", { colors, params });
    return asJson<Report>(resp);
  }
}
