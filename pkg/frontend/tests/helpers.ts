// Shared test scaffolding: a scripted fetch that logs every request, plus
// canned server payloads shaped like the real API's responses.

import { FetchLike, Report } from "../src/api.js";

export interface LoggedRequest {
  url: string;
  method: string;
  body: unknown;
}

export function makeReport(overrides: Partial<Report> = {}): Report {
  return {
    schema_version: 1,
    hue_label: 1,
    tone_label: 1,
    hue_pattern: "analog",
    tone_pattern: "point",
    harmonic: true,
    score: 10,
    fused_hue: { h: 100, c: 30, sigma: 8.5 },
    line: null,
    per_color: [
      {
        hex: "#50713e",
        lch: [44, 30, 114],
        in_gamut: true,
        hue_sigma: 8.5,
        hue_std_diff: null,
        hue_db: null,
        hue_accepted: true,
        tone_cov: [
          [10.9, 0],
          [0, 4.4],
        ],
        tone_db_min: null,
        d_perp: null,
        sigma_d_perp: null,
        inlier: null,
        tone_accepted: true,
      },
    ],
    ...overrides,
  };
}

type Responder = (req: LoggedRequest) => { status?: number; body: unknown };

export function scriptedFetch(respond: Responder): {
  fetchFn: FetchLike;
  log: LoggedRequest[];
} {
  const log: LoggedRequest[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const req: LoggedRequest = {
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : null,
    };
    log.push(req);
    const { status = 200, body } = respond(req);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, log };
}

export const offlineFetch: FetchLike = async () => {
  throw new Error("network disabled");
};
