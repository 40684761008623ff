import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { makeReport, scriptedFetch } from "./helpers.js";

describe("ApiClient", () => {
  it("creates sessions and returns the id", async () => {
    const { fetchFn, log } = scriptedFetch(() => ({ body: { id: "abc123" } }));
    const api = new ApiClient("", fetchFn);
    expect(await api.createSession({ k_h: 4 })).toBe("abc123");
    expect(log[0]).toMatchObject({
      url: "/api/sessions",
      method: "POST",
      body: { params: { k_h: 4 } },
    });
  });

  it("posts colors and parses the report", async () => {
    const report = makeReport();
    const { fetchFn, log } = scriptedFetch(() => ({ body: report }));
    const api = new ApiClient("", fetchFn);
    const got = await api.addColor("abc", "#50713e");
    expect(got.harmonic).toBe(true);
    expect(got.per_color[0]!.hex).toBe("#50713e");
    expect(log[0]).toMatchObject({
      url: "/api/sessions/abc/colors",
      body: { color: "#50713e" },
    });
  });

  it("undo uses DELETE on colors/last", async () => {
    const { fetchFn, log } = scriptedFetch(() => ({ body: { report: null } }));
    const api = new ApiClient("", fetchFn);
    expect(await api.undo("abc")).toBeNull();
    expect(log[0]).toMatchObject({
      url: "/api/sessions/abc/colors/last",
      method: "DELETE",
    });
  });

  it("requests n suggestions", async () => {
    const { fetchFn, log } = scriptedFetch(() => ({
      body: { suggestions: [{ hex: "#000000", lch: [0, 0, 0], in_gamut: true, score: 0.5 }] },
    }));
    const api = new ApiClient("", fetchFn);
    const got = await api.suggestions("abc", 7);
    expect(got).toHaveLength(1);
    expect(log[0]!.url).toBe("/api/sessions/abc/suggestions?n=7");
  });

  it("surfaces server error details", async () => {
    const { fetchFn } = scriptedFetch(() => ({
      status: 400,
      body: { detail: "color: unrecognized color format" },
    }));
    const api = new ApiClient("", fetchFn);
    await expect(api.addColor("abc", "nope")).rejects.toThrowError(ApiError);
    await expect(api.addColor("abc", "nope")).rejects.toThrow(
      /unrecognized color format/,
    );
  });

  it("prefixes a base url", async () => {
    const { fetchFn, log } = scriptedFetch(() => ({ body: { report: null } }));
    const api = new ApiClient("http://localhost:8789", fetchFn);
    await api.report("abc");
    expect(log[0]!.url).toBe("http://localhost:8789/api/sessions/abc/report");
  });
});
