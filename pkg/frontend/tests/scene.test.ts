import { describe, expect, it } from "vitest";

import { clipLineToSquare, hueWheelScene, swatchLabel, tonePlaneScene } from "../src/scene.js";
import { makeReport } from "./helpers.js";

describe("clipLineToSquare", () => {
  it("clips a horizontal mid line to the full width", () => {
    // phi=90: the line L = r
    const seg = clipLineToSquare(50, 90);
    expect(seg).not.toBeNull();
    const xs = [seg!.x1, seg!.x2].sort((a, b) => a - b);
    expect(xs[0]).toBeCloseTo(0, 6);
    expect(xs[1]).toBeCloseTo(100, 6);
    expect(seg!.y1).toBeCloseTo(50, 6);
    expect(seg!.y2).toBeCloseTo(50, 6);
  });

  it("returns null when the line misses the square", () => {
    expect(clipLineToSquare(200, 90)).toBeNull();
    expect(clipLineToSquare(150, 0)).toBeNull();
  });

  it("endpoints satisfy the line equation", () => {
    const r = 7.07;
    const phi = 135;
    const seg = clipLineToSquare(r, phi)!;
    const rad = (phi * Math.PI) / 180;
    for (const [x, y] of [
      [seg.x1, seg.y1],
      [seg.x2, seg.y2],
    ]) {
      expect(x! * Math.cos(rad) + y! * Math.sin(rad)).toBeCloseTo(r, 6);
    }
  });
});

describe("hueWheelScene", () => {
  it("marks each color at its hue with a 2-sigma-wide arc", () => {
    const scene = hueWheelScene(makeReport());
    expect(scene.arcs).toHaveLength(1);
    expect(scene.arcs[0]!.hue).toBe(114);
    expect(scene.arcs[0]!.halfWidth).toBe(8.5); // arc spans hue +/- sigma
    expect(scene.badge).toBe("analog");
  });

  it("caps a neutral color's arc at the full circle", () => {
    const report = makeReport();
    report.per_color[0]!.hue_sigma = 123;
    const scene = hueWheelScene(report);
    expect(scene.arcs[0]!.halfWidth).toBeGreaterThan(100); // near-full circle
    expect(scene.arcs[0]!.halfWidth).toBeLessThanOrEqual(180);
  });

  it("is empty without a report", () => {
    const scene = hueWheelScene(null);
    expect(scene.arcs).toEqual([]);
    expect(scene.badge).toBe("empty");
  });
});

describe("tonePlaneScene", () => {
  it("one ellipse and no line for a single color", () => {
    const scene = tonePlaneScene(makeReport());
    expect(scene.points).toHaveLength(1);
    expect(scene.line).toBeNull();
    // 2-sigma semi-axes from the diagonal covariance
    expect(scene.points[0]!.rx).toBeCloseTo(2 * Math.sqrt(10.9), 9);
    expect(scene.points[0]!.ry).toBeCloseTo(2 * Math.sqrt(4.4), 9);
  });

  it("draws the fitted line and its uncertainty band", () => {
    const report = makeReport({
      line: {
        r: 7.07,
        phi_deg: 135,
        cov: [
          [0.5, 0.01],
          [0.01, 0.002],
        ],
      },
      tone_pattern: "line",
    });
    const scene = tonePlaneScene(report);
    expect(scene.line).not.toBeNull();
    expect(scene.band).not.toBeNull();
    expect(scene.band!.length).toBeGreaterThan(10);
  });

  it("flags rejected colors through the server's inlier bit", () => {
    const report = makeReport();
    report.per_color[0]!.inlier = false;
    report.per_color[0]!.tone_accepted = false;
    const scene = tonePlaneScene(report);
    expect(scene.points[0]!.inlier).toBe(false);
    expect(scene.points[0]!.accepted).toBe(false);
  });
});

describe("swatchLabel", () => {
  it("spells out the L, c, h coordinates", () => {
    expect(swatchLabel([44, 30, 114])).toBe("L=44.0 c=30.0 h=114.0");
  });
});
