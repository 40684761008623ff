// Pure view-model computation: turns a server report into drawable
// primitives in tone-plane units ([0,100]^2) and wheel angles. Geometry
// only; every judgment (labels, accepted flags, sigmas) is server data.

import { Report } from "./api.js";

export interface WheelArc {
  hue: number; // degrees, CSS angle
  halfWidth: number; // degrees, = hue sigma (arc spans 2 sigma)
  hex: string;
  accepted: boolean;
}

export interface WheelScene {
  arcs: WheelArc[];
  badge: string; // pattern label from the server
  harmonic: boolean;
  fused: { hue: number; halfWidth: number } | null;
}

export function hueWheelScene(report: Report | null): WheelScene {
  if (!report) return { arcs: [], badge: "empty", harmonic: false, fused: null };
  return {
    arcs: report.per_color.map((entry) => ({
      hue: entry.lch[2],
      halfWidth: Math.min(entry.hue_sigma, 180),
      hex: entry.hex,
      accepted: entry.hue_accepted,
    })),
    badge: report.hue_pattern,
    harmonic: report.harmonic,
    fused: report.fused_hue
      ? { hue: report.fused_hue.h, halfWidth: Math.min(report.fused_hue.sigma, 180) }
      : null,
  };
}

export interface TonePoint {
  c: number;
  L: number;
  hex: string;
  inlier: boolean | null;
  accepted: boolean;
  // 2-sigma ellipse semi-axes from the diagonal tone covariance
  rx: number;
  ry: number;
}

export interface Segment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface ToneScene {
  points: TonePoint[];
  line: Segment | null;
  // polygon around the line: +/- 2 sigma of the line-induced distance
  band: { x: number; y: number }[] | null;
}

/** Clip the normal-form line r = c*cos(phi) + L*sin(phi) to [0,100]^2. */
export function clipLineToSquare(r: number, phiDeg: number): Segment | null {
  const phi = (phiDeg * Math.PI) / 180;
  const cos = Math.cos(phi);
  const sin = Math.sin(phi);
  // p(t) = r*(cos, sin) + t*(-sin, cos)
  let lo = -Infinity;
  let hi = Infinity;
  for (const [offset, slope] of [
    [r * cos, -sin],
    [r * sin, cos],
  ] as [number, number][]) {
    if (Math.abs(slope) < 1e-12) {
      if (offset < 0 || offset > 100) return null;
      continue;
    }
    const t0 = (0 - offset) / slope;
    const t1 = (100 - offset) / slope;
    lo = Math.max(lo, Math.min(t0, t1));
    hi = Math.min(hi, Math.max(t0, t1));
  }
  if (!(lo < hi) || !isFinite(lo) || !isFinite(hi)) return null;
  return {
    x1: r * cos - lo * sin,
    y1: r * sin + lo * cos,
    x2: r * cos - hi * sin,
    y2: r * sin + hi * cos,
  };
}

export function tonePlaneScene(report: Report | null): ToneScene {
  if (!report) return { points: [], line: null, band: null };
  const points: TonePoint[] = report.per_color.map((entry) => ({
    c: entry.lch[1],
    L: entry.lch[0],
    hex: entry.hex,
    inlier: entry.inlier,
    accepted: entry.tone_accepted,
    rx: 2 * Math.sqrt(entry.tone_cov[0]?.[0] ?? 0),
    ry: 2 * Math.sqrt(entry.tone_cov[1]?.[1] ?? 0),
  }));
  let line: Segment | null = null;
  let band: { x: number; y: number }[] | null = null;
  if (report.line) {
    line = clipLineToSquare(report.line.r, report.line.phi_deg);
    if (line && report.line.cov) {
      band = lineBand(report.line.r, report.line.phi_deg, report.line.cov, line);
    }
  }
  return { points, line, band };
}

/**
 * Uncertainty band: at sample points along the segment, the 2-sigma spread
 * of the line's position induced by its (r, phi) covariance, drawn along
 * the normal direction. Pure propagation of server-provided covariance.
 */
function lineBand(
  r: number,
  phiDeg: number,
  cov: number[][],
  seg: Segment,
  samples = 24,
): { x: number; y: number }[] {
  const phi = (phiDeg * Math.PI) / 180;
  const cos = Math.cos(phi);
  const sin = Math.sin(phi);
  const c00 = cov[0]?.[0] ?? 0;
  const c01 = cov[0]?.[1] ?? 0;
  const c11 = cov[1]?.[1] ?? 0;
  const upper: { x: number; y: number }[] = [];
  const lower: { x: number; y: number }[] = [];
  for (let i = 0; i <= samples; i++) {
    const f = i / samples;
    const x = seg.x1 + f * (seg.x2 - seg.x1);
    const y = seg.y1 + f * (seg.y2 - seg.y1);
    // d(distance)/d(r, phi) = (1, x*sin - y*cos)
    const g = x * sin - y * cos;
    const sigma = Math.sqrt(Math.max(c00 + 2 * g * c01 + g * g * c11, 0));
    const w = 2 * sigma;
    upper.push({ x: x + w * cos, y: y + w * sin });
    lower.push({ x: x - w * cos, y: y - w * sin });
  }
  return [...upper, ...lower.reverse()];
}

/** Swatch label with the exact server-side coordinates, for accessibility. */
export function swatchLabel(lch: [number, number, number]): string {
  return `L=${lch[0].toFixed(1)} c=${lch[1].toFixed(1)} h=${lch[2].toFixed(1)}`;
}
