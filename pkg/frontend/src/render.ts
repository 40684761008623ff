// Canvas drawing of the hue wheel and the tone plane. The wheel rim is a
// decorative CSS-HSL gradient; all data marks come straight from the scene
// primitives (server values).

import { ToneScene, WheelScene } from "./scene.js";

const GRID = "#9a9a9a";
const INK = "#2b2b2b";

export function drawHueWheel(ctx: CanvasRenderingContext2D, scene: WheelScene): void {
  const { width, height } = ctx.canvas;
  const cx = width / 2;
  const cy = height / 2;
  const rim = Math.min(cx, cy) - 6;
  ctx.clearRect(0, 0, width, height);

  // decorative rim
  const step = Math.PI / 180;
  for (let deg = 0; deg < 360; deg++) {
    ctx.beginPath();
    ctx.strokeStyle = `hsl(${deg}, 85%, 55%)`;
    ctx.lineWidth = 10;
    ctx.arc(cx, cy, rim - 5, (deg - 90.5) * step, (deg - 89.3) * step);
    ctx.stroke();
  }

  // one translucent arc per color: hue +/- sigma
  scene.arcs.forEach((arc, i) => {
    const radius = rim - 22 - i * 14;
    if (radius < 20) return;
    ctx.beginPath();
    ctx.strokeStyle = arc.hex;
    ctx.globalAlpha = arc.accepted ? 0.9 : 0.35;
    ctx.lineWidth = 10;
    ctx.arc(
      cx,
      cy,
      radius,
      (arc.hue - arc.halfWidth - 90) * step,
      (arc.hue + arc.halfWidth - 90) * step,
    );
    ctx.stroke();
    ctx.globalAlpha = 1;
    // tick at the mean hue
    const a = (arc.hue - 90) * step;
    ctx.beginPath();
    ctx.strokeStyle = INK;
    ctx.lineWidth = 2;
    ctx.moveTo(cx + (radius - 7) * Math.cos(a), cy + (radius - 7) * Math.sin(a));
    ctx.lineTo(cx + (radius + 7) * Math.cos(a), cy + (radius + 7) * Math.sin(a));
    ctx.stroke();
  });

  if (scene.fused) {
    const a = (scene.fused.hue - 90) * step;
    ctx.beginPath();
    ctx.fillStyle = INK;
    ctx.arc(cx + (rim - 14) * Math.cos(a), cy + (rim - 14) * Math.sin(a), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

export function drawTonePlane(ctx: CanvasRenderingContext2D, scene: ToneScene): void {
  const { width, height } = ctx.canvas;
  const pad = 28;
  const sx = (width - 2 * pad) / 100;
  const sy = (height - 2 * pad) / 100;
  const X = (c: number) => pad + c * sx;
  const Y = (L: number) => height - pad - L * sy; // lightness grows upward

  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = GRID;
  ctx.lineWidth = 1;
  ctx.strokeRect(pad, pad, 100 * sx, 100 * sy);
  ctx.fillStyle = INK;
  ctx.font = "11px system-ui";
  ctx.fillText("chroma →", width / 2 - 24, height - 8);
  ctx.save();
  ctx.translate(10, height / 2 + 30);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText("lightness →", 0, 0);
  ctx.restore();

  if (scene.band) {
    ctx.beginPath();
    scene.band.forEach((p, i) => {
      if (i === 0) ctx.moveTo(X(p.x), Y(p.y));
      else ctx.lineTo(X(p.x), Y(p.y));
    });
    ctx.closePath();
    ctx.fillStyle = "rgba(60, 60, 60, 0.12)";
    ctx.fill();
  }
  if (scene.line) {
    ctx.beginPath();
    ctx.strokeStyle = INK;
    ctx.lineWidth = 1.5;
    ctx.moveTo(X(scene.line.x1), Y(scene.line.y1));
    ctx.lineTo(X(scene.line.x2), Y(scene.line.y2));
    ctx.stroke();
  }
  for (const p of scene.points) {
    ctx.beginPath();
    ctx.ellipse(X(p.c), Y(p.L), p.rx * sx, p.ry * sy, 0, 0, 2 * Math.PI);
    ctx.strokeStyle = p.accepted ? "#3a3a3a" : "#b03030";
    ctx.setLineDash(p.inlier === false ? [4, 3] : []);
    ctx.lineWidth = 1.2;
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.beginPath();
    ctx.arc(X(p.c), Y(p.L), 6, 0, 2 * Math.PI);
    ctx.fillStyle = p.hex;
    ctx.fill();
    ctx.strokeStyle = p.accepted ? INK : "#b03030";
    ctx.stroke();
  }
}
