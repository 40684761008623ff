import { ApiClient } from "./api.js";
import { drawHueWheel, drawTonePlane } from "./render.js";
import { hueWheelScene, swatchLabel, tonePlaneScene } from "./scene.js";
import { DEFAULT_PARAMS, PaletteSession, UiState } from "./state.js";

const api = new ApiClient("");
const session = new PaletteSession(api);

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const wheelCanvas = $<HTMLCanvasElement>("hue-wheel");
const toneCanvas = $<HTMLCanvasElement>("tone-plane");
const swatchList = $<HTMLUListElement>("swatches");
const suggestionTray = $<HTMLDivElement>("suggestions");
const badge = $<HTMLSpanElement>("badge");
const patternLabels = $<HTMLSpanElement>("pattern-labels");
const banner = $<HTMLDivElement>("error-banner");

function render(state: UiState): void {
  const wheelCtx = wheelCanvas.getContext("2d");
  const toneCtx = toneCanvas.getContext("2d");
  if (wheelCtx) drawHueWheel(wheelCtx, hueWheelScene(state.report));
  if (toneCtx) drawTonePlane(toneCtx, tonePlaneScene(state.report));

  if (state.report) {
    badge.textContent = state.report.harmonic
      ? `harmonic · ${state.report.score}/10`
      : "not harmonic";
    badge.className = state.report.harmonic ? "badge ok" : "badge bad";
    patternLabels.textContent =
      `hue: ${state.report.hue_pattern} · tone: ${state.report.tone_pattern}`;
  } else {
    badge.textContent = "add a color";
    badge.className = "badge";
    patternLabels.textContent = "";
  }

  swatchList.replaceChildren(
    ...(state.report?.per_color ?? []).map((entry) => {
      const li = document.createElement("li");
      li.className = "swatch";
      const chip = document.createElement("span");
      chip.className = "chip";
      chip.style.background = entry.hex;
      chip.title = entry.hex;
      const label = document.createElement("span");
      label.textContent = `${entry.hex}  ${swatchLabel(entry.lch)}`;
      li.append(chip, label);
      if (!entry.hue_accepted || !entry.tone_accepted) {
        const warn = document.createElement("span");
        warn.className = "warn";
        warn.textContent = !entry.tone_accepted
          ? entry.tone_db_min !== null && entry.tone_db_min < 3
            ? "ambiguous tones"
            : "off the tone line"
          : "breaks the hue pattern";
        li.append(warn);
      }
      return li;
    }),
  );

  suggestionTray.replaceChildren(
    ...state.suggestions.map((s) => {
      const btn = document.createElement("button");
      btn.className = "suggestion";
      btn.style.background = s.hex;
      btn.title = `${s.hex} · score ${s.score.toFixed(2)}`;
      btn.setAttribute("aria-label", `add ${swatchLabel(s.lch)}`);
      const tag = document.createElement("span");
      tag.textContent = swatchLabel(s.lch);
      btn.append(tag);
      btn.addEventListener("click", () => void session.addColor(s.lch));
      return btn;
    }),
  );

  banner.hidden = !state.error;
  if (state.error) $<HTMLSpanElement>("error-text").textContent = state.error;
  $<HTMLButtonElement>("undo").disabled = state.tokens.length === 0 || state.busy;
}

session.subscribe(render);

$<HTMLFormElement>("add-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const field = $<HTMLInputElement>("hex-field");
  const token = field.value.trim();
  if (token) {
    void session.addColor(token);
    field.value = "";
  }
});

$<HTMLInputElement>("color-picker").addEventListener("change", (ev) => {
  void session.addColor((ev.target as HTMLInputElement).value);
});

$<HTMLButtonElement>("undo").addEventListener("click", () => void session.undo());
$<HTMLButtonElement>("dismiss-error").addEventListener("click", () =>
  session.dismissError(),
);

const nSlider = $<HTMLInputElement>("n-slider");
nSlider.addEventListener("change", () => {
  $<HTMLSpanElement>("n-value").textContent = nSlider.value;
  void session.setSuggestionCount(Number(nSlider.value));
});

// Parameter panel: six live sliders; changing one rebuilds the session.
const paramPanel = $<HTMLDivElement>("param-panel");
for (const [key, value] of Object.entries(DEFAULT_PARAMS)) {
  const row = document.createElement("label");
  row.className = "param-row";
  const name = document.createElement("span");
  name.textContent = key;
  const input = document.createElement("input");
  input.type = "number";
  input.step = "0.5";
  input.min = "0.5";
  input.value = String(value);
  input.dataset.param = key;
  const apply = () => {
    const params = { ...session.current.params, [key]: Number(input.value) };
    void session.setParams(params);
  };
  input.addEventListener("change", apply);
  row.append(name, input);
  paramPanel.append(row);
}

void session.init().then(() => render(session.current));
