import { TunerApi } from "./api.js";
import { TunerController, ParamName } from "./controller.js";
import {
  DISTANCE_SCALES,
  HighpassMode,
  SIGMA_MAX,
  SIGMA_MIN,
  SIGMA_STEP,
  TunerParams,
  WEIGHT_STEP,
} from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const preview = el<HTMLImageElement>("preview");
const layerLow = el<HTMLImageElement>("layer-low");
const layerHigh = el<HTMLImageElement>("layer-high");
const layerLowLabel = el<HTMLElement>("layer-low-label");
const layerHighLabel = el<HTMLElement>("layer-high-label");
const statusLine = el<HTMLElement>("status");
const errorLine = el<HTMLElement>("error");
const spinner = el<HTMLElement>("busy");
const controls = el<HTMLFieldSetElement>("controls");
const previewParams = el<HTMLElement>("preview-params");

let previewUrl: string | null = null;

const controller = new TunerController(new TunerApi(), {
  onSessionChange(session) {
    controls.disabled = session === null;
    statusLine.textContent = session
      ? `session ${session.session_id.slice(0, 8)}… (${session.width}×${session.height})`
      : "upload two images to start";
    errorLine.textContent = "";
  },
  onPreview(image, params) {
    if (previewUrl) URL.revokeObjectURL(previewUrl);
    previewUrl = URL.createObjectURL(image);
    preview.src = previewUrl;
    previewParams.textContent =
      `σ_low=${params.sigmaLow} σ_high=${params.sigmaHigh} ` +
      `weight=${params.weight} mode=${params.mode} ` +
      `scale=${DISTANCE_SCALES[params.distance]}`;
    errorLine.textContent = "";
    clearFieldErrors();
  },
  onLayerLow(pngB64, sigmaLow) {
    layerLow.src = `data:image/png;base64,${pngB64}`;
    layerLowLabel.textContent = `lowpass layer, σ=${sigmaLow}`;
  },
  onLayerHigh(pngB64, sigmaHigh, mode) {
    layerHigh.src = `data:image/png;base64,${pngB64}`;
    layerHighLabel.textContent = `highpass layer, σ=${sigmaHigh} (${mode})`;
  },
  onError(source, message) {
    if (source === "upload") {
      errorLine.textContent = message;
      return;
    }
    const field = document.querySelector<HTMLElement>(`[data-error-for="${source}"]`);
    if (field) field.textContent = message;
    else errorLine.textContent = message;
  },
  onBusyChange(inFlight) {
    spinner.style.visibility = inFlight > 0 ? "visible" : "hidden";
  },
});

function clearFieldErrors(): void {
  document
    .querySelectorAll<HTMLElement>("[data-error-for]")
    .forEach((node) => (node.textContent = ""));
}

function bindSlider(
  id: string,
  param: ParamName,
  valueLabelId: string,
  parse: (raw: string) => TunerParams[ParamName],
): void {
  const input = el<HTMLInputElement>(id);
  const label = el<HTMLElement>(valueLabelId);
  label.textContent = input.value;
  input.addEventListener("input", () => {
    clearFieldErrors();
    label.textContent = input.value;
    controller.setParam(param, parse(input.value) as never);
  });
}

function setupSigma(id: string, labelId: string, param: ParamName): void {
  const input = el<HTMLInputElement>(id);
  input.min = String(SIGMA_MIN);
  input.max = String(SIGMA_MAX);
  input.step = String(SIGMA_STEP);
  bindSlider(id, param, labelId, Number);
}

setupSigma("sigma-low", "sigma-low-value", "sigmaLow");
setupSigma("sigma-high", "sigma-high-value", "sigmaHigh");

const weightInput = el<HTMLInputElement>("weight");
weightInput.step = String(WEIGHT_STEP);
bindSlider("weight", "weight", "weight-value", Number);
bindSlider("distance", "distance", "distance-value", Number);

el<HTMLSelectElement>("mode").addEventListener("change", (event) => {
  clearFieldErrors();
  controller.setParam("mode", (event.target as HTMLSelectElement).value as HighpassMode);
});

el<HTMLButtonElement>("copy-params").addEventListener("click", () => {
  const command = controller.cliInvocation();
  void navigator.clipboard?.writeText(command);
  statusLine.textContent = command;
});

el<HTMLFormElement>("upload-form").addEventListener("submit", (event) => {
  event.preventDefault();
  const low = el<HTMLInputElement>("file-low").files?.[0];
  const high = el<HTMLInputElement>("file-high").files?.[0];
  errorLine.textContent = "";
  if (!low || !high) {
    errorLine.textContent = "choose both images first";
    return;
  }
  controls.disabled = true;
  void controller.uploadPair(low, high);
});
