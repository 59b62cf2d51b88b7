import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiError } from "../src/api";
import { DEBOUNCE_MS, TunerController, offendingParam } from "../src/controller";
import {
  FakeBackend,
  LAYERS,
  PNG_BLOB,
  flushMicrotasks,
  recordingView,
} from "./helpers";

async function establishedSession() {
  const backend = new FakeBackend();
  const { view, log } = recordingView();
  const controller = new TunerController(backend, view);
  await controller.uploadPair(PNG_BLOB, PNG_BLOB);
  await flushMicrotasks();
  // settle the initial render issued right after upload
  backend.hybridCalls.shift()!.respond(PNG_BLOB);
  backend.layersCalls.shift()!.respond(LAYERS);
  await flushMicrotasks();
  log.previews.length = 0;
  log.lowPanelUpdates.length = 0;
  log.highPanelUpdates.length = 0;
  return { backend, controller, log };
}

describe("TunerController", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("upload establishes a session and renders initial preview and layers", async () => {
    const backend = new FakeBackend();
    const { view, log } = recordingView();
    const controller = new TunerController(backend, view);
    expect(controller.controlsEnabled).toBe(false);

    await controller.uploadPair(PNG_BLOB, PNG_BLOB);
    await flushMicrotasks();

    expect(log.sessions.at(-1)?.session_id).toBe("session-1");
    expect(controller.controlsEnabled).toBe(true);
    expect(backend.hybridCalls).toHaveLength(1);
    expect(backend.layersCalls).toHaveLength(1);
  });

  it("a new upload replaces the session and deletes the old one", async () => {
    const { backend, controller } = await establishedSession();
    await controller.uploadPair(PNG_BLOB, PNG_BLOB);
    await flushMicrotasks();
    expect(backend.deleted).toEqual(["session-1"]);
    expect(controller.session?.session_id).toBe("session-2");
  });

  it("upload failure surfaces the service reason inline", async () => {
    const backend = new FakeBackend();
    backend.createSession = async () => {
      throw new ApiError(400, "alpha channel present (mode RGBA)");
    };
    const { view, log } = recordingView();
    const controller = new TunerController(backend, view);
    await controller.uploadPair(PNG_BLOB, PNG_BLOB);
    expect(log.errors).toEqual([
      { source: "upload", message: "alpha channel present (mode RGBA)" },
    ]);
    expect(controller.controlsEnabled).toBe(false);
  });

  it("parameter changes are debounced into one request", async () => {
    const { backend, controller } = await establishedSession();
    controller.setParam("weight", 0.1);
    vi.advanceTimersByTime(DEBOUNCE_MS - 10);
    controller.setParam("weight", 0.2);
    controller.setParam("weight", 0.3);
    expect(backend.hybridCalls).toHaveLength(0);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    expect(backend.hybridCalls).toHaveLength(1);
    expect(backend.hybridCalls[0].params.weight).toBe(0.3);
  });

  it("scripted slider drag ends with the displayed preview matching the final parameters", async () => {
    const { backend, controller, log } = await establishedSession();

    // first movement fires a request
    controller.setParam("weight", 0.2);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    expect(backend.hybridCalls).toHaveLength(1);

    // drag continues while that request is in flight
    controller.setParam("weight", 0.6);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    controller.setParam("weight", 0.9);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    expect(backend.hybridCalls).toHaveLength(1); // single-flight holds

    // stale response arrives: discarded, replaced by a request at the newest params
    backend.hybridCalls[0].respond(PNG_BLOB);
    await flushMicrotasks();
    expect(log.previews).toHaveLength(0);
    expect(backend.hybridCalls).toHaveLength(2);
    expect(backend.hybridCalls[1].params.weight).toBe(0.9);

    backend.hybridCalls[1].respond(PNG_BLOB);
    await flushMicrotasks();
    expect(log.previews).toHaveLength(1);
    expect(log.previews[0].weight).toBe(0.9);
    expect(controller.displayedParams?.weight).toBe(0.9);
    // in-flight drained: shown parameters equal the rendered parameters
    expect(controller.inFlightCount).toBe(0);
    expect(controller.displayedParams).toEqual(controller.params);
  });

  it("mode toggle refreshes only the high panel", async () => {
    const { backend, controller, log } = await establishedSession();
    controller.setParam("mode", "log");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();

    backend.hybridCalls.shift()!.respond(PNG_BLOB);
    backend.layersCalls.shift()!.respond(LAYERS);
    await flushMicrotasks();

    expect(log.highPanelUpdates).toEqual([{ sigmaHigh: 7, mode: "log" }]);
    expect(log.lowPanelUpdates).toHaveLength(0);
  });

  it("sigma_low change refreshes only the low panel", async () => {
    const { backend, controller, log } = await establishedSession();
    controller.setParam("sigmaLow", 12);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();

    backend.hybridCalls.shift()!.respond(PNG_BLOB);
    backend.layersCalls.shift()!.respond(LAYERS);
    await flushMicrotasks();

    expect(log.lowPanelUpdates).toEqual([12]);
    expect(log.highPanelUpdates).toHaveLength(0);
  });

  it("a panel refresh lost to a stale response is reissued", async () => {
    const { backend, controller, log } = await establishedSession();
    controller.setParam("mode", "log");
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    const first = backend.layersCalls.shift()!;

    // sigma_low moves while the layers request is outstanding
    controller.setParam("sigmaLow", 3);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();

    first.respond(LAYERS); // superseded; must not paint
    await flushMicrotasks();
    expect(log.highPanelUpdates).toHaveLength(0);

    backend.layersCalls.shift()!.respond(LAYERS);
    await flushMicrotasks();
    // the retry repaints both panels that were pending
    expect(log.highPanelUpdates).toEqual([{ sigmaHigh: 7, mode: "log" }]);
    expect(log.lowPanelUpdates).toEqual([3]);
  });

  it("422 responses surface next to the offending slider", async () => {
    const { backend, controller, log } = await establishedSession();
    controller.setParam("weight", 0.42);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    backend.hybridCalls.shift()!.fail(
      new ApiError(422, "weight: ensure this value is less than or equal to 1"),
    );
    backend.layersCalls.shift()?.respond(LAYERS);
    await flushMicrotasks();
    expect(log.errors).toHaveLength(1);
    expect(log.errors[0].source).toBe("weight");
  });

  it("no requests are issued before a session exists", () => {
    const backend = new FakeBackend();
    const { view } = recordingView();
    const controller = new TunerController(backend, view);
    controller.setParam("weight", 0.9);
    vi.advanceTimersByTime(DEBOUNCE_MS * 2);
    expect(backend.hybridCalls).toHaveLength(0);
    expect(backend.layersCalls).toHaveLength(0);
  });

  it("distance slider changes the requested preview scale", async () => {
    const { backend, controller } = await establishedSession();
    controller.setParam("distance", 2);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    await flushMicrotasks();
    expect(backend.hybridCalls[0].params.distance).toBe(2);
  });

  it("emits the equivalent CLI invocation", async () => {
    const { controller } = await establishedSession();
    controller.setParam("sigmaLow", 30);
    controller.setParam("weight", 0.65);
    expect(controller.cliInvocation()).toBe(
      "hybridlens hybrid low.png high.png hybrid.png " +
        "--sigma-low 30 --sigma-high 7 --weight 0.65 --mode subtract",
    );
  });
});

describe("offendingParam", () => {
  it("maps wire names onto slider identifiers", () => {
    expect(offendingParam("query sigma_low out of range")).toBe("sigmaLow");
    expect(offendingParam("bad weight")).toBe("weight");
    expect(offendingParam("scale must be positive")).toBe("distance");
    expect(offendingParam("something else")).toBeNull();
  });
});
