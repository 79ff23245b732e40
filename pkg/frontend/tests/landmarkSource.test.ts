import { readFileSync } from "node:fs";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  formatFrameLine,
  parseTraceFile,
  TracePlaybackSource,
  WebcamSource,
  type TrackedHand,
} from "../src/landmarkSource.js";

const here = dirname(fileURLToPath(import.meta.url));
const waveTrace = readFileSync(join(here, "..", "fixtures", "wave.trace"), "utf-8");

function hand(handedness: "Left" | "Right" = "Right"): TrackedHand {
  return {
    handedness,
    keypoints: Array.from({ length: 21 }, (_, i) => [0.1 + i * 0.01, 0.5, 0] as const),
  };
}

describe("trace parsing and playback", () => {
  it("parses the golden fixture", () => {
    const trace = parseTraceFile(waveTrace);
    expect(trace.fps).toBe(30);
    expect(trace.frameLines.length).toBe(40);
    expect(trace.frameLines[0]).toMatch(/^0;2;/);
  });

  it("rejects non-trace content", () => {
    expect(() => parseTraceFile("hello")).toThrow(/HOTRACE/);
  });

  it("plays every frame in order and signals the end", async () => {
    const trace = parseTraceFile(waveTrace);
    const seen: string[] = [];
    await new Promise<void>((resolve) => {
      new TracePlaybackSource(trace, 0).start(
        (line) => seen.push(line),
        () => resolve(),
      );
    });
    expect(seen).toEqual(trace.frameLines);
  });

  it("stop halts playback", async () => {
    const trace = parseTraceFile(waveTrace);
    const seen: string[] = [];
    const stop = new TracePlaybackSource(trace, 5).start((line) => seen.push(line));
    await new Promise((r) => setTimeout(r, 30));
    stop();
    const count = seen.length;
    await new Promise((r) => setTimeout(r, 30));
    expect(seen.length).toBe(count);
    expect(count).toBeLessThan(trace.frameLines.length);
  });
});

describe("webcam frame formatting", () => {
  it("renders tracked hands in the wire format", () => {
    const line = formatFrameLine(120, [hand("Left"), hand("Right")]);
    expect(line).toMatch(/^120;2;L:/);
    expect(line.split(";")).toHaveLength(4);
    expect(line.split(";")[2].split("|")).toHaveLength(21);
  });

  it("clamps coordinates into the unit square", () => {
    const wild: TrackedHand = {
      handedness: "Right",
      keypoints: Array.from({ length: 21 }, () => [-0.5, 1.7, 0.2] as const),
    };
    const line = formatFrameLine(0, [wild]);
    expect(line).toContain("0,1,0.2");
  });

  it("degrades to zero-hand frames when tracking fails", async () => {
    const tracker = { read: () => Promise.reject(new Error("no camera")) };
    const source = new WebcamSource(tracker, 200);
    const lines: string[] = [];
    const stop = source.start((line) => lines.push(line));
    await new Promise((r) => setTimeout(r, 30));
    stop();
    expect(lines.length).toBeGreaterThan(0);
    for (const line of lines) {
      expect(line).toMatch(/^\d+;0;$/);
    }
  });

  it("caps hands at two", async () => {
    const tracker = { read: () => Promise.resolve([hand("Left"), hand("Right"), hand("Left")]) };
    const source = new WebcamSource(tracker, 200);
    const lines: string[] = [];
    const stop = source.start((line) => lines.push(line));
    await new Promise((r) => setTimeout(r, 30));
    stop();
    expect(lines[0].split(";")[1]).toBe("2");
  });
});
