/**
 * Landmark frame sources. Frames travel as trace-format lines
 * (`<timestamp_ms>;<hand_count>;...`), the exact strings the relay parses.
 *
 * TracePlaybackSource replays a prerecorded trace file (the golden-fixture
 * path used by tests and the desk demo). WebcamSource adapts whatever
 * in-browser hand tracker the host page provides and degrades to zero-hand
 * frames whenever tracking yields nothing.
 */

export interface LandmarkSource {
  /** Start emitting frame lines; returns a stop function. */
  start(onFrame: (frameLine: string) => void, onEnd?: () => void): () => void;
}

const HEADER_PREFIX = "HOTRACE v1 fps=";

export interface ParsedTrace {
  fps: number;
  frameLines: string[];
}

export function parseTraceFile(text: string): ParsedTrace {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0 || !lines[0].startsWith(HEADER_PREFIX)) {
    throw new Error("not a HOTRACE v1 file");
  }
  const fps = Number(lines[0].slice(HEADER_PREFIX.length));
  if (!Number.isFinite(fps) || fps <= 0) throw new Error("bad fps in trace header");
  return { fps, frameLines: lines.slice(1) };
}

export class TracePlaybackSource implements LandmarkSource {
  constructor(
    private readonly trace: ParsedTrace,
    /** 0 plays back as fast as the event loop allows (test mode). */
    private readonly intervalMs: number | null = null,
  ) {}

  start(onFrame: (frameLine: string) => void, onEnd?: () => void): () => void {
    const interval = this.intervalMs ?? 1000 / this.trace.fps;
    let index = 0;
    let stopped = false;
    const tick = () => {
      if (stopped) return;
      if (index >= this.trace.frameLines.length) {
        onEnd?.();
        return;
      }
      onFrame(this.trace.frameLines[index++]);
      timer = setTimeout(tick, interval);
    };
    let timer = setTimeout(tick, 0);
    return () => {
      stopped = true;
      clearTimeout(timer);
    };
  }
}

/** One tracked hand: 21 [x, y, z] keypoints plus which hand it is. */
export interface TrackedHand {
  handedness: "Left" | "Right";
  keypoints: ReadonlyArray<readonly [number, number, number]>;
}

export interface HandTracker {
  /** Resolve the hands visible right now; empty array when tracking fails. */
  read(): Promise<TrackedHand[]>;
}

const clamp01 = (v: number) => (v < 0 ? 0 : v > 1 ? 1 : v);

export function formatFrameLine(timestampMs: number, hands: TrackedHand[]): string {
  const parts = [String(Math.max(0, Math.round(timestampMs))), String(hands.length)];
  const rendered = hands.map((hand) => {
    if (hand.keypoints.length !== 21) throw new Error("a hand has exactly 21 keypoints");
    const points = hand.keypoints
      .map(([x, y, z]) => `${clamp01(x)},${clamp01(y)},${z}`)
      .join("|");
    return `${hand.handedness === "Left" ? "L" : "R"}:${points}`;
  });
  return `${parts.join(";")};${rendered.join(";")}`;
}

export class WebcamSource implements LandmarkSource {
  constructor(
    private readonly tracker: HandTracker,
    private readonly frameRate = 15,
  ) {}

  start(onFrame: (frameLine: string) => void): () => void {
    const started = Date.now();
    let stopped = false;
    const tick = async () => {
      if (stopped) return;
      let hands: TrackedHand[] = [];
      try {
        hands = (await this.tracker.read()).slice(0, 2);
      } catch {
        hands = []; // tracking failure degrades to a zero-hand frame
      }
      if (stopped) return;
      onFrame(formatFrameLine(Date.now() - started, hands));
      timer = setTimeout(tick, 1000 / this.frameRate);
    };
    let timer = setTimeout(tick, 0);
    return () => {
      stopped = true;
      clearTimeout(timer);
    };
  }
}
