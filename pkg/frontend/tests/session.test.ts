import { describe, expect, it } from "vitest";

import { UnlockSession, type MediaSurface } from "../src/session.js";
import type { WireMessage } from "../src/protocol.js";

class RecordingSurface implements MediaSurface {
  present = false; // the media element exists in the "document"
  log: string[] = [];

  reveal(bytes: Uint8Array, mime: string): void {
    this.present = true;
    this.log.push(`reveal:${bytes.length}:${mime}`);
  }

  cover(): void {
    this.present = false;
    this.log.push("cover");
  }
}

function makeSession() {
  const sent: WireMessage[] = [];
  const surface = new RecordingSurface();
  const session = new UnlockSession({ send: (m) => sent.push(m) }, surface);
  session.handleMessage({
    type: "EnvelopeMeta",
    session_id: "s-1",
    media_id: "m-1",
    required_gesture: "wave",
    mime: "image/png",
    sender_id: "alice",
    recipient_id: "bob",
    gate_config: {},
  });
  session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Locked", confidence: 0 });
  return { session, surface, sent };
}

const chunk = (seq: number, total: number, data = "aGlkZGVu") =>
  ({ type: "MediaChunk", session_id: "s-1", seq, total, bytes_b64: data }) as const;

describe("unlock session view model", () => {
  it("starts covered and records the envelope prompt", () => {
    const { session, surface } = makeSession();
    expect(session.view.requiredGesture).toBe("wave");
    expect(session.view.mediaState).toBe("covered");
    expect(surface.present).toBe(false);
  });

  it("renders media only when the last gate state is Unlocked", () => {
    const { session, surface } = makeSession();
    // chunks arriving while covered must not render anything
    session.handleMessage(chunk(0, 2));
    expect(surface.present).toBe(false);
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.96 });
    session.handleMessage(chunk(1, 2));
    expect(surface.present).toBe(true);
    expect(session.view.mediaState).toBe("revealed");
  });

  it("removes media in the same tick the gate relocks", () => {
    const { session, surface } = makeSession();
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.96 });
    session.handleMessage(chunk(0, 1));
    expect(surface.present).toBe(true);
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Locked", confidence: 0.9 });
    expect(surface.present).toBe(false);
    expect(session.view.mediaState).toBe("covered");
  });

  it("re-reveals after a fresh unlock retransmission", () => {
    const { session, surface } = makeSession();
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.96 });
    session.handleMessage(chunk(0, 1));
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Locked", confidence: 0.9 });
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.97 });
    session.handleMessage(chunk(0, 1));
    expect(surface.present).toBe(true);
  });

  it("assembles chunks in order regardless of arrival", () => {
    const { session, surface } = makeSession();
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.96 });
    session.handleMessage(chunk(1, 2, btoa("world")));
    expect(surface.present).toBe(false); // incomplete
    session.handleMessage(chunk(0, 2, btoa("hello ")));
    expect(surface.log.at(-1)).toBe("reveal:11:image/png");
  });

  it("errors tear the media down", () => {
    const { session, surface } = makeSession();
    session.handleMessage({ type: "GateStateMsg", session_id: "s-1", phase: "Unlocked", confidence: 0.96 });
    session.handleMessage(chunk(0, 1));
    session.handleMessage({ type: "ErrorMsg", code: "MalformedFrame", detail: "boom" });
    expect(surface.present).toBe(false);
    expect(session.view.error).toContain("MalformedFrame");
  });

  it("capture chord sends a ButtonPress event and shows the notice", () => {
    const { session, sent } = makeSession();
    const event = session.captureChord();
    expect(event).not.toBeNull();
    expect(sent.at(-1)).toMatchObject({ type: "ScreenshotEventMsg", method: "ButtonPress" });
    expect(session.view.notice).toContain("capture discouraged");
  });

  it("capture chord outside the unlock view sends nothing", () => {
    const { session, sent } = makeSession();
    const before = sent.length;
    session.focused = false; // e.g. the compose form owns the screen
    expect(session.captureChord()).toBeNull();
    expect(sent.length).toBe(before);
  });

  it("frames are tagged with the session id", () => {
    const { session, sent } = makeSession();
    session.sendFrame("0;0;");
    expect(sent.at(-1)).toEqual({ type: "LandmarkFrameMsg", session_id: "s-1", frame: "0;0;" });
  });
});
