/**
 * Unlock-session view model.
 *
 * Cover fidelity is the contract here: media pixels exist only while the
 * last GateStateMsg said Unlocked. Any other phase tears the media down via
 * MediaSurface.cover() in the same message tick, and the surface contract is
 * removal, not hiding.
 */

import type {
  EnvelopeMeta,
  GateStateMsg,
  MediaChunk,
  ScreenshotEventMsg,
  WireMessage,
} from "./protocol.js";

export interface MediaSurface {
  /** Attach media pixels to the page. */
  reveal(bytes: Uint8Array, mime: string): void;
  /** Remove the media element entirely (idempotent). */
  cover(): void;
}

export interface SessionTransport {
  send(msg: WireMessage): void;
}

export interface ClientSessionView {
  sessionId: string | null;
  phase: "Locked" | "Unlocked";
  confidence: number;
  /** What to prompt the user to perform. */
  requiredGesture: string | null;
  mime: string | null;
  senderId: string | null;
  mediaState: "covered" | "revealed";
  notice: string | null;
  error: string | null;
}

function decodeBase64(b64: string): Uint8Array {
  const binary = atob(b64);
  const bytes = new Uint8Array(binary.length);
  for (let i = 0; i < binary.length; i++) bytes[i] = binary.charCodeAt(i);
  return bytes;
}

export class UnlockSession {
  readonly view: ClientSessionView = {
    sessionId: null,
    phase: "Locked",
    confidence: 0,
    requiredGesture: null,
    mime: null,
    senderId: null,
    mediaState: "covered",
    notice: null,
    error: null,
  };

  /** Set while the unlock view owns the screen; capture chords elsewhere
   *  (e.g. in the compose form) must not produce events. */
  focused = true;

  private chunks = new Map<number, Uint8Array>();
  private chunkTotal: number | null = null;

  constructor(
    private readonly transport: SessionTransport,
    private readonly surface: MediaSurface,
    private readonly onChange: (view: ClientSessionView) => void = () => {},
  ) {
    this.surface.cover();
  }

  handleMessage(msg: WireMessage): void {
    switch (msg.type) {
      case "EnvelopeMeta":
        this.onEnvelope(msg);
        break;
      case "GateStateMsg":
        this.onGateState(msg);
        break;
      case "MediaChunk":
        this.onChunk(msg);
        break;
      case "ScreenshotEventMsg":
        this.view.notice = `capture attempt logged (${msg.phase ?? "unknown"} screen)`;
        break;
      case "ErrorMsg":
        this.view.error = `${msg.code}: ${msg.detail}`;
        this.coverNow();
        break;
      default:
        break;
    }
    this.onChange(this.view);
  }

  private onEnvelope(msg: EnvelopeMeta): void {
    this.view.sessionId = msg.session_id;
    this.view.requiredGesture = msg.required_gesture;
    this.view.mime = msg.mime;
    this.view.senderId = msg.sender_id;
  }

  private onGateState(msg: GateStateMsg): void {
    this.view.phase = msg.phase;
    this.view.confidence = msg.confidence;
    if (msg.phase !== "Unlocked") {
      this.coverNow();
    } else {
      this.revealIfComplete();
    }
  }

  private onChunk(msg: MediaChunk): void {
    this.chunkTotal = msg.total;
    this.chunks.set(msg.seq, decodeBase64(msg.bytes_b64));
    this.revealIfComplete();
  }

  private revealIfComplete(): void {
    if (this.view.phase !== "Unlocked") return; // never render covered media
    if (this.chunkTotal === null || this.chunks.size < this.chunkTotal) return;
    const parts: Uint8Array[] = [];
    for (let i = 0; i < this.chunkTotal; i++) {
      const part = this.chunks.get(i);
      if (!part) return;
      parts.push(part);
    }
    const total = parts.reduce((n, p) => n + p.length, 0);
    const bytes = new Uint8Array(total);
    let offset = 0;
    for (const part of parts) {
      bytes.set(part, offset);
      offset += part.length;
    }
    this.surface.reveal(bytes, this.view.mime ?? "application/octet-stream");
    this.view.mediaState = "revealed";
  }

  private coverNow(): void {
    this.surface.cover();
    this.view.mediaState = "covered";
  }

  sendFrame(frameLine: string): void {
    if (!this.view.sessionId) return;
    this.transport.send({
      type: "LandmarkFrameMsg",
      session_id: this.view.sessionId,
      frame: frameLine,
    });
  }

  /** Capture key chord pressed. Returns the event that was sent, if any. */
  captureChord(): ScreenshotEventMsg | null {
    if (!this.focused || !this.view.sessionId) return null;
    const event: ScreenshotEventMsg = {
      type: "ScreenshotEventMsg",
      session_id: this.view.sessionId,
      method: "ButtonPress",
    };
    this.transport.send(event);
    this.view.notice = "capture discouraged: the sender asked for this to stay here";
    this.onChange(this.view);
    return event;
  }

  end(): void {
    if (this.view.sessionId) {
      this.transport.send({ type: "SessionEnd", session_id: this.view.sessionId });
    }
    this.coverNow();
    this.onChange(this.view);
  }
}
