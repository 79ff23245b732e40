/**
 * Compose-flow view model: pick context axes, see the gesture ranking,
 * attach a file, send. The recommendation updates as axes change and the
 * top-ranked gesture stays selected until the sender overrides it.
 */

import type { Compose, ContextWire } from "./protocol.js";
import { recommendGestures, type UnlockGesture } from "./recommend.js";

export const MAX_PAYLOAD_BYTES = 16 * 1024 * 1024;

export interface ComposeState {
  context: ContextWire;
  ranking: UnlockGesture[];
  selectedGesture: UnlockGesture;
  userOverrode: boolean;
  fileName: string | null;
  fileError: string | null;
  canSubmit: boolean;
}

function encodeBase64(bytes: Uint8Array): string {
  let binary = "";
  const step = 0x8000;
  for (let i = 0; i < bytes.length; i += step) {
    binary += String.fromCharCode(...bytes.subarray(i, i + step));
  }
  return btoa(binary);
}

export class ComposeFlow {
  readonly state: ComposeState;
  private payload: Uint8Array | null = null;
  private mime = "application/octet-stream";

  constructor(
    context: ContextWire = { content: "Serious", relationship: "NotClose", location: "Public" },
    private readonly onChange: (state: ComposeState) => void = () => {},
  ) {
    const ranking = recommendGestures(context);
    this.state = {
      context,
      ranking,
      selectedGesture: ranking[0],
      userOverrode: false,
      fileName: null,
      fileError: null,
      canSubmit: false,
    };
  }

  setContext(context: Partial<ContextWire>): void {
    this.state.context = { ...this.state.context, ...context };
    this.state.ranking = recommendGestures(this.state.context);
    if (!this.state.userOverrode) {
      this.state.selectedGesture = this.state.ranking[0];
    }
    this.onChange(this.state);
  }

  selectGesture(gesture: UnlockGesture): void {
    this.state.selectedGesture = gesture;
    this.state.userOverrode = true;
    this.onChange(this.state);
  }

  attachFile(name: string, bytes: Uint8Array, mime: string): void {
    if (bytes.length === 0) {
      this.state.fileError = "file is empty";
      this.payload = null;
    } else if (bytes.length > MAX_PAYLOAD_BYTES) {
      this.state.fileError = `file exceeds ${MAX_PAYLOAD_BYTES / (1024 * 1024)} MiB`;
      this.payload = null;
    } else {
      this.state.fileError = null;
      this.payload = bytes;
      this.mime = mime;
      this.state.fileName = name;
    }
    this.state.canSubmit = this.payload !== null;
    this.onChange(this.state);
  }

  buildCompose(senderId: string, recipientId: string): Compose {
    if (!this.payload) throw new Error("attach a file first");
    return {
      type: "Compose",
      sender_id: senderId,
      recipient_id: recipientId,
      mime: this.mime,
      required_gesture: this.state.selectedGesture,
      gate_config: {},
      payload_b64: encodeBase64(this.payload),
      context: this.state.context,
    };
  }
}
