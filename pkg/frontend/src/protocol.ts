/**
 * Wire protocol v1: single-line JSON records shared with the relay.
 * Every record is {"v":1,"type":"<Name>",...fields}; optional fields are
 * omitted (never null) on the wire.
 */

export const PROTOCOL_VERSION = 1;

export interface GateConfigWire {
  confidence_threshold?: number;
  dwell_frames?: number;
  grace_frames?: number;
}

export interface ContextWire {
  content: "Serious" | "Silly";
  relationship: "Close" | "NotClose";
  location: "Public" | "Private";
}

export interface Compose {
  type: "Compose";
  sender_id: string;
  recipient_id: string;
  mime: string;
  required_gesture: string;
  gate_config: GateConfigWire;
  payload_b64: string;
  context?: ContextWire;
}

export interface ComposeAck {
  type: "ComposeAck";
  media_id: string;
}

export interface UnlockRequest {
  type: "UnlockRequest";
  media_id: string;
  recipient_id: string;
}

export interface LandmarkFrameMsg {
  type: "LandmarkFrameMsg";
  session_id: string;
  frame: string;
}

export interface GateStateMsg {
  type: "GateStateMsg";
  session_id: string;
  phase: "Locked" | "Unlocked";
  confidence: number;
}

export interface MediaChunk {
  type: "MediaChunk";
  session_id: string;
  seq: number;
  total: number;
  bytes_b64: string;
}

export interface ScreenshotEventMsg {
  type: "ScreenshotEventMsg";
  session_id: string;
  method: string;
  phase?: string;
}

export interface SessionEnd {
  type: "SessionEnd";
  session_id: string;
}

export interface ErrorMsg {
  type: "ErrorMsg";
  code: string;
  detail: string;
  session_id?: string;
}

export interface EnvelopeMeta {
  type: "EnvelopeMeta";
  session_id: string;
  media_id: string;
  required_gesture: string;
  mime: string;
  sender_id: string;
  recipient_id: string;
  gate_config: GateConfigWire;
  context?: ContextWire;
}

export type WireMessage =
  | Compose
  | ComposeAck
  | UnlockRequest
  | LandmarkFrameMsg
  | GateStateMsg
  | MediaChunk
  | ScreenshotEventMsg
  | SessionEnd
  | ErrorMsg
  | EnvelopeMeta;

const MESSAGE_TYPES = new Set<string>([
  "Compose",
  "ComposeAck",
  "UnlockRequest",
  "LandmarkFrameMsg",
  "GateStateMsg",
  "MediaChunk",
  "ScreenshotEventMsg",
  "SessionEnd",
  "ErrorMsg",
  "EnvelopeMeta",
]);

export class ProtocolError extends Error {}

export function encodeMessage(msg: WireMessage): string {
  const record: Record<string, unknown> = { v: PROTOCOL_VERSION };
  for (const [key, value] of Object.entries(msg)) {
    if (value !== undefined && value !== null) record[key] = value;
  }
  return JSON.stringify(record);
}

export function decodeMessage(line: string): WireMessage {
  let record: unknown;
  try {
    record = JSON.parse(line);
  } catch (err) {
    throw new ProtocolError(`not a JSON record: ${err}`);
  }
  if (typeof record !== "object" || record === null || Array.isArray(record)) {
    throw new ProtocolError("record must be a JSON object");
  }
  const obj = record as Record<string, unknown>;
  if (obj.v !== PROTOCOL_VERSION) {
    throw new ProtocolError(`unsupported protocol version ${obj.v}`);
  }
  if (typeof obj.type !== "string" || !MESSAGE_TYPES.has(obj.type)) {
    throw new ProtocolError(`unknown message type ${obj.type}`);
  }
  const { v: _v, ...fields } = obj;
  return fields as unknown as WireMessage;
}
