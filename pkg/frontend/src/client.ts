/**
 * Connection wrapper over a browser-style WebSocket (the real one in the
 * page, `ws` in node tests). One connection per role: a sender connection
 * composes; a recipient connection runs one unlock session.
 */

import type { ComposeAck, Compose, WireMessage } from "./protocol.js";
import { decodeMessage, encodeMessage } from "./protocol.js";
import type { LandmarkSource } from "./landmarkSource.js";
import type { MediaSurface, ClientSessionView } from "./session.js";
import { UnlockSession } from "./session.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "message" | "close" | "error", listener: (event: any) => void): void;
}

export type SocketFactory = (url: string) => SocketLike;

function openSocket(factory: SocketFactory, url: string): Promise<SocketLike> {
  return new Promise((resolve, reject) => {
    const socket = factory(url);
    socket.addEventListener("open", () => resolve(socket));
    socket.addEventListener("error", (event) => reject(event?.error ?? new Error("socket error")));
  });
}

export class RelayClient {
  constructor(
    private readonly url: string,
    private readonly socketFactory: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {}

  /** Send one Compose and resolve its ComposeAck. */
  async compose(message: Compose): Promise<ComposeAck> {
    const socket = await openSocket(this.socketFactory, this.url);
    try {
      const ack = new Promise<ComposeAck>((resolve, reject) => {
        socket.addEventListener("message", (event) => {
          const msg = decodeMessage(String(event.data));
          if (msg.type === "ComposeAck") resolve(msg);
          else if (msg.type === "ErrorMsg") reject(new Error(`${msg.code}: ${msg.detail}`));
        });
        socket.addEventListener("close", () => reject(new Error("connection closed")));
      });
      socket.send(encodeMessage(message));
      return await ack;
    } finally {
      socket.close();
    }
  }

  /**
   * Open an unlock session for media and pump frames from the landmark
   * source until stopped. Resolves once the session id is known.
   */
  async openUnlock(
    mediaId: string,
    recipientId: string,
    surface: MediaSurface,
    source: LandmarkSource,
    onChange: (view: ClientSessionView) => void = () => {},
  ): Promise<{ session: UnlockSession; stop: () => void }> {
    const socket = await openSocket(this.socketFactory, this.url);
    const session = new UnlockSession({ send: (m: WireMessage) => socket.send(encodeMessage(m)) }, surface, onChange);

    const ready = new Promise<void>((resolve, reject) => {
      socket.addEventListener("message", (event) => {
        const msg = decodeMessage(String(event.data));
        session.handleMessage(msg);
        if (msg.type === "EnvelopeMeta") resolve();
        if (msg.type === "ErrorMsg" && !session.view.sessionId) {
          reject(new Error(`${msg.code}: ${msg.detail}`));
        }
      });
    });
    socket.send(encodeMessage({ type: "UnlockRequest", media_id: mediaId, recipient_id: recipientId }));
    await ready;

    const stopSource = source.start(
      (frameLine) => session.sendFrame(frameLine),
      () => {
        session.end();
        socket.close();
      },
    );
    const stop = () => {
      stopSource();
      session.end();
      socket.close();
    };
    return { session, stop };
  }
}
