"""WebSocket front-end for the relay core.

One connection per role per session: a sender connection composes and then
hangs around for capture notifications; a recipient connection opens one
unlock session and streams landmark frames over it. All messages are the
single-line JSON records from `protocol`.
"""

from __future__ import annotations

import asyncio
import logging

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from .protocol import (
    Compose,
    ErrorMsg,
    LandmarkFrameMsg,
    ProtocolError,
    ScreenshotEventMsg,
    SessionEnd,
    UnlockRequest,
    WireMessage,
    decode_message,
    encode_message,
)
from .relay import RelayCore, RelayError

log = logging.getLogger("handsoff.server")


class RelayServer:
    def __init__(self, core: RelayCore):
        self.core = core
        self._senders: dict[str, set] = {}
        self._recipients: dict[str, set] = {}
        core.notify_sender = self._make_notifier(self._senders)
        core.notify_recipient = self._make_notifier(self._recipients)

    def _make_notifier(self, registry: dict[str, set]):
        def notify(peer_id: str, msg: WireMessage) -> None:
            for ws in registry.get(peer_id, ()):  # best effort, fire and forget
                asyncio.get_running_loop().create_task(self._safe_send(ws, msg))

        return notify

    @staticmethod
    async def _safe_send(ws, msg: WireMessage) -> None:
        try:
            await ws.send(encode_message(msg))
        except ConnectionClosed:
            pass

    @staticmethod
    def _register(registry: dict[str, set], peer_id: str, ws) -> None:
        registry.setdefault(peer_id, set()).add(ws)

    def _unregister(self, ws) -> None:
        for registry in (self._senders, self._recipients):
            for peers in registry.values():
                peers.discard(ws)

    async def handler(self, ws) -> None:
        session_id: str | None = None
        try:
            async for raw in ws:
                try:
                    msg = decode_message(raw)
                except ProtocolError as exc:
                    await ws.send(encode_message(ErrorMsg("Protocol", str(exc))))
                    break
                try:
                    session_id = await self._dispatch(ws, msg, session_id)
                except RelayError as exc:
                    await ws.send(
                        encode_message(ErrorMsg(exc.code, exc.detail, session_id=session_id))
                    )
                    if exc.fatal:
                        break
        except ConnectionClosed:
            pass
        finally:
            if session_id is not None and session_id in self.core.sessions:
                if self.core.sessions[session_id].open:
                    self.core.end_session(session_id)
            self._unregister(ws)

    async def _dispatch(self, ws, msg: WireMessage, session_id: str | None) -> str | None:
        if isinstance(msg, Compose):
            ack = self.core.handle_compose(msg)
            self._register(self._senders, msg.sender_id, ws)
            await ws.send(encode_message(ack))
        elif isinstance(msg, UnlockRequest):
            if session_id is not None:
                raise RelayError("SessionExists", "this connection already runs a session")
            session_id, intro = self.core.open_session(msg)
            self._register(self._recipients, msg.recipient_id, ws)
            for out in intro:
                await ws.send(encode_message(out))
        elif isinstance(msg, LandmarkFrameMsg):
            for out in self.core.handle_frame(msg):
                await ws.send(encode_message(out))
        elif isinstance(msg, ScreenshotEventMsg):
            for out in self.core.handle_screenshot_event(msg):
                await ws.send(encode_message(out))
        elif isinstance(msg, SessionEnd):
            self.core.end_session(msg.session_id)
        else:
            raise RelayError("Unexpected", f"{type(msg).__name__} is not a client message")
        return session_id


async def serve_relay(core: RelayCore, host: str, port: int, ready: asyncio.Event | None = None):
    """Run the relay until cancelled."""
    server = RelayServer(core)
    async with ws_serve(server.handler, host, port):
        log.info("relay listening on %s:%d", host, port)
        if ready is not None:
            ready.set()
        await asyncio.Future()
