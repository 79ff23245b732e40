/**
 * Browser entry point. Wires the compose and unlock view models to a small
 * static page. The unlock view's media surface creates and *removes* the
 * image element; covered means the pixels are not in the document at all.
 */

import { RelayClient } from "./client.js";
import { ComposeFlow } from "./compose.js";
import { parseTraceFile, TracePlaybackSource, WebcamSource, type HandTracker } from "./landmarkSource.js";
import type { ContextWire } from "./protocol.js";
import type { MediaSurface } from "./session.js";
import { UNLOCK_GESTURES, type UnlockGesture } from "./recommend.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

class DomMediaSurface implements MediaSurface {
  private element: HTMLImageElement | null = null;
  private url: string | null = null;

  constructor(private readonly host: HTMLElement) {}

  reveal(bytes: Uint8Array, mime: string): void {
    this.cover();
    this.url = URL.createObjectURL(new Blob([bytes.slice().buffer], { type: mime }));
    this.element = document.createElement("img");
    this.element.src = this.url;
    this.element.alt = "shared media (visible while the gesture holds)";
    this.host.appendChild(this.element);
    this.host.classList.add("revealed");
  }

  cover(): void {
    if (this.element) {
      this.element.remove();
      this.element = null;
    }
    if (this.url) {
      URL.revokeObjectURL(this.url);
      this.url = null;
    }
    this.host.classList.remove("revealed");
  }
}

function currentContext(): ContextWire {
  return {
    content: ($("content") as HTMLSelectElement).value as ContextWire["content"],
    relationship: ($("relationship") as HTMLSelectElement).value as ContextWire["relationship"],
    location: ($("location") as HTMLSelectElement).value as ContextWire["location"],
  };
}

export function boot(): void {
  const client = new RelayClient(($("relay-url") as HTMLInputElement).value);
  let activeView: "compose" | "unlock" = "compose";

  // -- compose ------------------------------------------------------------
  const compose = new ComposeFlow(currentContext(), (state) => {
    $("ranking").textContent = state.ranking.join(" > ");
    for (const gesture of UNLOCK_GESTURES) {
      const radio = $(`g-${gesture}`) as HTMLInputElement;
      radio.checked = gesture === state.selectedGesture;
    }
    ($("send") as HTMLButtonElement).disabled = !state.canSubmit;
    $("compose-status").textContent = state.fileError ?? "";
  });

  for (const id of ["content", "relationship", "location"]) {
    $(id).addEventListener("change", () => compose.setContext(currentContext()));
  }
  for (const gesture of UNLOCK_GESTURES) {
    $(`g-${gesture}`).addEventListener("change", () => compose.selectGesture(gesture as UnlockGesture));
  }
  $("file").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    compose.attachFile(file.name, new Uint8Array(await file.arrayBuffer()), file.type || "application/octet-stream");
  });
  $("send").addEventListener("click", async () => {
    try {
      const msg = compose.buildCompose(
        ($("sender") as HTMLInputElement).value,
        ($("recipient") as HTMLInputElement).value,
      );
      const ack = await client.compose(msg);
      $("compose-status").textContent = `sent: media ${ack.media_id}`;
      ($("media-id") as HTMLInputElement).value = ack.media_id;
    } catch (err) {
      $("compose-status").textContent = String(err);
    }
  });

  // -- unlock ---------------------------------------------------------------
  const surface = new DomMediaSurface($("media-host"));
  let stopSession: (() => void) | null = null;
  let chord: (() => void) | null = null;

  $("unlock").addEventListener("click", async () => {
    stopSession?.();
    activeView = "unlock";
    const mediaId = ($("media-id") as HTMLInputElement).value.trim();
    const recipient = ($("recipient") as HTMLInputElement).value.trim();

    // Landmark input: a host-provided tracker when available, otherwise the
    // selected prerecorded trace (desk-demo mode).
    const tracker = (window as unknown as { handsoffTracker?: HandTracker }).handsoffTracker;
    let source;
    if (tracker) {
      source = new WebcamSource(tracker);
    } else {
      const fixture = ($("fixture") as HTMLSelectElement).value;
      const text = await (await fetch(`fixtures/${fixture}`)).text();
      source = new TracePlaybackSource(parseTraceFile(text));
    }

    const { session, stop } = await client.openUnlock(mediaId, recipient, surface, source, (view) => {
      $("phase").textContent = `${view.phase} (confidence ${view.confidence.toFixed(2)})`;
      $("prompt").textContent = view.requiredGesture
        ? `perform: ${view.requiredGesture}`
        : "";
      $("notice").textContent = view.notice ?? view.error ?? "";
    });
    stopSession = stop;
    chord = () => session.captureChord();
  });
  $("stop").addEventListener("click", () => {
    stopSession?.();
    stopSession = null;
    activeView = "compose";
  });

  // Desktop stand-in for the two-button press: PrintScreen or Ctrl+Shift+S.
  document.addEventListener("keydown", (event) => {
    const isChord = event.key === "PrintScreen" || (event.ctrlKey && event.shiftKey && event.key.toLowerCase() === "s");
    if (isChord && activeView === "unlock") {
      chord?.();
    }
  });
}

boot();
