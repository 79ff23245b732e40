/**
 * Context -> gesture ranking, mirroring the relay's recommendation logic so
 * the compose form can default sensibly without a round trip.
 */

import type { ContextWire } from "./protocol.js";

export const UNLOCK_GESTURES = ["wave", "frame", "interlace", "binoculars"] as const;
export type UnlockGesture = (typeof UNLOCK_GESTURES)[number];

export interface GestureProfile {
  gesture: UnlockGesture;
  deterrence: number;
  socialAcceptability: number;
}

export const DEFAULT_PROFILES: readonly GestureProfile[] = [
  { gesture: "wave", deterrence: 0.4, socialAcceptability: 0.95 },
  { gesture: "interlace", deterrence: 0.7, socialAcceptability: 0.8 },
  { gesture: "frame", deterrence: 0.75, socialAcceptability: 0.45 },
  { gesture: "binoculars", deterrence: 0.85, socialAcceptability: 0.2 },
];

const TIE_ORDER: readonly UnlockGesture[] = ["interlace", "wave", "frame", "binoculars"];

export function recommendGestures(
  context: ContextWire,
  profiles: readonly GestureProfile[] = DEFAULT_PROFILES,
): UnlockGesture[] {
  const byGesture = new Map(profiles.map((p) => [p.gesture, p]));
  for (const gesture of UNLOCK_GESTURES) {
    if (!byGesture.has(gesture)) throw new Error(`no profile for ${gesture}`);
  }
  const protective = context.content === "Serious" || context.relationship === "NotClose";
  const score = (p: GestureProfile): number => {
    if (protective) {
      return context.location === "Public"
        ? 0.7 * p.deterrence + 0.3 * p.socialAcceptability
        : p.deterrence;
    }
    return context.location === "Public"
      ? 0.3 * p.deterrence + 0.7 * p.socialAcceptability
      : 0.3 * p.deterrence + 0.7 * (1 - p.socialAcceptability);
  };
  return [...UNLOCK_GESTURES].sort((a, b) => {
    const diff = score(byGesture.get(b)!) - score(byGesture.get(a)!);
    if (diff !== 0) return diff;
    return TIE_ORDER.indexOf(a) - TIE_ORDER.indexOf(b);
  });
}
