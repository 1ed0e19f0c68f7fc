/** Small shared app state: one anonymous session per browser, lazily created. */

import type { ApiClient } from "./api.js";

const SESSION_KEY = "entity-framing-session";

export interface AppContext {
  api: ApiClient;
  doc: Document;
  sessionId: string | null;
}

export async function ensureSession(ctx: AppContext): Promise<string> {
  if (ctx.sessionId) return ctx.sessionId;
  const stored = window.localStorage.getItem(SESSION_KEY);
  if (stored) {
    ctx.sessionId = stored;
    return stored;
  }
  const info = await ctx.api.createSession();
  window.localStorage.setItem(SESSION_KEY, info.id);
  ctx.sessionId = info.id;
  return info.id;
}

export function resetSession(ctx: AppContext): void {
  window.localStorage.removeItem(SESSION_KEY);
  ctx.sessionId = null;
}

export const MAX_COMPARE = 4;

/** Guard for the dynamic-analysis selection; returns an error message or null. */
export function validateCompareSelection(files: string[]): string | null {
  if (files.length === 0) return "select at least one article";
  if (files.length > MAX_COMPARE) return `select at most ${MAX_COMPARE} articles`;
  return null;
}
