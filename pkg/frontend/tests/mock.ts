/** A fetch-compatible mock of the analysis service over fixture payloads. */

import type { FetchLike } from "../src/api.js";
import type { AnnotationsPayload, EntityPayload, GraphPayload } from "../src/types.js";

export function json(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function entity(
  text: string,
  start: number,
  mainRole: EntityPayload["main_role"],
  fineRoles: [string, number][],
  options: { repeat?: boolean; sentence?: number; confidence?: number } = {},
): EntityPayload {
  return {
    start,
    end: start + text.length,
    text,
    main_role: mainRole,
    confidence: options.confidence ?? 0.9,
    fine_roles: fineRoles.map(([role, p]) => ({ role, p })),
    sentence_ordinal: options.sentence ?? 0,
    is_repeat: options.repeat ?? false,
  };
}

export const FIXTURE_TEXT =
  "Мира Vane shielded refugees. Мира Vane spoke again. Petro Oblak crushed dissent.";

export function fixturePayload(): AnnotationsPayload {
  return {
    filename: "fixture_20260101T000000",
    language: "en",
    text: FIXTURE_TEXT,
    entities: [
      entity("Мира Vane", 0, "Protagonist", [["Guardian", 0.92], ["Martyr", 0.88]]),
      entity("Мира Vane", 29, "Protagonist", [["Guardian", 0.55]], {
        repeat: true,
        sentence: 1,
      }),
      entity("Petro Oblak", 52, "Antagonist", [["Tyrant", 0.3]], { sentence: 2 }),
    ],
    n_entities_total: 3,
    n_hidden_repeats: 0,
    sentences: [
      [0, 28],
      [28, 51],
      [51, 80],
    ],
  };
}

export const FIXTURE_GRAPH: GraphPayload = {
  nodes: [
    {
      id: "entity:мира vane",
      type: "entity",
      label: "Мира Vane",
      articles: ["fixture_20260101T000000"],
      weight: 1,
    },
    {
      id: "role:Guardian",
      type: "role",
      label: "Guardian",
      main_role: "Protagonist",
      articles: ["fixture_20260101T000000"],
      weight: 1,
    },
  ],
  edges: [
    {
      source: "entity:мира vane",
      target: "role:Guardian",
      kind: "assigned",
      articles: ["fixture_20260101T000000"],
      weight: 1,
    },
  ],
};

/** Implements the service's annotations filter semantics over the fixture:
 * top fine-role probability >= min_confidence, repeats optionally hidden. */
export function mockService(payload: AnnotationsPayload = fixturePayload()): FetchLike {
  return async (input: string) => {
    const url = new URL(input, "http://mock");
    if (url.pathname === "/taxonomy") {
      return json({ Protagonist: ["Guardian", "Martyr"], Antagonist: ["Tyrant"], Innocent: ["Victim"] });
    }
    if (url.pathname === "/sessions") {
      return json({ id: "session_mock", created_at: "2026-01-01T00:00:00Z" }, 201);
    }
    if (url.pathname.endsWith("/annotations")) {
      const min = Number(url.searchParams.get("min_confidence") ?? "0");
      const hide = url.searchParams.get("hide_repeats") === "true";
      let hidden = 0;
      const entities = payload.entities.filter((e) => {
        const top = Math.max(...e.fine_roles.map((r) => r.p));
        if (top < min) return false;
        if (hide && e.is_repeat) {
          hidden += 1;
          return false;
        }
        return true;
      });
      return json({ ...payload, entities, n_hidden_repeats: hidden });
    }
    if (url.pathname.endsWith("/graph")) {
      return json(FIXTURE_GRAPH);
    }
    if (url.pathname.endsWith("/articles") && !url.pathname.includes("articles/")) {
      return json([
        {
          filename: payload.filename,
          created_at: "2026-01-01T00:00:00Z",
          language: payload.language,
          n_entities: payload.entities.length,
        },
      ]);
    }
    return json({ detail: `unmocked path ${url.pathname}` }, 404);
  };
}
