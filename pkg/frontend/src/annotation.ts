/** Annotated-text view model: the article is partitioned into plain and
 * entity segments whose concatenation reproduces the text exactly. */

import type { AnnotationsPayload, EntityPayload, MainRole } from "./types.js";

export interface Segment {
  kind: "plain" | "entity";
  text: string;
  entity?: EntityPayload;
}

export const ROLE_CLASS: Record<MainRole, string> = {
  Protagonist: "role-protagonist",
  Antagonist: "role-antagonist",
  Innocent: "role-innocent",
};

export function segmentArticle(text: string, entities: EntityPayload[]): Segment[] {
  const ordered = [...entities].sort((a, b) => a.start - b.start || a.end - b.end);
  const segments: Segment[] = [];
  let cursor = 0;
  for (const entity of ordered) {
    if (entity.start < cursor || entity.end > text.length) continue; // defensive: skip overlaps
    if (entity.start > cursor) {
      segments.push({ kind: "plain", text: text.slice(cursor, entity.start) });
    }
    segments.push({
      kind: "entity",
      text: text.slice(entity.start, entity.end),
      entity,
    });
    cursor = entity.end;
  }
  if (cursor < text.length) {
    segments.push({ kind: "plain", text: text.slice(cursor) });
  }
  return segments;
}

function tooltipText(entity: EntityPayload): string {
  const roles = entity.fine_roles
    .map((r) => `${r.role}: ${(r.p * 100).toFixed(1)}%`)
    .join(", ");
  return `${entity.main_role} (span ${(entity.confidence * 100).toFixed(1)}%) — ${roles}`;
}

/** Render the annotated article. Entity spans carry a color class per main
 * role and expose fine-role confidences through the tooltip; stripping the
 * markup (textContent) yields the original article text byte for byte. */
export function renderAnnotatedText(
  doc: Document,
  payload: Pick<AnnotationsPayload, "text" | "entities">,
): HTMLElement {
  const container = doc.createElement("div");
  container.className = "annotated-text";
  for (const segment of segmentArticle(payload.text, payload.entities)) {
    if (segment.kind === "plain" || !segment.entity) {
      container.appendChild(doc.createTextNode(segment.text));
      continue;
    }
    const span = doc.createElement("mark");
    span.className = `entity ${ROLE_CLASS[segment.entity.main_role]}`;
    span.textContent = segment.text;
    span.title = tooltipText(segment.entity);
    span.dataset.start = String(segment.entity.start);
    span.dataset.end = String(segment.entity.end);
    span.dataset.mainRole = segment.entity.main_role;
    span.dataset.fineRoles = JSON.stringify(segment.entity.fine_roles);
    if (segment.entity.is_repeat) span.dataset.repeat = "true";
    container.appendChild(span);
  }
  return container;
}

export function stripMarkup(container: HTMLElement): string {
  return container.textContent ?? "";
}

/** Structured list shown on the home page after ingestion. */
export function renderEntityList(doc: Document, entities: EntityPayload[]): HTMLElement {
  const list = doc.createElement("ul");
  list.className = "entity-list";
  for (const entity of entities) {
    const item = doc.createElement("li");
    const name = doc.createElement("span");
    name.className = `entity ${ROLE_CLASS[entity.main_role]}`;
    name.textContent = entity.text;
    item.appendChild(name);
    const roles = doc.createElement("span");
    roles.className = "entity-roles";
    roles.textContent =
      ` ${entity.main_role} → ` +
      entity.fine_roles.map((r) => `${r.role} (${(r.p * 100).toFixed(1)}%)`).join(", ");
    item.appendChild(roles);
    list.appendChild(item);
  }
  return list;
}
