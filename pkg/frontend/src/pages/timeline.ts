/** Timeline: the sequence of roles one entity takes through an article,
 * with badges on role transitions. */

import { ROLE_CLASS } from "../annotation.js";
import { AppContext, ensureSession } from "../state.js";
import { articleDropdown, clear, el, emptyState, errorBox } from "../ui.js";

export async function renderTimeline(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: "Entity timeline" }));
  const sessionId = await ensureSession(ctx);
  const articles = await ctx.api.listArticles(sessionId);
  if (!articles.length) {
    root.appendChild(emptyState(doc, "No analyzed articles yet — start on Home."));
    return;
  }

  const picker = articleDropdown(doc, articles.map((a) => a.filename));
  const entityInput = el(doc, "input", { type: "text", placeholder: "entity surface" });
  const go = el(doc, "button", { text: "Show timeline" });
  const out = el(doc, "div", { class: "timeline" });
  root.append(
    el(doc, "div", { class: "controls" }, [
      el(doc, "label", {}, ["Article ", picker]),
      el(doc, "label", {}, ["Entity ", entityInput]),
      go,
    ]),
    out,
  );

  async function run(): Promise<void> {
    clear(out);
    if (!entityInput.value.trim()) {
      out.appendChild(emptyState(doc, "Type an entity name."));
      return;
    }
    try {
      const items = await ctx.api.timeline(sessionId, picker.value, entityInput.value);
      if (!items.length) {
        out.appendChild(emptyState(doc, "This entity does not occur in the article."));
        return;
      }
      for (const item of items) {
        const row = el(doc, "div", { class: "timeline-item" });
        const badge = el(doc, "span", {
          class: `entity ${ROLE_CLASS[item.main_role]}`,
          text: item.surface,
        });
        row.append(
          el(doc, "span", { class: "ordinal", text: `#${item.sentence_ordinal}` }),
          badge,
          el(doc, "span", {
            class: "roles",
            text: item.fine_roles
              .map((r) => `${r.role} ${(r.p * 100).toFixed(0)}%`)
              .join(", "),
          }),
        );
        if (item.transition) {
          row.appendChild(el(doc, "span", { class: "transition-badge", text: "role change" }));
        }
        row.appendChild(el(doc, "blockquote", { text: item.sentence }));
        out.appendChild(row);
      }
    } catch (err) {
      out.appendChild(errorBox(doc, (err as Error).message, () => void run()));
    }
  }

  go.addEventListener("click", () => void run());
}
