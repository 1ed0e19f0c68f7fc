/** Search: find words or phrases across selected articles; every match is
 * highlighted in its sentence context. */

import { AppContext, ensureSession } from "../state.js";
import { clear, el, emptyState, errorBox, renderArticleSelector } from "../ui.js";

export function highlightMatch(doc: Document, sentence: string, match: string): HTMLElement {
  const wrap = el(doc, "span", { class: "hit-sentence" });
  const idx = sentence.toLowerCase().indexOf(match.toLowerCase());
  if (idx < 0) {
    wrap.textContent = sentence;
    return wrap;
  }
  wrap.append(
    doc.createTextNode(sentence.slice(0, idx)),
    el(doc, "mark", { class: "search-hit", text: sentence.slice(idx, idx + match.length) }),
    doc.createTextNode(sentence.slice(idx + match.length)),
  );
  return wrap;
}

export async function renderSearch(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: "Search" }));
  const sessionId = await ensureSession(ctx);
  const articles = await ctx.api.listArticles(sessionId);
  if (!articles.length) {
    root.appendChild(emptyState(doc, "No analyzed articles yet — start on Home."));
    return;
  }

  const query = el(doc, "input", { type: "search", placeholder: "word or phrase" });
  const go = el(doc, "button", { text: "Search" });
  const results = el(doc, "div", { class: "search-results" });
  const selector = renderArticleSelector(doc, articles.map((a) => a.filename));
  root.append(
    selector.root,
    el(doc, "div", { class: "controls" }, [query, go]),
    results,
  );

  async function run(): Promise<void> {
    clear(results);
    const files = selector.selected();
    if (!files.length) {
      results.appendChild(emptyState(doc, "Select at least one article."));
      return;
    }
    if (!query.value.trim()) {
      results.appendChild(emptyState(doc, "Type a search term."));
      return;
    }
    try {
      const hits = await ctx.api.search(sessionId, query.value, files);
      if (!hits.length) {
        results.appendChild(emptyState(doc, "No matches."));
        return;
      }
      for (const hit of hits) {
        results.appendChild(el(doc, "div", { class: "search-row" }, [
          el(doc, "strong", { text: hit.filename }),
          doc.createTextNode(` [${hit.start}–${hit.end}] `),
          highlightMatch(doc, hit.sentence, hit.match),
        ]));
      }
    } catch (err) {
      results.appendChild(errorBox(doc, (err as Error).message, () => void run()));
    }
  }

  go.addEventListener("click", () => void run());
  query.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") void run();
  });
}
