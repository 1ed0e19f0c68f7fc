/** Dynamic analysis: up to four articles side by side with pooled
 * role-distribution summaries. */

import { renderAnnotatedText } from "../annotation.js";
import { renderBarChart } from "../charts.js";
import { AppContext, ensureSession, MAX_COMPARE, validateCompareSelection } from "../state.js";
import { clear, el, emptyState, errorBox, renderArticleSelector } from "../ui.js";

export async function renderDynamic(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: `Compare up to ${MAX_COMPARE} articles` }));
  const sessionId = await ensureSession(ctx);
  const articles = await ctx.api.listArticles(sessionId);
  if (!articles.length) {
    root.appendChild(emptyState(doc, "No analyzed articles yet — start on Home."));
    return;
  }

  const columns = el(doc, "div", { class: "compare-columns" });
  const summary = el(doc, "div", { class: "charts" });
  const status = el(doc, "div", { class: "status" });

  const selector = renderArticleSelector(doc, articles.map((a) => a.filename), {
    max: MAX_COMPARE,
    onChange: (selected) => void refresh(selected),
  });
  root.append(selector.root, status, columns, summary);

  async function refresh(selected: string[]): Promise<void> {
    clear(columns);
    clear(summary);
    clear(status);
    const problem = validateCompareSelection(selected);
    if (problem) {
      status.appendChild(emptyState(doc, problem));
      return;
    }
    try {
      const payload = await ctx.api.compare(sessionId, selected);
      for (const article of payload.articles) {
        const column = el(doc, "div", { class: "compare-column" }, [
          el(doc, "h3", { text: article.filename }),
        ]);
        column.appendChild(renderAnnotatedText(doc, article));
        columns.appendChild(column);
      }
      summary.append(
        renderBarChart(doc, "Cumulative main roles",
          payload.cumulative.main_roles,
          (key) => `fill-${key.toLowerCase()}`),
        renderBarChart(doc, "Cumulative fine-grained roles",
          payload.cumulative.fine_roles),
      );
    } catch (err) {
      status.appendChild(errorBox(doc, (err as Error).message));
    }
  }
}
