/** About: feature summary plus the full role taxonomy. */

import { AppContext } from "../state.js";
import { clear, el, errorBox } from "../ui.js";

const FEATURES = [
  "Home — paste text or a URL and run span detection plus role classification.",
  "Analysis — color-coded annotated article with confidence filtering, repeat folding, charts, and per-label sentence extraction.",
  "Dynamic — side-by-side comparison of up to four articles with pooled distributions.",
  "Aggregate — entity/role co-occurrence network across articles.",
  "Search — find and highlight words or phrases in analyzed articles.",
  "Timeline — follow one entity's role assignments through an article.",
];

export async function renderAbout(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: "About" }));
  const list = el(doc, "ul", { class: "feature-list" });
  for (const feature of FEATURES) {
    list.appendChild(el(doc, "li", { text: feature }));
  }
  root.appendChild(list);
  root.appendChild(el(doc, "h3", { text: "Role taxonomy" }));
  try {
    const taxonomy = await ctx.api.taxonomy();
    const columns = el(doc, "div", { class: "taxonomy-columns" });
    for (const [main, fines] of Object.entries(taxonomy)) {
      const column = el(doc, "div", { class: `taxonomy-column fill-${main.toLowerCase()}` }, [
        el(doc, "h4", { text: main }),
      ]);
      const ol = el(doc, "ol");
      for (const fine of fines) ol.appendChild(el(doc, "li", { text: fine }));
      column.appendChild(ol);
      columns.appendChild(column);
    }
    root.appendChild(columns);
  } catch (err) {
    root.appendChild(errorBox(doc, (err as Error).message));
  }
}
