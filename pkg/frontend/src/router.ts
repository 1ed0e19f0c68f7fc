/** Hash-based client-side routing over the six analyst pages plus About. */

import { AppContext } from "./state.js";
import { renderAbout } from "./pages/about.js";
import { renderAggregate } from "./pages/aggregate.js";
import { renderAnalysis } from "./pages/analysis.js";
import { renderDynamic } from "./pages/dynamic.js";
import { renderHome } from "./pages/home.js";
import { renderSearch } from "./pages/search.js";
import { renderTimeline } from "./pages/timeline.js";

export type PageRenderer = (root: HTMLElement, ctx: AppContext) => Promise<void>;

export const ROUTES: Record<string, { title: string; render: PageRenderer }> = {
  "#/home": { title: "Home", render: renderHome },
  "#/analysis": { title: "Analysis", render: renderAnalysis },
  "#/dynamic": { title: "Dynamic", render: renderDynamic },
  "#/aggregate": { title: "Aggregate", render: renderAggregate },
  "#/search": { title: "Search", render: renderSearch },
  "#/timeline": { title: "Timeline", render: renderTimeline },
  "#/about": { title: "About", render: renderAbout },
};

export function startRouter(nav: HTMLElement, outlet: HTMLElement, ctx: AppContext): void {
  const doc = ctx.doc;
  for (const [hash, route] of Object.entries(ROUTES)) {
    const link = doc.createElement("a");
    link.href = hash;
    link.textContent = route.title;
    nav.appendChild(link);
  }

  const show = () => {
    const hash = window.location.hash || "#/home";
    const route = ROUTES[hash] ?? ROUTES["#/home"];
    for (const link of Array.from(nav.querySelectorAll("a"))) {
      link.classList.toggle("active", link.getAttribute("href") === hash);
    }
    route.render(outlet, ctx).catch((err) => {
      outlet.textContent = `Page failed to load: ${(err as Error).message}`;
    });
  };

  window.addEventListener("hashchange", show);
  show();
}
