/** Aggregate analysis: entity/role co-occurrence network over selected
 * articles with node/document filtering and a physics toggle. */

import { filterGraph, ForceLayout, renderGraph } from "../graph.js";
import { AppContext, ensureSession } from "../state.js";
import { clear, el, emptyState, errorBox, renderArticleSelector } from "../ui.js";
import type { GraphPayload } from "../types.js";

export async function renderAggregate(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: "Aggregate network" }));
  const sessionId = await ensureSession(ctx);
  const articles = await ctx.api.listArticles(sessionId);
  if (!articles.length) {
    root.appendChild(emptyState(doc, "No analyzed articles yet — start on Home."));
    return;
  }

  const physics = el(doc, "input", { type: "checkbox" });
  const focus = el(doc, "select", { class: "focus-picker" });
  const fileFilter = el(doc, "select", { class: "file-picker" });
  const canvasHost = el(doc, "div", { class: "graph-host" });
  const status = el(doc, "div", { class: "status" });
  const selector = renderArticleSelector(doc, articles.map((a) => a.filename), {
    onChange: () => void refresh(),
  });
  root.append(
    selector.root,
    el(doc, "div", { class: "controls" }, [
      el(doc, "label", {}, [physics, " physics layout"]),
      el(doc, "label", {}, ["Focus node ", focus]),
      el(doc, "label", {}, ["Only document ", fileFilter]),
    ]),
    status,
    canvasHost,
  );

  let payload: GraphPayload = { nodes: [], edges: [] };
  let animation: number | null = null;

  function stopAnimation(): void {
    if (animation !== null) {
      window.clearInterval(animation);
      animation = null;
    }
  }

  function currentView(): GraphPayload {
    return filterGraph(payload, {
      focusNode: focus.value || undefined,
      file: fileFilter.value || undefined,
    });
  }

  function draw(): void {
    clear(canvasHost);
    const view = currentView();
    if (!view.nodes.length) {
      canvasHost.appendChild(emptyState(doc, "Empty graph for this selection."));
      return;
    }
    canvasHost.appendChild(renderGraph(doc, view, { settle: physics.checked ? 0 : 60 }));
    if (physics.checked) {
      const layout = new ForceLayout(view);
      animation = window.setInterval(() => {
        layout.step();
        clear(canvasHost);
        canvasHost.appendChild(
          renderGraph(doc, { nodes: layout.nodes, edges: layout.edges }, { settle: 0 }),
        );
      }, 80);
    }
  }

  async function refresh(): Promise<void> {
    stopAnimation();
    clear(status);
    try {
      const selected = selector.selected();
      payload = await ctx.api.graph(
        sessionId, selected.length ? selected : undefined,
      );
      clear(focus);
      focus.appendChild(el(doc, "option", { value: "", text: "(all nodes)" }));
      for (const node of payload.nodes) {
        focus.appendChild(el(doc, "option", { value: node.id, text: node.label }));
      }
      clear(fileFilter);
      fileFilter.appendChild(el(doc, "option", { value: "", text: "(all documents)" }));
      for (const a of articles) {
        fileFilter.appendChild(
          el(doc, "option", { value: a.filename, text: a.filename }),
        );
      }
      draw();
    } catch (err) {
      status.appendChild(errorBox(doc, (err as Error).message, () => void refresh()));
    }
  }

  physics.addEventListener("change", () => { stopAnimation(); draw(); });
  focus.addEventListener("change", () => { stopAnimation(); draw(); });
  fileFilter.addEventListener("change", () => { stopAnimation(); draw(); });

  await refresh();
}
