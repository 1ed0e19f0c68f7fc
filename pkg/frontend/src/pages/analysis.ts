/** Analysis: color-coded annotated view with tooltips, a confidence slider,
 * a repeat toggle, distribution charts, and label-based sentence extraction. */

import { renderAnnotatedText } from "../annotation.js";
import { countsFromEntities, fineCountsFromEntities, renderBarChart } from "../charts.js";
import { AppContext, ensureSession } from "../state.js";
import { articleDropdown, clear, el, emptyState, errorBox } from "../ui.js";

export async function renderAnalysis(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  root.appendChild(el(doc, "h2", { text: "Article analysis" }));
  const sessionId = await ensureSession(ctx);
  const articles = await ctx.api.listArticles(sessionId);
  if (!articles.length) {
    root.appendChild(emptyState(doc, "No analyzed articles yet — start on Home."));
    return;
  }

  const picker = articleDropdown(doc, articles.map((a) => a.filename));
  const slider = el(doc, "input", {
    type: "range", min: "0", max: "1", step: "0.05", value: "0",
  });
  const sliderValue = el(doc, "span", { class: "slider-value", text: "0.00" });
  const repeats = el(doc, "input", { type: "checkbox" });
  const controls = el(doc, "div", { class: "controls" }, [
    el(doc, "label", {}, ["Article ", picker]),
    el(doc, "label", {}, ["Confidence ≥ ", slider, sliderValue]),
    el(doc, "label", {}, [repeats, " hide repeated annotations"]),
  ]);
  const viewer = el(doc, "div", { class: "viewer" });
  const charts = el(doc, "div", { class: "charts" });
  const extraction = el(doc, "div", { class: "extraction" });
  root.append(controls, viewer, charts, extraction);

  const labelPicker = el(doc, "select", { class: "label-picker" });
  const taxonomy = await ctx.api.taxonomy();
  for (const [main, fines] of Object.entries(taxonomy)) {
    labelPicker.appendChild(el(doc, "option", { value: main, text: main }));
    for (const fine of fines) {
      labelPicker.appendChild(el(doc, "option", { value: fine, text: `— ${fine}` }));
    }
  }
  const sentencesOut = el(doc, "div", { class: "sentence-rows" });
  extraction.append(
    el(doc, "h3", { text: "Sentences by label" }),
    el(doc, "label", {}, ["Label ", labelPicker]),
    sentencesOut,
  );

  async function refresh(): Promise<void> {
    clear(viewer);
    clear(charts);
    const threshold = Number(slider.value);
    sliderValue.textContent = threshold.toFixed(2);
    try {
      const payload = await ctx.api.annotations(
        sessionId, picker.value, threshold, repeats.checked,
      );
      viewer.appendChild(renderAnnotatedText(doc, payload));
      if (payload.n_hidden_repeats) {
        viewer.appendChild(el(doc, "p", {
          class: "muted",
          text: `${payload.n_hidden_repeats} repeated annotations hidden.`,
        }));
      }
      charts.append(
        renderBarChart(doc, "Main role distribution",
          countsFromEntities(payload.entities),
          (key) => `fill-${key.toLowerCase()}`),
        renderBarChart(doc, "Fine-grained roles",
          fineCountsFromEntities(payload.entities)),
      );
    } catch (err) {
      viewer.appendChild(errorBox(doc, (err as Error).message, refresh));
    }
  }

  async function refreshSentences(): Promise<void> {
    clear(sentencesOut);
    try {
      const rows = await ctx.api.sentences(sessionId, labelPicker.value, [picker.value]);
      if (!rows.length) {
        sentencesOut.appendChild(emptyState(doc, "No sentences carry this label."));
        return;
      }
      for (const row of rows) {
        sentencesOut.appendChild(el(doc, "blockquote", {}, [
          row.sentence,
          el(doc, "small", { text: ` (#${row.sentence_ordinal}, ${row.entities.length} entities)` }),
        ]));
      }
    } catch (err) {
      sentencesOut.appendChild(errorBox(doc, (err as Error).message));
    }
  }

  picker.addEventListener("change", () => { void refresh(); void refreshSentences(); });
  slider.addEventListener("change", () => void refresh());
  slider.addEventListener("input", () => {
    sliderValue.textContent = Number(slider.value).toFixed(2);
  });
  repeats.addEventListener("change", () => void refresh());
  labelPicker.addEventListener("change", () => void refreshSentences());

  await refresh();
  await refreshSentences();
}
