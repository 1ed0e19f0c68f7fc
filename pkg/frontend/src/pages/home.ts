/** Home: paste text or give a URL, run the pipeline, list detected entities. */

import { renderEntityList } from "../annotation.js";
import { AppContext, ensureSession } from "../state.js";
import { clear, el, errorBox } from "../ui.js";

export async function renderHome(root: HTMLElement, ctx: AppContext): Promise<void> {
  const doc = ctx.doc;
  clear(root);
  const form = el(doc, "form", { class: "ingest-form" });
  const filename = el(doc, "input", {
    type: "text", placeholder: "filename", name: "filename",
  });
  const text = el(doc, "textarea", {
    placeholder: "Paste the article text…", rows: "10", name: "text",
  });
  const url = el(doc, "input", {
    type: "text", placeholder: "…or give an article URL", name: "url",
  });
  const submit = el(doc, "button", { type: "submit", text: "Analyze" });
  const status = el(doc, "div", { class: "status" });
  const results = el(doc, "div", { class: "results" });
  form.append(
    el(doc, "label", {}, ["Filename", filename]),
    el(doc, "label", {}, ["Article text", text]),
    el(doc, "label", {}, ["URL", url]),
    submit,
  );
  root.append(el(doc, "h2", { text: "Analyze an article" }), form, status, results);

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    clear(status);
    clear(results);
    if (!filename.value.trim()) {
      status.appendChild(errorBox(doc, "A filename is required."));
      return;
    }
    const body: { filename: string; text?: string; url?: string } = {
      filename: filename.value.trim(),
    };
    if (text.value.trim()) body.text = text.value;
    else if (url.value.trim()) body.url = url.value.trim();
    else {
      status.appendChild(errorBox(doc, "Paste text or provide a URL."));
      return;
    }
    submit.setAttribute("disabled", "true");
    status.textContent = "Analyzing…";
    try {
      const sessionId = await ensureSession(ctx);
      const payload = await ctx.api.ingest(sessionId, body);
      status.textContent =
        `Stored as ${payload.filename} — ${payload.entities.length} entities.`;
      results.appendChild(renderEntityList(doc, payload.entities));
    } catch (err) {
      status.appendChild(
        errorBox(doc, `Analysis failed: ${(err as Error).message}`, () =>
          form.dispatchEvent(new Event("submit")),
        ),
      );
    } finally {
      submit.removeAttribute("disabled");
    }
  });
}
