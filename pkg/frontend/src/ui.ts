/** Shared DOM helpers: element factory, error boxes, article selectors. */

export function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else if (key === "text") node.textContent = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child instanceof Node ? child : doc.createTextNode(child));
  }
  return node;
}

export function errorBox(doc: Document, message: string, onRetry?: () => void): HTMLElement {
  const box = el(doc, "div", { class: "error-box", role: "alert" }, [message]);
  if (onRetry) {
    const retry = el(doc, "button", { class: "retry", text: "Retry" });
    retry.addEventListener("click", onRetry);
    box.appendChild(retry);
  }
  return box;
}

export function emptyState(doc: Document, message: string): HTMLElement {
  return el(doc, "p", { class: "empty-state", text: message });
}

/** Checkbox list over article filenames. When `max` is set, checking more
 * boxes than allowed is prevented client-side by disabling the rest. */
export function renderArticleSelector(
  doc: Document,
  filenames: string[],
  options: { max?: number; onChange?: (selected: string[]) => void } = {},
): { root: HTMLElement; selected: () => string[] } {
  const root = el(doc, "div", { class: "article-selector" });
  const boxes: HTMLInputElement[] = [];

  const selected = () => boxes.filter((b) => b.checked).map((b) => b.value);

  const enforce = () => {
    if (options.max !== undefined) {
      const full = selected().length >= options.max;
      for (const box of boxes) box.disabled = full && !box.checked;
    }
    options.onChange?.(selected());
  };

  for (const name of filenames) {
    const box = doc.createElement("input");
    box.type = "checkbox";
    box.value = name;
    box.addEventListener("change", enforce);
    boxes.push(box);
    root.appendChild(el(doc, "label", { class: "article-option" }, [box, name]));
  }
  return { root, selected };
}

export function articleDropdown(
  doc: Document,
  filenames: string[],
): HTMLSelectElement {
  const select = doc.createElement("select");
  select.className = "article-dropdown";
  for (const name of filenames) {
    select.appendChild(el(doc, "option", { value: name, text: name }));
  }
  return select;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
