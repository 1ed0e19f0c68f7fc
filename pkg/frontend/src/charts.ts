/** Minimal DOM bar charts for role distributions (no chart dependency). */

export function renderBarChart(
  doc: Document,
  title: string,
  counts: Record<string, number>,
  colorClass?: (key: string) => string,
): HTMLElement {
  const wrap = doc.createElement("div");
  wrap.className = "bar-chart";
  const heading = doc.createElement("h4");
  heading.textContent = title;
  wrap.appendChild(heading);
  const entries = Object.entries(counts).sort((a, b) => b[1] - a[1]);
  const max = entries.length ? entries[0][1] : 0;
  for (const [key, value] of entries) {
    const row = doc.createElement("div");
    row.className = "bar-row";
    const label = doc.createElement("span");
    label.className = "bar-label";
    label.textContent = key;
    const bar = doc.createElement("span");
    bar.className = "bar-fill" + (colorClass ? ` ${colorClass(key)}` : "");
    bar.style.width = max ? `${Math.round((100 * value) / max)}%` : "0";
    const count = doc.createElement("span");
    count.className = "bar-count";
    count.textContent = String(value);
    row.append(label, bar, count);
    wrap.appendChild(row);
  }
  if (!entries.length) {
    const empty = doc.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No data.";
    wrap.appendChild(empty);
  }
  return wrap;
}

export function countsFromEntities(
  entities: { main_role: string }[],
): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const e of entities) counts[e.main_role] = (counts[e.main_role] ?? 0) + 1;
  return counts;
}

export function fineCountsFromEntities(
  entities: { fine_roles: { role: string }[] }[],
): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const e of entities) {
    for (const r of e.fine_roles) counts[r.role] = (counts[r.role] ?? 0) + 1;
  }
  return counts;
}
