/** Force-directed rendering of the entity/role co-occurrence graph with an
 * on/off physics toggle and client-side filtering by entity or document. */

import type { GraphEdge, GraphNode, GraphPayload } from "./types.js";

export interface LayoutNode extends GraphNode {
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface GraphFilter {
  /** Keep only nodes connected to this entity/role node id (plus itself). */
  focusNode?: string;
  /** Keep only nodes supported by this article filename. */
  file?: string;
}

export function filterGraph(payload: GraphPayload, filter: GraphFilter): GraphPayload {
  let nodes = payload.nodes;
  let edges = payload.edges;
  if (filter.file) {
    nodes = nodes.filter((n) => n.articles.includes(filter.file!));
    edges = edges.filter((e) => e.articles.includes(filter.file!));
  }
  if (filter.focusNode) {
    const keep = new Set<string>([filter.focusNode]);
    for (const edge of edges) {
      if (edge.source === filter.focusNode) keep.add(edge.target);
      if (edge.target === filter.focusNode) keep.add(edge.source);
    }
    nodes = nodes.filter((n) => keep.has(n.id));
    edges = edges.filter((e) => keep.has(e.source) && keep.has(e.target));
  }
  const ids = new Set(nodes.map((n) => n.id));
  edges = edges.filter((e) => ids.has(e.source) && ids.has(e.target));
  return { nodes, edges };
}

export class ForceLayout {
  nodes: LayoutNode[];
  edges: GraphEdge[];
  width: number;
  height: number;

  constructor(payload: GraphPayload, width = 640, height = 420) {
    this.width = width;
    this.height = height;
    // Deterministic ring initialization keeps renders reproducible.
    this.nodes = payload.nodes.map((node, i) => {
      const angle = (2 * Math.PI * i) / Math.max(1, payload.nodes.length);
      const radius = Math.min(width, height) / 3;
      return {
        ...node,
        x: width / 2 + radius * Math.cos(angle),
        y: height / 2 + radius * Math.sin(angle),
        vx: 0,
        vy: 0,
      };
    });
    this.edges = payload.edges;
  }

  private byId(id: string): LayoutNode | undefined {
    return this.nodes.find((n) => n.id === id);
  }

  step(dt = 0.02): void {
    const repulsion = 12000;
    const spring = 0.06;
    const springLength = 120;
    const centering = 0.02;
    const damping = 0.85;
    for (const a of this.nodes) {
      let fx = (this.width / 2 - a.x) * centering;
      let fy = (this.height / 2 - a.y) * centering;
      for (const b of this.nodes) {
        if (a === b) continue;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const f = repulsion / d2;
        const d = Math.sqrt(d2);
        fx += (dx / d) * f;
        fy += (dy / d) * f;
      }
      a.vx = (a.vx + fx * dt) * damping;
      a.vy = (a.vy + fy * dt) * damping;
    }
    for (const edge of this.edges) {
      const a = this.byId(edge.source);
      const b = this.byId(edge.target);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(5, Math.sqrt(dx * dx + dy * dy));
      const f = spring * (d - springLength) * Math.min(3, edge.weight);
      a.vx += ((dx / d) * f) * dt * 50;
      a.vy += ((dy / d) * f) * dt * 50;
      b.vx -= ((dx / d) * f) * dt * 50;
      b.vy -= ((dy / d) * f) * dt * 50;
    }
    for (const node of this.nodes) {
      node.x = Math.min(this.width - 20, Math.max(20, node.x + node.vx));
      node.y = Math.min(this.height - 20, Math.max(20, node.y + node.vy));
    }
  }
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderGraph(
  doc: Document,
  payload: GraphPayload,
  options: { width?: number; height?: number; settle?: number } = {},
): SVGSVGElement {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const layout = new ForceLayout(payload, width, height);
  for (let i = 0; i < (options.settle ?? 60); i++) layout.step();

  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "graph-canvas");
  for (const edge of layout.edges) {
    const a = layout.nodes.find((n) => n.id === edge.source);
    const b = layout.nodes.find((n) => n.id === edge.target);
    if (!a || !b) continue;
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("class", `graph-edge kind-${edge.kind}`);
    line.setAttribute("stroke-width", String(Math.min(6, edge.weight)));
    svg.appendChild(line);
  }
  for (const node of layout.nodes) {
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", `graph-node type-${node.type}`);
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", node.x.toFixed(1));
    circle.setAttribute("cy", node.y.toFixed(1));
    circle.setAttribute("r", String(8 + 2 * Math.min(5, node.weight)));
    if (node.main_role) circle.setAttribute("data-main-role", node.main_role);
    circle.setAttribute("data-id", node.id);
    group.appendChild(circle);
    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", (node.x + 12).toFixed(1));
    label.setAttribute("y", (node.y + 4).toFixed(1));
    label.textContent = node.label;
    group.appendChild(label);
    svg.appendChild(group);
  }
  return svg;
}
