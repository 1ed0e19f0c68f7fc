/** API payload shapes, mirroring the analysis service wire format. */

export type MainRole = "Protagonist" | "Antagonist" | "Innocent";

export interface FineRoleScore {
  role: string;
  p: number;
}

export interface EntityPayload {
  start: number;
  end: number;
  text: string;
  main_role: MainRole;
  confidence: number;
  fine_roles: FineRoleScore[];
  sentence_ordinal: number;
  is_repeat: boolean;
}

export interface AnnotationsPayload {
  filename: string;
  language: string;
  text: string;
  entities: EntityPayload[];
  n_entities_total: number;
  n_hidden_repeats: number;
  sentences: [number, number][];
}

export interface SessionInfo {
  id: string;
  created_at: string;
}

export interface ArticleInfo {
  filename: string;
  created_at: string;
  language: string;
  n_entities: number;
}

export interface SentenceRow {
  filename: string;
  sentence_ordinal: number;
  sentence: string;
  entities: EntityPayload[];
}

export interface SearchHit {
  filename: string;
  start: number;
  end: number;
  match: string;
  sentence_ordinal: number;
  sentence: string;
}

export interface GraphNode {
  id: string;
  type: "entity" | "role";
  label: string;
  main_role?: MainRole;
  articles: string[];
  weight: number;
}

export interface GraphEdge {
  source: string;
  target: string;
  kind: "assigned" | "entity_cooccurrence" | "role_cooccurrence";
  articles: string[];
  weight: number;
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface TimelineItem {
  sentence_ordinal: number;
  start: number;
  end: number;
  surface: string;
  main_role: MainRole;
  fine_roles: FineRoleScore[];
  sentence: string;
  transition: boolean;
}

export interface ComparePayload {
  articles: AnnotationsPayload[];
  cumulative: {
    main_roles: Record<string, number>;
    fine_roles: Record<string, number>;
  };
}

export type Taxonomy = Record<string, string[]>;
