/** Thin typed client for the analysis service. The frontend never computes
 * roles or scores itself: every number displayed comes from these payloads. */

import type {
  AnnotationsPayload,
  ArticleInfo,
  ComparePayload,
  GraphPayload,
  SearchHit,
  SentenceRow,
  SessionInfo,
  Taxonomy,
  TimelineItem,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    params?: Record<string, string>,
    body?: unknown,
  ): Promise<T> {
    let url = this.baseUrl + path;
    if (params) {
      const qs = new URLSearchParams(params).toString();
      if (qs) url += `?${qs}`;
    }
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const response = await this.fetchFn(url, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        payload && typeof payload.detail === "string"
          ? payload.detail
          : `request failed (${response.status})`;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  taxonomy(): Promise<Taxonomy> {
    return this.request("GET", "/taxonomy");
  }

  createSession(): Promise<SessionInfo> {
    return this.request("POST", "/sessions");
  }

  ingest(
    sessionId: string,
    body: { filename: string; text?: string; url?: string },
  ): Promise<AnnotationsPayload> {
    return this.request("POST", `/sessions/${sessionId}/articles`, undefined, body);
  }

  listArticles(sessionId: string): Promise<ArticleInfo[]> {
    return this.request("GET", `/sessions/${sessionId}/articles`);
  }

  annotations(
    sessionId: string,
    filename: string,
    minConfidence: number,
    hideRepeats: boolean,
  ): Promise<AnnotationsPayload> {
    return this.request(
      "GET",
      `/sessions/${sessionId}/articles/${encodeURIComponent(filename)}/annotations`,
      {
        min_confidence: String(minConfidence),
        hide_repeats: String(hideRepeats),
      },
    );
  }

  sentences(sessionId: string, label: string, files?: string[]): Promise<SentenceRow[]> {
    const params: Record<string, string> = { label };
    if (files) params.files = files.join(",");
    return this.request("GET", `/sessions/${sessionId}/sentences`, params);
  }

  search(sessionId: string, q: string, files: string[]): Promise<SearchHit[]> {
    return this.request("GET", `/sessions/${sessionId}/search`, {
      q,
      files: files.join(","),
    });
  }

  graph(sessionId: string, files?: string[]): Promise<GraphPayload> {
    const params: Record<string, string> = {};
    if (files) params.files = files.join(",");
    return this.request("GET", `/sessions/${sessionId}/graph`, params);
  }

  timeline(sessionId: string, file: string, entity: string): Promise<TimelineItem[]> {
    return this.request("GET", `/sessions/${sessionId}/timeline`, { file, entity });
  }

  compare(sessionId: string, files: string[]): Promise<ComparePayload> {
    return this.request("GET", `/sessions/${sessionId}/compare`, {
      files: files.join(","),
    });
  }
}
