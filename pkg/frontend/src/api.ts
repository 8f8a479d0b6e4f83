/**
 * Typed client for the thesaurus JSON API. The UI performs no scoring or
 * relation logic of its own: every displayed score and suggestion comes
 * straight out of these responses.
 */

import type { AppConfig } from "./config.js";

export interface Revision {
  timestamp: string;
  editor: string;
  summary: string;
}

export interface Explanation {
  text: string;
  category: string;
}

export interface EntryRecord {
  id: string;
  term: string;
  variants: string[];
  explanations: Explanation[];
  translations: Record<string, string[]>;
  broader: string[];
  narrower: string[];
  status: "candidate" | "approved" | "rejected";
  source: string;
  reliability: number;
  revisions: Revision[];
}

export interface EntryRef {
  id: string;
  term: string;
  status: string;
}

export interface EntryDetail {
  entry: EntryRecord;
  broader_terms: EntryRef[];
  narrower_terms: EntryRef[];
  examples: ExampleLine[];
  related: RelatedTerm[];
}

export interface ExampleLine {
  doc_id: string;
  offset: number;
  left: string;
  match: string;
  right: string;
}

export interface RelatedTerm {
  term: string;
  similarity: number;
  in_store: boolean;
}

export interface TreeNode {
  id: string;
  term: string;
  status: string;
  children: TreeNode[];
}

export interface SearchResult {
  id: string;
  term: string;
  status: string;
  match: number | null;
  score: number | null;
}

export interface Page<T> {
  results: T[];
  total: number;
  page: number;
  page_size: number;
}

export interface CandidateItem {
  id: string;
  term: string;
  source: string;
  rank: number | null;
  revision: number;
}

export interface HypernymSuggestion {
  hyponym: string;
  hypernym: string;
  method: string;
  score: number;
  evidence: [string, number][];
  store_ids: string[];
}

export interface TranslationSuggestion {
  source_term: string;
  target_term: string;
  overlap: number;
  rank: number;
}

export interface Suggestions {
  id: string;
  term: string;
  hypernyms: HypernymSuggestion[];
  translations: Record<string, TranslationSuggestion[]>;
}

export interface EntryUpdate {
  term?: string;
  variants?: string[];
  explanations?: Explanation[];
  translations?: Record<string, string[]>;
  broader?: string[];
  status?: string;
  source?: string;
  reliability?: number;
  expected_revision?: number;
}

export interface ReviewRequest {
  decision: "approve" | "reject";
  broader?: string[];
  edits?: Partial<EntryUpdate>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly config: AppConfig) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { Accept: "application/json" };
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.config.token) headers["Authorization"] = `Bearer ${this.config.token}`;
    const response = await fetch(this.config.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    if (!response.ok) {
      let code = "error";
      let message = text || response.statusText;
      try {
        const parsed = JSON.parse(text);
        code = parsed?.error?.code ?? code;
        message = parsed?.error?.message ?? message;
      } catch {
        // non-JSON error body; keep raw text
      }
      throw new ApiError(response.status, code, message);
    }
    return JSON.parse(text) as T;
  }

  search(
    q: string,
    opts: { includeCandidates?: boolean; includeRejected?: boolean } = {},
  ): Promise<Page<SearchResult>> {
    const params = new URLSearchParams({ q });
    if (opts.includeCandidates) params.set("include_candidates", "true");
    if (opts.includeRejected) params.set("include_rejected", "true");
    return this.request("GET", `/entries?${params}`);
  }

  entry(id: string): Promise<EntryDetail> {
    return this.request("GET", `/entries/${encodeURIComponent(id)}`);
  }

  tree(root?: string, depth?: number): Promise<{ tree: TreeNode[] }> {
    const params = new URLSearchParams();
    if (root !== undefined) params.set("root", root);
    if (depth !== undefined) params.set("depth", String(depth));
    const suffix = params.size ? `?${params}` : "";
    return this.request("GET", `/tree${suffix}`);
  }

  candidates(): Promise<Page<CandidateItem>> {
    return this.request("GET", "/candidates");
  }

  suggestions(id: string): Promise<Suggestions> {
    return this.request("GET", `/entries/${encodeURIComponent(id)}/suggestions`);
  }

  examples(id: string): Promise<{ examples: ExampleLine[] }> {
    return this.request("GET", `/entries/${encodeURIComponent(id)}/examples`);
  }

  createEntry(body: EntryUpdate): Promise<{ id: string; entry: EntryRecord }> {
    return this.request("POST", "/entries", body);
  }

  updateEntry(id: string, body: EntryUpdate): Promise<{ id: string; entry: EntryRecord }> {
    return this.request("PUT", `/entries/${encodeURIComponent(id)}`, body);
  }

  review(id: string, body: ReviewRequest): Promise<{ id: string; entry: EntryRecord }> {
    return this.request("POST", `/candidates/${encodeURIComponent(id)}/review`, body);
  }

  dump(): Promise<unknown> {
    return this.request("GET", "/export/dump");
  }
}
