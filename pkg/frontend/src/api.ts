// Thin API client. Every follow-up interaction carries a server-provided
// URL, so the client only ever passes descriptors through; it builds no
// query logic of its own beyond the three entry points.

import type { RecommendationResponse, SceneGraph, UsersResponse } from './types.js';

export type FetchJson = (url: string) => Promise<unknown>;

export class ApiError extends Error {
  constructor(public url: string, message: string) {
    super(`${url}: ${message}`);
  }
}

export function browserFetchJson(base = ''): FetchJson {
  return async (url: string) => {
    const res = await fetch(base + url);
    if (!res.ok) {
      let detail = `HTTP ${res.status}`;
      try {
        const body = (await res.json()) as { detail?: string };
        if (body.detail) detail = `${detail}: ${body.detail}`;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(url, detail);
    }
    return res.json();
  };
}

export class Api {
  constructor(private readonly fetchJson: FetchJson) {}

  users(): Promise<UsersResponse> {
    return this.fetchJson('/api/users') as Promise<UsersResponse>;
  }

  scene(userId: string, kind: string): Promise<SceneGraph> {
    return this.fetchJson(
      `/api/users/${encodeURIComponent(userId)}/plot/${encodeURIComponent(kind)}`,
    ) as Promise<SceneGraph>;
  }

  /** Issue a follow-up request descriptor exactly as the scene provided it. */
  followScene(url: string): Promise<SceneGraph> {
    return this.fetchJson(url) as Promise<SceneGraph>;
  }

  followRecommendation(url: string): Promise<RecommendationResponse> {
    return this.fetchJson(url) as Promise<RecommendationResponse>;
  }
}
