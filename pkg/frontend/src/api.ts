// Thin HTTP client for the session service. Every call returns the parsed
// document; domain failures (400/409) are thrown as ServiceError carrying
// the backend's structured diagnostic.

import type { Direction, EnumerationDoc, ErrorDoc, LayoutDoc, SessionDoc } from "./types.js";

export class ServiceError extends Error {
  constructor(
    public status: number,
    public diagnostic: ErrorDoc,
  ) {
    super(`${diagnostic.code}: ${diagnostic.message}`);
  }
}

export class SessionClient {
  constructor(private baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    const body = await response.text();
    const doc = body ? JSON.parse(body) : {};
    if (!response.ok) {
      throw new ServiceError(response.status, doc as ErrorDoc);
    }
    return doc as T;
  }

  fetchState(): Promise<SessionDoc> {
    return this.request<SessionDoc>("/api/slice");
  }

  /** Raw bytes of the bare state document (matches the CLI byte for byte). */
  async fetchStateRaw(): Promise<string> {
    const response = await fetch(this.baseUrl + "/api/slice/state");
    if (!response.ok) {
      throw new ServiceError(response.status, JSON.parse(await response.text()));
    }
    return response.text();
  }

  requestMutation(vertex: string, direction: Direction, version?: number): Promise<SessionDoc> {
    return this.request<SessionDoc>("/api/mutate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(version === undefined ? { vertex, direction } : { vertex, direction, version }),
    });
  }

  undo(): Promise<SessionDoc> {
    return this.request<SessionDoc>("/api/undo", { method: "POST", body: "{}" });
  }

  fetchEnumeration(): Promise<EnumerationDoc> {
    return this.request<EnumerationDoc>("/api/enumeration");
  }

  fetchLayout(): Promise<LayoutDoc> {
    return this.request<LayoutDoc>("/api/layout");
  }
}
