/** Typed client over fetch; the manager token lives in memory only. */

import type {
  ClassName,
  Health,
  MessageView,
  Policy,
  PostResult,
  UserProfileView,
  WallRules,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private token: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  setToken(token: string | null): void {
    this.token = token && token.trim() ? token.trim() : null;
  }

  hasToken(): boolean {
    return this.token !== null;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token !== null) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const payload = (await response.json()) as { detail?: unknown };
        if (payload && payload.detail !== undefined) {
          detail =
            typeof payload.detail === "string"
              ? payload.detail
              : JSON.stringify(payload.detail);
        }
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  getWall(wallId: string, page = 1, limit = 10): Promise<MessageView[]> {
    const query = `?page=${page}&limit=${limit}`;
    return this.request("GET", `/walls/${encodeURIComponent(wallId)}${query}`);
  }

  getRules(wallId: string): Promise<WallRules> {
    return this.request("GET", `/walls/${encodeURIComponent(wallId)}/rules`);
  }

  putRules(wallId: string, policy: Policy): Promise<WallRules> {
    return this.request(
      "PUT",
      `/walls/${encodeURIComponent(wallId)}/rules`,
      policy,
    );
  }

  getQueue(className?: ClassName | null): Promise<MessageView[]> {
    const query = className ? `?class=${encodeURIComponent(className)}` : "";
    return this.request("GET", `/moderation/queue${query}`);
  }

  decide(messageId: string, action: "approve" | "reject"): Promise<MessageView> {
    return this.request("POST", `/moderation/${encodeURIComponent(messageId)}`, {
      action,
    });
  }

  getUser(userId: string): Promise<UserProfileView> {
    return this.request("GET", `/users/${encodeURIComponent(userId)}`);
  }

  setBlock(userId: string, blocked: boolean): Promise<UserProfileView> {
    return this.request("POST", `/users/${encodeURIComponent(userId)}/block`, {
      blocked,
    });
  }

  postMessage(
    wallId: string,
    authorId: string,
    text: string,
  ): Promise<PostResult> {
    return this.request(
      "POST",
      `/walls/${encodeURIComponent(wallId)}/messages`,
      { author_id: authorId, text },
    );
  }

  health(): Promise<Health> {
    return this.request("GET", "/healthz");
  }
}
