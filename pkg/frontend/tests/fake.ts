/** Test doubles: a recording fetch and a tiny in-memory service. */

import type { ClassName, Evidence, MessageView, Policy } from "../src/types.js";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

export type RouteHandler = (call: RecordedCall) => Response | Promise<Response>;

/** Wraps a handler in a fetch-compatible function that records every call. */
export function makeFetch(handler: RouteHandler): {
  fetchFn: (input: string, init?: RequestInit) => Promise<Response>;
  calls: RecordedCall[];
} {
  const calls: RecordedCall[] = [];
  const fetchFn = async (
    input: string,
    init?: RequestInit,
  ): Promise<Response> => {
    const call: RecordedCall = {
      url: input,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    };
    calls.push(call);
    return handler(call);
  };
  return { fetchFn, calls };
}

let seq = 0;

export function makeMessage(overrides: Partial<MessageView> = {}): MessageView {
  seq += 1;
  return {
    message_id: `m-${seq}`,
    wall_id: "main",
    author_id: "alice",
    text: "hello there",
    status: "published",
    flagged_classes: [],
    evidence: null,
    manager_action: null,
    rejected_reason: null,
    created_ts: 1_700_000_000 + seq,
    ...overrides,
  };
}

const NEUTRAL_EVIDENCE: Evidence = {
  neutral: 0.9,
  sexual: 0.02,
  hatred: 0.02,
  offensive: 0.03,
  pun_intended: 0.01,
};

const HOSTILE_EVIDENCE: Evidence = {
  neutral: 0.2,
  sexual: 0.05,
  hatred: 0.63,
  offensive: 0.22,
  pun_intended: 0.01,
};

/** In-memory stand-in for the moderation service covering the routes the
 * console uses. Texts containing "hate" score 0.63 on hatred; everything
 * else scores well under the default threshold. */
export class FakeService {
  wall: MessageView[] = [];
  queue: MessageView[] = [];
  policy: Policy = {
    tau: 0.3,
    enabled_classes: ["sexual", "hatred", "offensive", "pun_intended"],
    rho: 0.5,
    n: 10,
  };

  readonly handler: RouteHandler = async (call) => {
    const url = new URL(call.url, "http://test.local");
    const path = url.pathname;

    if (call.method === "GET" && /^\/walls\/[^/]+$/.test(path)) {
      const page = Number(url.searchParams.get("page") ?? "1");
      const limit = Number(url.searchParams.get("limit") ?? "10");
      const start = (page - 1) * limit;
      return jsonResponse(this.wall.slice(start, start + limit));
    }
    if (call.method === "GET" && path === "/moderation/queue") {
      const wanted = url.searchParams.get("class");
      const items = wanted
        ? this.queue.filter((m) =>
            m.flagged_classes.includes(wanted as ClassName),
          )
        : this.queue;
      return jsonResponse(items);
    }
    if (call.method === "POST" && /^\/moderation\/[^/]+$/.test(path)) {
      const id = decodeURIComponent(path.split("/")[2]!);
      const index = this.queue.findIndex((m) => m.message_id === id);
      if (index < 0) {
        return jsonResponse({ detail: `message is not pending: ${id}` }, 409);
      }
      const message = this.queue.splice(index, 1)[0]!;
      const action = (call.body as { action: string }).action;
      if (action === "approve") {
        message.status = "published";
        this.wall.unshift(message);
      } else {
        message.status = "rejected";
      }
      return jsonResponse(message);
    }
    if (call.method === "PUT" && /^\/walls\/[^/]+\/rules$/.test(path)) {
      const policy = call.body as Policy;
      if (!(policy.tau > 0 && policy.tau < 1)) {
        return jsonResponse({ detail: "tau must be in (0, 1)" }, 422);
      }
      this.policy = policy;
      return jsonResponse({ wall_id: "main", owner_id: "owner", policy });
    }
    if (call.method === "GET" && /^\/walls\/[^/]+\/rules$/.test(path)) {
      return jsonResponse({
        wall_id: "main",
        owner_id: "owner",
        policy: this.policy,
      });
    }
    if (call.method === "POST" && /^\/walls\/[^/]+\/messages$/.test(path)) {
      const body = call.body as { author_id: string; text: string };
      const hostile = body.text.includes("hate");
      const evidence = hostile ? HOSTILE_EVIDENCE : NEUTRAL_EVIDENCE;
      const flagged = this.policy.enabled_classes.filter(
        (name) => evidence[name] >= this.policy.tau,
      );
      const message = makeMessage({
        author_id: body.author_id,
        text: body.text,
        evidence,
        flagged_classes: flagged,
        status: flagged.length > 0 ? "pending" : "published",
      });
      if (flagged.length > 0) {
        this.queue.push(message);
      } else {
        this.wall.unshift(message);
      }
      return jsonResponse(
        {
          message_id: message.message_id,
          status: message.status,
          evidence: message.evidence,
        },
        201,
      );
    }
    return jsonResponse({ detail: `no route: ${call.method} ${path}` }, 404);
  };
}
