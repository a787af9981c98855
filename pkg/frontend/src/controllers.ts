/** View-model state machines; every transition is driven by API data. */

import { ApiClient, ApiError } from "./api.js";
import type { ClassName, MessageView, Policy } from "./types.js";
import { FLAGGABLE_CLASSES } from "./types.js";

/** Review queue with optimistic decisions.
 *
 * A decision removes the message from the local list immediately and is
 * reconciled when the server answers: conflicts (someone else decided
 * first) surface a notice and force a resync, other failures put the
 * message back. A decision already in flight for a message id makes
 * further clicks no-ops, so double-clicks cause a single API call.
 */
export class QueueController {
  pending: MessageView[] = [];
  notice: string | null = null;
  classFilter: ClassName | null = null;
  private readonly inFlight = new Set<string>();

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
  ) {}

  async sync(): Promise<void> {
    this.pending = await this.api.getQueue(this.classFilter);
    this.onChange();
  }

  async decide(messageId: string, action: "approve" | "reject"): Promise<void> {
    if (this.inFlight.has(messageId)) return;
    const index = this.pending.findIndex((m) => m.message_id === messageId);
    if (index < 0) return;
    const removed = this.pending[index]!;
    this.inFlight.add(messageId);
    this.pending = this.pending.filter((m) => m.message_id !== messageId);
    this.notice = null;
    this.onChange();
    try {
      await this.api.decide(messageId, action);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.notice = `Message was already decided elsewhere: ${error.detail}`;
        await this.sync();
      } else {
        this.pending = [
          ...this.pending.slice(0, index),
          removed,
          ...this.pending.slice(index),
        ];
        this.notice =
          error instanceof Error ? error.message : "decision failed";
      }
    } finally {
      this.inFlight.delete(messageId);
      this.onChange();
    }
  }
}

/** Problems with a rules form, empty when it is safe to submit. */
export function validateRules(policy: Policy): string[] {
  const problems: string[] = [];
  if (!(policy.tau > 0 && policy.tau < 1)) {
    problems.push("tau must be strictly between 0 and 1");
  }
  if (!(policy.rho > 0 && policy.rho <= 1)) {
    problems.push("rho must be in (0, 1]");
  }
  if (!(Number.isInteger(policy.n) && policy.n >= 1)) {
    problems.push("n must be an integer >= 1");
  }
  const allowed = new Set<string>(FLAGGABLE_CLASSES);
  for (const name of policy.enabled_classes) {
    if (!allowed.has(name)) problems.push(`${name} is not a flaggable class`);
  }
  return problems;
}

/** Rules editor: client-side validation first, server errors rendered
 * on the form, the effective policy echoed back after a save. */
export class RulesController {
  policy: Policy | null = null;
  errors: string[] = [];
  savedAt: number | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
  ) {}

  async load(wallId: string): Promise<void> {
    this.policy = (await this.api.getRules(wallId)).policy;
    this.errors = [];
    this.onChange();
  }

  async save(wallId: string, form: Policy): Promise<boolean> {
    this.errors = validateRules(form);
    this.savedAt = null;
    if (this.errors.length > 0) {
      this.onChange();
      return false;
    }
    try {
      this.policy = (await this.api.putRules(wallId, form)).policy;
      this.savedAt = Date.now();
      this.onChange();
      return true;
    } catch (error) {
      this.errors = [
        error instanceof ApiError ? error.detail : String(error),
      ];
      this.onChange();
      return false;
    }
  }
}
