/** Wire types for the moderation service JSON API. */

export type ClassName =
  | "neutral"
  | "sexual"
  | "hatred"
  | "offensive"
  | "pun_intended";

export const ALL_CLASSES: readonly ClassName[] = [
  "neutral",
  "sexual",
  "hatred",
  "offensive",
  "pun_intended",
];

/** Classes a policy may flag; neutral is never flaggable. */
export const FLAGGABLE_CLASSES: readonly ClassName[] = [
  "sexual",
  "hatred",
  "offensive",
  "pun_intended",
];

export type Evidence = Record<ClassName, number>;

export type MessageStatus = "published" | "pending" | "rejected" | "deleted";

export interface MessageView {
  message_id: string;
  wall_id: string;
  author_id: string;
  text: string;
  status: MessageStatus;
  flagged_classes: ClassName[];
  evidence: Evidence | null;
  manager_action: { action: string; actor: string; ts: number } | null;
  rejected_reason: string | null;
  created_ts: number;
}

export interface PostResult {
  message_id: string;
  status: MessageStatus;
  evidence: Evidence | null;
}

export interface Policy {
  tau: number;
  enabled_classes: ClassName[];
  rho: number;
  n: number;
}

export interface WallRules {
  wall_id: string;
  owner_id: string;
  policy: Policy;
}

export interface UserProfileView {
  user_id: string;
  recent_outcomes: ClassName[][];
  per_class_flag_counts: Partial<Record<ClassName, number>>;
  restricted_classes: ClassName[];
  blocked: boolean;
}

export interface Health {
  status: string;
  model_version: string;
}
