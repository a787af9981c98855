/** Pure HTML string renderers; no DOM access, so they test anywhere. */

import type {
  ClassName,
  MessageView,
  Policy,
  UserProfileView,
} from "./types.js";
import { FLAGGABLE_CLASSES } from "./types.js";

export const PAGE_SIZE = 10;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function timestamp(ts: number): string {
  return new Date(ts * 1000).toISOString().replace("T", " ").slice(0, 19);
}

/** A wall only ever shows published messages; anything else that leaks
 * into the payload is dropped here as a second line of defence. */
export function renderWallView(
  messages: MessageView[],
  page: number,
  limit: number = PAGE_SIZE,
): string {
  const published = messages.filter((m) => m.status === "published");
  const items = published
    .map(
      (m) => `<article class="post" data-id="${escapeHtml(m.message_id)}">
  <header><strong>${escapeHtml(m.author_id)}</strong> <time>${timestamp(m.created_ts)}</time></header>
  <p>${escapeHtml(m.text)}</p>
</article>`,
    )
    .join("\n");
  const body =
    published.length === 0
      ? `<p class="empty">Nothing on this wall yet.</p>`
      : items;
  const nextDisabled = messages.length === limit ? "" : " disabled";
  return `<section class="wall">
${body}
<footer class="pager">
  <button data-page="${page - 1}"${page > 1 ? "" : " disabled"}>Newer</button>
  <span>page ${page}</span>
  <button data-page="${page + 1}"${nextDisabled}>Older</button>
</footer>
</section>`;
}

function evidenceBars(m: MessageView): string {
  if (!m.evidence) return "";
  const flagged = new Set(m.flagged_classes);
  return FLAGGABLE_CLASSES.map((name) => {
    const p = m.evidence![name] ?? 0;
    const width = Math.round(p * 100);
    const hot = flagged.has(name) ? " flagged" : "";
    return `<div class="bar-row${hot}"><span class="bar-label">${name}</span><span class="bar"><span class="bar-fill" style="width:${width}%"></span></span><span class="bar-value">${p.toFixed(3)}</span></div>`;
  }).join("\n");
}

export function renderQueueView(
  pending: MessageView[],
  notice: string | null = null,
): string {
  const noticeHtml = notice
    ? `<p class="notice" role="alert">${escapeHtml(notice)}</p>`
    : "";
  if (pending.length === 0) {
    return `<section class="queue">${noticeHtml}<p class="empty">The review queue is empty.</p></section>`;
  }
  const cards = pending
    .map(
      (m) => `<article class="queued" data-id="${escapeHtml(m.message_id)}">
  <header><strong>${escapeHtml(m.author_id)}</strong> on <em>${escapeHtml(m.wall_id)}</em> <time>${timestamp(m.created_ts)}</time></header>
  <p>${escapeHtml(m.text)}</p>
  <div class="evidence">
${evidenceBars(m)}
  </div>
  <div class="actions">
    <button class="approve" data-action="approve" data-id="${escapeHtml(m.message_id)}">Approve</button>
    <button class="reject" data-action="reject" data-id="${escapeHtml(m.message_id)}">Reject</button>
  </div>
</article>`,
    )
    .join("\n");
  return `<section class="queue">${noticeHtml}
${cards}
</section>`;
}

export function renderUserPanel(profile: UserProfileView): string {
  const blocked = profile.blocked
    ? `<span class="badge blocked">blocked</span>`
    : `<span class="badge ok">active</span>`;
  const restricted =
    profile.restricted_classes.length > 0
      ? profile.restricted_classes
          .map((c) => `<span class="chip">${escapeHtml(c)}</span>`)
          .join(" ")
      : "<span class=\"none\">none</span>";
  const counts = FLAGGABLE_CLASSES.map((name) => {
    const count = profile.per_class_flag_counts[name] ?? 0;
    return `<tr><td>${name}</td><td>${count}</td></tr>`;
  }).join("\n");
  const window = profile.recent_outcomes
    .map((classes) =>
      classes.length === 0
        ? `<li class="clean">clean</li>`
        : `<li class="hit">${classes.map(escapeHtml).join(", ")}</li>`,
    )
    .join("\n");
  const toggleLabel = profile.blocked ? "Unblock" : "Block";
  return `<section class="user" data-id="${escapeHtml(profile.user_id)}">
<header><strong>${escapeHtml(profile.user_id)}</strong> ${blocked}</header>
<p>Restricted classes: ${restricted}</p>
<table class="counts"><thead><tr><th>class</th><th>flags</th></tr></thead><tbody>
${counts}
</tbody></table>
<ol class="window">
${window}
</ol>
<button data-action="toggle-block" data-id="${escapeHtml(profile.user_id)}" data-blocked="${profile.blocked}">${toggleLabel}</button>
</section>`;
}

export function renderRulesForm(
  policy: Policy,
  errors: string[] = [],
  saved: boolean = false,
): string {
  const enabled = new Set(policy.enabled_classes);
  const checkboxes = FLAGGABLE_CLASSES.map(
    (name) =>
      `<label><input type="checkbox" name="class" value="${name}"${enabled.has(name) ? " checked" : ""}> ${name}</label>`,
  ).join("\n");
  const errorHtml =
    errors.length > 0
      ? `<ul class="errors" role="alert">\n${errors
          .map((e) => `<li>${escapeHtml(e)}</li>`)
          .join("\n")}\n</ul>`
      : "";
  const savedHtml = saved ? `<p class="saved">Rules saved.</p>` : "";
  return `<form class="rules" id="rules-form">
${errorHtml}${savedHtml}
<label>Flag threshold (tau)
  <input type="range" name="tau-slider" min="0.01" max="0.99" step="0.01" value="${policy.tau}">
  <input type="number" name="tau" min="0.01" max="0.99" step="0.01" value="${policy.tau}">
</label>
<fieldset><legend>Enabled classes</legend>
${checkboxes}
</fieldset>
<label>Block ratio (rho)
  <input type="number" name="rho" min="0.01" max="1" step="0.01" value="${policy.rho}">
</label>
<label>Window size (n)
  <input type="number" name="n" min="1" step="1" value="${policy.n}">
</label>
<button type="submit">Save rules</button>
</form>`;
}

export function renderPostForm(result: string | null = null): string {
  const resultHtml = result
    ? `<p class="post-result">${escapeHtml(result)}</p>`
    : "";
  return `<form class="composer" id="post-form">
${resultHtml}
<label>Wall <input type="text" name="wall_id" value="main"></label>
<label>Author <input type="text" name="author_id" placeholder="user id"></label>
<label>Message <textarea name="text" rows="3"></textarea></label>
<button type="submit">Post</button>
</form>`;
}
