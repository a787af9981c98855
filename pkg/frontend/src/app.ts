/** Browser entry point: wires the API client, pollers, controllers and
 * string views to the page. All logic lives in the imported modules. */

import { ApiClient, ApiError } from "./api.js";
import { QueueController, RulesController } from "./controllers.js";
import { createPoller } from "./poll.js";
import type { ClassName, MessageView, Policy } from "./types.js";
import { FLAGGABLE_CLASSES } from "./types.js";
import {
  PAGE_SIZE,
  renderPostForm,
  renderQueueView,
  renderRulesForm,
  renderUserPanel,
  renderWallView,
} from "./views.js";

const api = new ApiClient("");

const wallPane = document.getElementById("pane-wall")!;
const queuePane = document.getElementById("pane-queue")!;
const queueList = document.getElementById("queue-list")!;
const usersPane = document.getElementById("pane-users")!;
const rulesPane = document.getElementById("pane-rules")!;
const postPane = document.getElementById("pane-post")!;
const statusLine = document.getElementById("status")!;

let wallId = "main";
let wallPage = 1;
let wallMessages: MessageView[] = [];
let postResult: string | null = null;
let rulesSaved = false;

const queue = new QueueController(api, () => {
  queueList.innerHTML = renderQueueView(queue.pending, queue.notice);
});
const rules = new RulesController(api, () => {
  if (rules.policy) {
    rulesPane.innerHTML = renderRulesForm(rules.policy, rules.errors, rulesSaved);
  }
});

function setStatus(text: string): void {
  statusLine.textContent = text;
}

async function refreshWall(): Promise<void> {
  wallMessages = await api.getWall(wallId, wallPage, PAGE_SIZE);
  wallPane.innerHTML = renderWallView(wallMessages, wallPage, PAGE_SIZE);
}

const wallPoller = createPoller(refreshWall, 2000, (e) =>
  setStatus(`wall refresh failed: ${e instanceof Error ? e.message : e}`),
);
const queuePoller = createPoller(
  () => queue.sync(),
  2000,
  (e) => setStatus(`queue refresh failed: ${e instanceof Error ? e.message : e}`),
);

// --- tabs ---------------------------------------------------------------

const panes: Record<string, HTMLElement> = {
  wall: wallPane,
  queue: queuePane,
  users: usersPane,
  rules: rulesPane,
  post: postPane,
};

function showTab(name: string): void {
  for (const [key, pane] of Object.entries(panes)) {
    pane.hidden = key !== name;
  }
  for (const button of document.querySelectorAll<HTMLButtonElement>("nav button")) {
    button.classList.toggle("active", button.dataset["tab"] === name);
  }
  if (name === "rules" && !rules.policy) {
    rules.load(wallId).catch((e) => setStatus(String(e)));
  }
}

document.querySelector("nav")!.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest("button[data-tab]");
  if (button instanceof HTMLButtonElement) showTab(button.dataset["tab"]!);
});

// --- manager token (kept in memory only) --------------------------------

const tokenInput = document.getElementById("token") as HTMLInputElement;
tokenInput.addEventListener("change", () => {
  api.setToken(tokenInput.value);
  setStatus(api.hasToken() ? "manager token set" : "manager token cleared");
  queuePoller.refresh();
});

// --- wall pane ----------------------------------------------------------

wallPane.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest("button[data-page]");
  if (!(button instanceof HTMLButtonElement) || button.disabled) return;
  wallPage = Math.max(1, Number(button.dataset["page"]));
  wallPoller.refresh();
});

const wallInput = document.getElementById("wall-id") as HTMLInputElement;
wallInput.addEventListener("change", () => {
  wallId = wallInput.value.trim() || "main";
  wallPage = 1;
  rules.policy = null;
  wallPoller.refresh();
});

// --- queue pane ---------------------------------------------------------

queuePane.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest("button[data-action]");
  if (!(button instanceof HTMLButtonElement)) return;
  const action = button.dataset["action"];
  const id = button.dataset["id"]!;
  if (action === "approve" || action === "reject") {
    queue.decide(id, action).then(() => wallPoller.refresh());
  }
});

const filterSelect = document.getElementById("queue-filter") as HTMLSelectElement;
filterSelect.addEventListener("change", () => {
  const value = filterSelect.value;
  queue.classFilter = (FLAGGABLE_CLASSES as readonly string[]).includes(value)
    ? (value as ClassName)
    : null;
  queuePoller.refresh();
});

// --- users pane ---------------------------------------------------------

const userForm = document.getElementById("user-form") as HTMLFormElement;
const userPanel = document.getElementById("user-panel")!;

async function loadUser(userId: string): Promise<void> {
  try {
    userPanel.innerHTML = renderUserPanel(await api.getUser(userId));
  } catch (error) {
    userPanel.innerHTML = `<p class="empty">${
      error instanceof ApiError && error.status === 404
        ? "No such user."
        : "Could not load user."
    }</p>`;
  }
}

userForm.addEventListener("submit", (event) => {
  event.preventDefault();
  const input = userForm.elements.namedItem("user_id") as HTMLInputElement;
  if (input.value.trim()) loadUser(input.value.trim());
});

userPanel.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest(
    'button[data-action="toggle-block"]',
  );
  if (!(button instanceof HTMLButtonElement)) return;
  const id = button.dataset["id"]!;
  const blocked = button.dataset["blocked"] === "true";
  api
    .setBlock(id, !blocked)
    .then((profile) => {
      userPanel.innerHTML = renderUserPanel(profile);
    })
    .catch((e) => setStatus(String(e)));
});

// --- rules pane ---------------------------------------------------------

rulesPane.addEventListener("input", (event) => {
  const target = event.target as HTMLInputElement;
  const form = document.getElementById("rules-form") as HTMLFormElement | null;
  if (!form) return;
  const tau = form.elements.namedItem("tau") as HTMLInputElement;
  const slider = form.elements.namedItem("tau-slider") as HTMLInputElement;
  if (target === slider) tau.value = slider.value;
  if (target === tau) slider.value = tau.value;
});

rulesPane.addEventListener("submit", (event) => {
  event.preventDefault();
  const form = event.target as HTMLFormElement;
  const enabled: ClassName[] = [];
  for (const box of form.querySelectorAll<HTMLInputElement>(
    'input[name="class"]:checked',
  )) {
    enabled.push(box.value as ClassName);
  }
  const policy: Policy = {
    tau: Number((form.elements.namedItem("tau") as HTMLInputElement).value),
    enabled_classes: enabled,
    rho: Number((form.elements.namedItem("rho") as HTMLInputElement).value),
    n: Number((form.elements.namedItem("n") as HTMLInputElement).value),
  };
  rules.save(wallId, policy).then((ok) => {
    rulesSaved = ok;
    if (rules.policy) {
      rulesPane.innerHTML = renderRulesForm(rules.policy, rules.errors, rulesSaved);
    }
  });
});

// --- post pane ----------------------------------------------------------

postPane.addEventListener("submit", (event) => {
  event.preventDefault();
  const form = event.target as HTMLFormElement;
  const wall = (form.elements.namedItem("wall_id") as HTMLInputElement).value;
  const author = (form.elements.namedItem("author_id") as HTMLInputElement).value;
  const text = (form.elements.namedItem("text") as HTMLTextAreaElement).value;
  api
    .postMessage(wall.trim(), author.trim(), text)
    .then((result) => {
      postResult =
        result.status === "published"
          ? `Published as ${result.message_id}.`
          : result.status === "pending"
            ? `Held for review (${result.message_id}).`
            : `Rejected (author is blocked or restricted).`;
      postPane.innerHTML = renderPostForm(postResult);
      wallPoller.refresh();
      queuePoller.refresh();
    })
    .catch((e) => {
      postResult = e instanceof ApiError ? e.detail : String(e);
      postPane.innerHTML = renderPostForm(postResult);
    });
});

// --- boot ---------------------------------------------------------------

postPane.innerHTML = renderPostForm(postResult);
showTab("wall");
api
  .health()
  .then((h) => setStatus(`connected, model ${h.model_version}`))
  .catch(() => setStatus("service unreachable"));
wallPoller.start();
queuePoller.start();
