import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { createPoller } from "../src/poll.js";

describe("createPoller", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("runs the first tick immediately on start", async () => {
    let ticks = 0;
    const poller = createPoller(async () => {
      ticks += 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    expect(ticks).toBe(1);
    expect(poller.running).toBe(true);
  });

  it("ticks once per interval afterwards", async () => {
    let ticks = 0;
    const poller = createPoller(async () => {
      ticks += 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    await vi.advanceTimersByTimeAsync(2000);
    expect(ticks).toBe(2);
    await vi.advanceTimersByTimeAsync(4000);
    expect(ticks).toBe(4);
  });

  it("never overlaps ticks: refresh during a slow tick is a no-op", async () => {
    let ticks = 0;
    let release: () => void = () => {};
    const poller = createPoller(
      () =>
        new Promise<void>((resolve) => {
          ticks += 1;
          release = resolve;
        }),
      2000,
    );
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    expect(ticks).toBe(1);

    void poller.refresh();
    void poller.refresh();
    await vi.advanceTimersByTimeAsync(0);
    expect(ticks).toBe(1);

    release();
    await vi.advanceTimersByTimeAsync(0);
    await vi.advanceTimersByTimeAsync(2000);
    expect(ticks).toBe(2);
  });

  it("waits out a slow tick instead of stacking timers", async () => {
    let ticks = 0;
    let release: () => void = () => {};
    const poller = createPoller(
      () =>
        new Promise<void>((resolve) => {
          ticks += 1;
          release = resolve;
        }),
      2000,
    );
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    await vi.advanceTimersByTimeAsync(10_000);
    expect(ticks).toBe(1);
    release();
    await vi.advanceTimersByTimeAsync(0);
    await vi.advanceTimersByTimeAsync(2000);
    expect(ticks).toBe(2);
  });

  it("stop halts future ticks", async () => {
    let ticks = 0;
    const poller = createPoller(async () => {
      ticks += 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    poller.stop();
    expect(poller.running).toBe(false);
    await vi.advanceTimersByTimeAsync(10_000);
    expect(ticks).toBe(1);
  });

  it("start is idempotent while running", async () => {
    let ticks = 0;
    const poller = createPoller(async () => {
      ticks += 1;
    }, 2000);
    poller.start();
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    expect(ticks).toBe(1);
  });

  it("refresh works without start", async () => {
    let ticks = 0;
    const poller = createPoller(async () => {
      ticks += 1;
    }, 2000);
    await poller.refresh();
    expect(ticks).toBe(1);
    expect(poller.running).toBe(false);
    await vi.advanceTimersByTimeAsync(10_000);
    expect(ticks).toBe(1);
  });

  it("reports tick failures and keeps polling", async () => {
    const seen: unknown[] = [];
    let ticks = 0;
    const poller = createPoller(
      async () => {
        ticks += 1;
        if (ticks === 1) throw new Error("down");
      },
      2000,
      (error) => seen.push(error),
    );
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    expect(seen).toHaveLength(1);
    expect((seen[0] as Error).message).toBe("down");
    await vi.advanceTimersByTimeAsync(2000);
    expect(ticks).toBe(2);
    expect(seen).toHaveLength(1);
  });
});
