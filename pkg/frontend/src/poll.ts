/** Chained-timeout polling: the next tick is scheduled only after the
 * previous one settles, so slow responses never overlap. */

export interface Poller {
  start(): void;
  stop(): void;
  /** Run one tick immediately (no-op while a tick is in flight). */
  refresh(): Promise<void>;
  readonly running: boolean;
}

export function createPoller(
  tick: () => Promise<void>,
  intervalMs = 2000,
  onError: (error: unknown) => void = () => {},
): Poller {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let running = false;
  let inFlight = false;

  async function runOnce(): Promise<void> {
    if (inFlight) return;
    inFlight = true;
    try {
      await tick();
    } catch (error) {
      onError(error);
    } finally {
      inFlight = false;
    }
  }

  function schedule(): void {
    timer = setTimeout(async () => {
      await runOnce();
      if (running) schedule();
    }, intervalMs);
  }

  return {
    get running() {
      return running;
    },
    start() {
      if (running) return;
      running = true;
      void runOnce().then(() => {
        if (running) schedule();
      });
    },
    stop() {
      running = false;
      if (timer !== null) clearTimeout(timer);
      timer = null;
    },
    refresh: runOnce,
  };
}
