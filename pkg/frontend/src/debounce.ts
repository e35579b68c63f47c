// Trailing-edge rate limiter for drag recomputation: calls pass through
// immediately when quiet, and a burst collapses to one trailing call per
// interval (~20 requests/second at the default 50 ms).

export class RateLimiter {
  private last = -Infinity;
  private pending: (() => void) | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly minIntervalMs = 50,
    private readonly now: () => number = () => Date.now(),
  ) {}

  schedule(fn: () => void): void {
    const t = this.now();
    if (t - this.last >= this.minIntervalMs && this.timer === null) {
      this.last = t;
      fn();
      return;
    }
    this.pending = fn;
    if (this.timer === null) {
      const wait = Math.max(0, this.minIntervalMs - (t - this.last));
      this.timer = setTimeout(() => {
        this.timer = null;
        const run = this.pending;
        this.pending = null;
        if (run) {
          this.last = this.now();
          run();
        }
      }, wait);
    }
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
