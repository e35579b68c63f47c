import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { RateLimiter } from "../src/debounce";

describe("rate limiter", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("passes a quiet call through immediately", () => {
    const limiter = new RateLimiter(50, () => Date.now());
    let calls = 0;
    limiter.schedule(() => calls++);
    expect(calls).toBe(1);
  });

  it("collapses a burst to a trailing call with the latest payload", () => {
    const limiter = new RateLimiter(50, () => Date.now());
    const seen: number[] = [];
    for (let i = 0; i < 10; i++) {
      limiter.schedule(() => seen.push(i));
    }
    expect(seen).toEqual([0]); // leading call only
    vi.advanceTimersByTime(60);
    expect(seen).toEqual([0, 9]); // trailing call carries the latest
  });

  it("keeps the rate at or below one call per interval", () => {
    const limiter = new RateLimiter(50, () => Date.now());
    let calls = 0;
    const tick = () => limiter.schedule(() => calls++);
    for (let t = 0; t < 1000; t += 5) {
      tick();
      vi.advanceTimersByTime(5);
    }
    vi.advanceTimersByTime(60);
    expect(calls).toBeLessThanOrEqual(21); // ~20 per second plus the trailing one
    expect(calls).toBeGreaterThanOrEqual(19);
  });

  it("cancel drops the pending trailing call", () => {
    const limiter = new RateLimiter(50, () => Date.now());
    let calls = 0;
    limiter.schedule(() => calls++);
    limiter.schedule(() => calls++);
    limiter.cancel();
    vi.advanceTimersByTime(100);
    expect(calls).toBe(1);
  });
});
