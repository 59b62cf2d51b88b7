export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  /** run immediately if a call is pending */
  flush(): void;
}

/** Trailing-edge debounce; the last call within the window wins. */
export function debounce<A extends unknown[]>(
  waitMs: number,
  fn: (...args: A) => void,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | undefined;
  let lastArgs: A | undefined;

  const invoke = () => {
    timer = undefined;
    if (lastArgs !== undefined) {
      const args = lastArgs;
      lastArgs = undefined;
      fn(...args);
    }
  };

  const debounced = (...args: A) => {
    lastArgs = args;
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(invoke, waitMs);
  };
  debounced.cancel = () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = undefined;
    lastArgs = undefined;
  };
  debounced.flush = () => {
    if (timer !== undefined) {
      clearTimeout(timer);
      invoke();
    }
  };
  return debounced;
}
