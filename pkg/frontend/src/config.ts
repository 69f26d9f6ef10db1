// Single point of configuration: the service base URL.  Override by
// setting window.FICDETECT_API before the bundle loads, or with a
// ?api= query parameter.

declare global {
  interface Window {
    FICDETECT_API?: string;
  }
}

export const DEFAULT_API = "http://127.0.0.1:8765";

export function apiBaseUrl(): string {
  if (typeof window === "undefined") return DEFAULT_API;
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? window.FICDETECT_API ?? DEFAULT_API;
}

export const DEFAULT_QUIZ_ID = "demo-quiz";

export function quizId(): string {
  if (typeof window === "undefined") return DEFAULT_QUIZ_ID;
  return (
    new URLSearchParams(window.location.search).get("quiz") ?? DEFAULT_QUIZ_ID
  );
}
