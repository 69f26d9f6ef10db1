// Paste-an-excerpt triage flow: at most one in-flight request, and the
// verdict shown always belongs to the exact text that was submitted.

import type { ClassifyResponse } from "./api.js";

export interface TriageViewState {
  text: string;
  inFlight: boolean;
  submittedText: string | null;
  verdict: ClassifyResponse | null;
  error: string | null;
}

export function createTriageState(): TriageViewState {
  return { text: "", inFlight: false, submittedText: null, verdict: null, error: null };
}

export function setText(state: TriageViewState, text: string): TriageViewState {
  // editing the text invalidates a verdict that no longer matches it
  const keep = state.submittedText !== null && text === state.submittedText;
  return {
    ...state,
    text,
    verdict: keep ? state.verdict : null,
    error: keep ? state.error : null,
  };
}

export function canSubmit(state: TriageViewState): boolean {
  return state.text.trim().length > 0 && !state.inFlight;
}

export function beginClassify(state: TriageViewState): TriageViewState {
  if (!canSubmit(state)) throw new Error("nothing to classify");
  return { ...state, inFlight: true, error: null };
}

export function classifySucceeded(
  state: TriageViewState,
  verdict: ClassifyResponse,
): TriageViewState {
  return {
    ...state,
    inFlight: false,
    submittedText: state.text,
    verdict,
    error: null,
  };
}

export function classifyFailed(
  state: TriageViewState,
  error: string,
): TriageViewState {
  return { ...state, inFlight: false, verdict: null, error };
}

export function verdictSummary(state: TriageViewState): string | null {
  if (!state.verdict || state.text !== state.submittedText) return null;
  const pct = Math.round(state.verdict.score_ai * 100);
  return `${state.verdict.label} (${pct}% likely AI)`;
}
