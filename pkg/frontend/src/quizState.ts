// Quiz session state machine.  Items are shown one at a time; the
// transitions answering -> submitted -> scored are one-way, answers are
// frozen at submission, and the score only ever comes from the server
// (this module never sees a true label).

import type { Label, QuizPayload, SubmitResult } from "./api.js";

export type Phase = "answering" | "submitted" | "scored";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface QuizViewState {
  quiz: QuizPayload;
  currentIndex: number;
  answers: Record<string, Label>;
  phase: Phase;
  result: SubmitResult | null;
  lastError: string | null;
}

const storageKey = (quizId: string) => `ficdetect-quiz-${quizId}`;

export function createQuizState(
  quiz: QuizPayload,
  storage?: StorageLike,
): QuizViewState {
  const state: QuizViewState = {
    quiz,
    currentIndex: 0,
    answers: {},
    phase: "answering",
    result: null,
    lastError: null,
  };
  if (storage) {
    const saved = storage.getItem(storageKey(quiz.quiz_id));
    if (saved) {
      try {
        const parsed = JSON.parse(saved) as Record<string, Label>;
        const valid = Object.fromEntries(
          Object.entries(parsed).filter(
            ([id, v]) =>
              quiz.items.some((it) => it.item_id === id) &&
              (v === "human" || v === "ai"),
          ),
        );
        state.answers = valid as Record<string, Label>;
        state.currentIndex = firstUnanswered(state);
      } catch {
        storage.removeItem(storageKey(quiz.quiz_id));
      }
    }
  }
  return state;
}

function firstUnanswered(state: QuizViewState): number {
  const idx = state.quiz.items.findIndex(
    (it) => !(it.item_id in state.answers),
  );
  return idx === -1 ? state.quiz.items.length - 1 : idx;
}

export function currentItem(state: QuizViewState) {
  return state.quiz.items[state.currentIndex];
}

export function answeredCount(state: QuizViewState): number {
  return Object.keys(state.answers).length;
}

export function allAnswered(state: QuizViewState): boolean {
  return answeredCount(state) === state.quiz.items.length;
}

export function chanceLine(state: QuizViewState): string {
  const n = state.quiz.items.length;
  return `${n} × 50% = ${n / 2}`;
}

/** Record the answer for the current item and advance. */
export function answerCurrent(
  state: QuizViewState,
  label: Label,
  storage?: StorageLike,
): QuizViewState {
  if (state.phase !== "answering") {
    throw new Error("answers are immutable after submission");
  }
  const item = currentItem(state);
  if (!item) return state;
  const answers = { ...state.answers, [item.item_id]: label };
  const next = Math.min(state.currentIndex + 1, state.quiz.items.length - 1);
  const updated: QuizViewState = {
    ...state,
    answers,
    currentIndex: next,
  };
  storage?.setItem(storageKey(state.quiz.quiz_id), JSON.stringify(answers));
  return updated;
}

export function goTo(state: QuizViewState, index: number): QuizViewState {
  if (state.phase !== "answering") return state;
  const clamped = Math.max(0, Math.min(index, state.quiz.items.length - 1));
  return { ...state, currentIndex: clamped };
}

/** Freeze the answers; the caller then performs the network submission. */
export function markSubmitted(state: QuizViewState): QuizViewState {
  if (state.phase !== "answering") {
    throw new Error(`cannot submit from phase ${state.phase}`);
  }
  if (!allAnswered(state)) {
    throw new Error("every item needs an answer before submitting");
  }
  return { ...state, phase: "submitted", lastError: null };
}

/** Attach the server's result; the only path to a visible score. */
export function markScored(
  state: QuizViewState,
  result: SubmitResult,
  storage?: StorageLike,
): QuizViewState {
  if (state.phase !== "submitted") {
    throw new Error(`cannot record a score from phase ${state.phase}`);
  }
  storage?.removeItem(storageKey(state.quiz.quiz_id));
  return { ...state, phase: "scored", result };
}

/** Network failure during submission: keep the answers, allow a retry. */
export function markSubmitFailed(
  state: QuizViewState,
  error: string,
): QuizViewState {
  if (state.phase !== "submitted") return state;
  return { ...state, phase: "answering", lastError: error };
}

export function visibleScore(state: QuizViewState): string | null {
  if (state.phase !== "scored" || state.result === null) return null;
  return `${state.result.score}/${state.result.quiz_size}`;
}
