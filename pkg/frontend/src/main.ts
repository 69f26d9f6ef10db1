import { ApiClient, ApiError } from "./api.js";
import { apiBaseUrl, quizId } from "./config.js";
import {
  QuizViewState,
  allAnswered,
  answerCurrent,
  answeredCount,
  chanceLine,
  createQuizState,
  currentItem,
  goTo,
  markScored,
  markSubmitFailed,
  markSubmitted,
  visibleScore,
} from "./quizState.js";
import {
  TriageViewState,
  beginClassify,
  canSubmit,
  classifyFailed,
  classifySucceeded,
  createTriageState,
  setText,
  verdictSummary,
} from "./triageState.js";

const api = new ApiClient(apiBaseUrl());
const app = document.getElementById("app")!;

let quizState: QuizViewState | null = null;
let triageState: TriageViewState = createTriageState();
let activeTab: "quiz" | "triage" = "quiz";
let quizLoadError: string | null = null;
let respondentId =
  localStorage.getItem("ficdetect-respondent") ??
  `judge-${Math.random().toString(36).slice(2, 8)}`;
localStorage.setItem("ficdetect-respondent", respondentId);

function el(tag: string, attrs: Record<string, string> = {}, text = ""): HTMLElement {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

async function loadQuiz(): Promise<void> {
  try {
    const payload = await api.getQuiz(quizId());
    quizState = createQuizState(payload, localStorage);
    quizLoadError = null;
  } catch (err) {
    quizLoadError = err instanceof Error ? err.message : String(err);
  }
  render();
}

async function submitQuiz(): Promise<void> {
  if (!quizState) return;
  try {
    quizState = markSubmitted(quizState);
    render();
    const result = await api.submitAnswers(
      quizState.quiz.quiz_id,
      respondentId,
      quizState.answers,
    );
    quizState = markScored(quizState, result, localStorage);
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      quizState = markSubmitFailed(quizState!, "already submitted");
    } else {
      quizState = markSubmitFailed(
        quizState!,
        err instanceof Error ? err.message : String(err),
      );
    }
  }
  render();
}

function renderQuiz(container: HTMLElement): void {
  if (quizLoadError !== null) {
    container.append(el("p", { class: "error" }, `quiz unavailable: ${quizLoadError}`));
    const retry = el("button", {}, "Retry");
    retry.onclick = () => void loadQuiz();
    container.append(retry);
    return;
  }
  if (!quizState) {
    container.append(el("p", {}, "Loading quiz..."));
    return;
  }
  const state = quizState;

  if (state.phase === "scored" && state.result) {
    container.append(el("h2", {}, `Your score: ${visibleScore(state)}`));
    container.append(
      el("p", {}, `Chance performance would be ${chanceLine(state)}.`),
    );
    const list = el("ol", { class: "reveal" });
    for (const item of state.quiz.items) {
      const right = state.result.correct[item.item_id];
      const line = el("li", { class: right ? "right" : "wrong" });
      line.append(
        el("span", {}, `${right ? "✓" : "✗"} you said "${state.answers[item.item_id]}": `),
        el("em", {}, item.text.slice(0, 120) + "…"),
      );
      list.append(line);
    }
    container.append(list);
    return;
  }

  if (state.phase === "submitted") {
    container.append(el("p", {}, "Submitting…"));
    return;
  }

  const item = currentItem(state);
  if (!item) return;
  container.append(
    el("p", { class: "progress" },
       `Excerpt ${state.currentIndex + 1} of ${state.quiz.items.length} ` +
       `(${answeredCount(state)} answered)`),
  );
  container.append(el("blockquote", { class: "excerpt" }, item.text));

  const picked = state.answers[item.item_id];
  for (const label of ["human", "ai"] as const) {
    const btn = el(
      "button",
      { class: picked === label ? "choice picked" : "choice" },
      label === "human" ? "Human-written" : "AI-generated",
    );
    btn.onclick = () => {
      quizState = answerCurrent(state, label, localStorage);
      render();
    };
    container.append(btn);
  }

  const nav = el("div", { class: "nav" });
  const back = el("button", {}, "← Back");
  back.onclick = () => {
    quizState = goTo(state, state.currentIndex - 1);
    render();
  };
  (back as HTMLButtonElement).disabled = state.currentIndex === 0;
  nav.append(back);

  if (allAnswered(state)) {
    const submit = el("button", { class: "submit" }, "Submit answers");
    submit.onclick = () => void submitQuiz();
    nav.append(submit);
  }
  container.append(nav);
  if (state.lastError) {
    container.append(el("p", { class: "error" },
                        `Submission failed (${state.lastError}); your answers are kept.`));
  }
}

function renderTriage(container: HTMLElement): void {
  const area = el("textarea", {
    rows: "8",
    placeholder: "Paste a text excerpt (roughly 100 words) to check…",
  }) as HTMLTextAreaElement;
  area.value = triageState.text;
  area.oninput = () => {
    triageState = setText(triageState, area.value);
    renderTriageControls();
  };
  container.append(area);
  const controls = el("div", { class: "controls" });
  container.append(controls);

  function renderTriageControls(): void {
    controls.replaceChildren();
    const btn = el("button", { class: "submit" },
                   triageState.inFlight ? "Checking…" : "Classify");
    (btn as HTMLButtonElement).disabled = !canSubmit(triageState);
    btn.onclick = () => void classifyNow();
    controls.append(btn);

    const summary = verdictSummary(triageState);
    if (summary && triageState.verdict) {
      const card = el("div", {
        class: `verdict ${triageState.verdict.label}`,
      });
      card.append(el("strong", {}, summary));
      card.append(el("p", {},
                     `model: ${triageState.verdict.model_id} ` +
                     `(${triageState.verdict.model_kind}), ` +
                     `${triageState.verdict.excerpt_char_len} characters`));
      if (triageState.verdict.warning) {
        card.append(el("p", { class: "warning" }, triageState.verdict.warning));
      }
      controls.append(card);
    }
    if (triageState.error) {
      controls.append(el("p", { class: "error" }, triageState.error));
    }
  }

  async function classifyNow(): Promise<void> {
    triageState = beginClassify(triageState);
    renderTriageControls();
    try {
      const verdict = await api.classify(triageState.text);
      triageState = classifySucceeded(triageState, verdict);
    } catch (err) {
      triageState = classifyFailed(
        triageState,
        err instanceof Error ? err.message : String(err),
      );
    }
    renderTriageControls();
  }

  renderTriageControls();
}

function render(): void {
  app.replaceChildren();
  const tabs = el("nav", { class: "tabs" });
  for (const tab of ["quiz", "triage"] as const) {
    const btn = el("button",
                   { class: activeTab === tab ? "tab active" : "tab" },
                   tab === "quiz" ? "Human or AI? Quiz" : "Check an excerpt");
    btn.onclick = () => {
      activeTab = tab;
      render();
    };
    tabs.append(btn);
  }
  app.append(tabs);
  const panel = el("section", { class: "panel" });
  app.append(panel);
  if (activeTab === "quiz") renderQuiz(panel);
  else renderTriage(panel);
}

render();
void loadQuiz();
