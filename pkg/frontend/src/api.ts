// Typed client for the classification + quiz HTTP API.  The server is
// the only party that ever sees true labels; the payload types here
// deliberately have no label field.

export type Label = "human" | "ai";

export interface QuizItem {
  item_id: string;
  text: string;
}

export interface QuizPayload {
  quiz_id: string;
  items: QuizItem[];
}

export interface SubmitResult {
  quiz_id: string;
  respondent_id: string;
  score: number;
  quiz_size: number;
  correct: Record<string, boolean>;
}

export interface ScoreResult {
  quiz_id: string;
  respondent_id: string;
  score: number;
  quiz_size: number;
}

export interface ClassifyResponse {
  label: Label;
  score_ai: number;
  model_id: string;
  model_kind: string;
  excerpt_char_len: number;
  warning?: string;
}

export interface Health {
  status: string;
  model_id: string | null;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, init);
    const body = await res.json().catch(() => ({}));
    if (!res.ok) {
      throw new ApiError(res.status, body.error ?? "unknown", body.detail ?? "");
    }
    return body as T;
  }

  health(): Promise<Health> {
    return this.request<Health>("/health");
  }

  getQuiz(quizId: string): Promise<QuizPayload> {
    return this.request<QuizPayload>(`/quiz/${encodeURIComponent(quizId)}`);
  }

  submitAnswers(
    quizId: string,
    respondentId: string,
    answers: Record<string, Label>,
  ): Promise<SubmitResult> {
    return this.request<SubmitResult>(
      `/quiz/${encodeURIComponent(quizId)}/answers`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ respondent_id: respondentId, answers }),
      },
    );
  }

  getScore(quizId: string, respondentId: string): Promise<ScoreResult> {
    return this.request<ScoreResult>(
      `/quiz/${encodeURIComponent(quizId)}/score/${encodeURIComponent(respondentId)}`,
    );
  }

  classify(text: string): Promise<ClassifyResponse> {
    return this.request<ClassifyResponse>("/classify", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }
}
