// Typed client for the conversation session API.

export type ExplanationDoc = {
  claim: string;
  premises: ExplanationDoc[];
};

export type BitsDoc = {
  value: 0 | 1;
  premises: BitsDoc[];
};

export type HistoryEntry = {
  explanation: ExplanationDoc;
  feedback: BitsDoc;
};

export type SessionState = {
  id: string;
  world: string;
  claim: string;
  round: number;
  status: string | null;
  pending: ExplanationDoc | null;
  final_term: string | null;
  history: HistoryEntry[];
};

export type ApiNodeError = {
  message: string;
  node_path?: number[];
};

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string | ApiNodeError,
  ) {
    super(typeof detail === 'string' ? detail : detail.message);
  }

  get isStaleRound(): boolean {
    return this.status === 409;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  const body = await res.json();
  if (!res.ok) {
    throw new ApiError(res.status, body.detail ?? res.statusText);
  }
  return body as T;
}

export class SessionClient {
  constructor(private readonly baseUrl: string) {}

  createSession(opts: {
    model?: unknown;
    world: string;
    claim: string;
    maxRounds?: number;
  }): Promise<SessionState> {
    return request<SessionState>(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({
        model: opts.model,
        world: opts.world,
        claim: opts.claim,
        max_rounds: opts.maxRounds,
      }),
    });
  }

  getState(id: string): Promise<SessionState> {
    return request<SessionState>(`${this.baseUrl}/sessions/${id}`);
  }

  postFeedback(id: string, round: number, bits: BitsDoc): Promise<SessionState> {
    return request<SessionState>(`${this.baseUrl}/sessions/${id}/feedback`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ round, bits }),
    });
  }

  /** Raw transcript text; byte-stable canonical form for digest comparison. */
  async getTranscript(id: string): Promise<string> {
    const res = await fetch(`${this.baseUrl}/sessions/${id}/transcript`);
    if (!res.ok) {
      throw new ApiError(res.status, await res.text());
    }
    return res.text();
  }
}
