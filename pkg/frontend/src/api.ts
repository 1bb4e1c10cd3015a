// Typed client for the play session API. All game facts -- legal moves,
// formula updates, winners -- come from here; the UI never derives them.

export type Role = "T" | "B";

export interface RunEntry {
  by: Role;
  move: string;
}

export interface MoveOption {
  move: string;
  spec: string;
  component: number;
  result: string;
}

export interface SessionState {
  formula: string;
  formula_now: string;
  run: RunEntry[];
  human_role: Role;
  legal_human_moves: MoveOption[];
  finished: boolean;
  strategy: boolean;
  winner: Role | null;
  needs_valuation: boolean;
  atoms?: string[];
  note?: string;
}

export interface CreatedSession {
  id: string;
  state: SessionState;
}

export interface Valuation {
  [atom: string]: boolean;
}

export class ApiError extends Error {
  status: number;
  payload: Record<string, unknown>;

  constructor(status: number, payload: Record<string, unknown>) {
    super(typeof payload.error === "string" ? payload.error : `HTTP ${status}`);
    this.status = status;
    this.payload = payload;
  }

  /** Legal move list included with illegal-move rejections. */
  get legal(): string[] {
    return Array.isArray(this.payload.legal) ? (this.payload.legal as string[]) : [];
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class PlayApi {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const resp = await this.fetchFn(this.base + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, payload);
    }
    return payload as T;
  }

  createSession(
    formula: string,
    humanRole: Role,
    options?: { strategy?: boolean; itp?: Record<string, unknown> },
  ): Promise<CreatedSession> {
    return this.request("POST", "/session", {
      formula,
      human_role: humanRole,
      ...options,
    });
  }

  getState(id: string): Promise<SessionState> {
    return this.request("GET", `/session/${id}`);
  }

  move(id: string, move: string): Promise<SessionState> {
    return this.request("POST", `/session/${id}/move`, { move });
  }

  setValuation(id: string, valuation: Valuation): Promise<SessionState> {
    return this.request("POST", `/session/${id}/valuation`, valuation);
  }

  remove(id: string): Promise<void> {
    return this.request("DELETE", `/session/${id}`);
  }
}
