/** Typed client for the editor session wire protocol. */

export type ConditionName = "full" | "half";
export type ActionLetter = "D" | "U" | "L" | "R";
export type PaletteObjectName = "sky" | "ground" | "spike" | "fruit" | "exit";
export type SolvableStatus = "Solved" | "Unsolvable" | "Budget";

export interface PlayState {
  bird: [number, number][];
  fruit_remaining: [number, number][];
  status: "playing" | "dead" | "won";
}

export interface SweepState {
  cursor: number;
  total: number;
  generation: number;
  done: boolean;
}

export interface SessionSnapshot {
  id: string;
  condition: ConditionName;
  level: string;
  width: number;
  height: number;
  selected: PaletteObjectName;
  play: PlayState;
  solvable: SolvableStatus;
  length: number | null;
  sweep: SweepState | null;
  edit?: { outcome: string; reason: string | null };
  outcome?: string;
  actions?: ActionLetter[];
}

/** One sweep cell; exactly one status tag is present. */
export interface GradientWireCell {
  col: number;
  row: number;
  u?: boolean; // unchanged
  d?: number; // signed change in optimal solution length
  x?: boolean; // edit makes the level unsolvable
  b?: boolean; // solver budget exhausted on the edited level
  n?: boolean; // not editable (snake cells, the unique exit)
  s?: number; // edit makes an unsolvable level solvable in this many moves
}

export interface GradientPoll {
  cells: GradientWireCell[];
  cursor: number;
  total: number;
  generation: number;
  done: boolean;
  restarted: boolean;
}

export interface FetchResponse {
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly baseUrl: string = "",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: { method: string; headers?: Record<string, string>; body?: string } = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = (await response.json()) as Record<string, unknown>;
    if (response.status !== 200) {
      throw new ApiError(response.status, String(payload["detail"] ?? response.status));
    }
    return payload as unknown as T;
  }

  createSession(level: string, condition: ConditionName): Promise<SessionSnapshot> {
    return this.request("POST", "/session", { level, condition });
  }

  getSession(id: string): Promise<SessionSnapshot> {
    return this.request("GET", `/session/${id}`);
  }

  edit(id: string, col: number, row: number, selected: PaletteObjectName): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/edit`, { col, row, selected });
  }

  action(id: string, action: ActionLetter): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/action`, { action });
  }

  undo(id: string): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/undo`);
  }

  reset(id: string): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/reset`);
  }

  solve(id: string): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/solve`);
  }

  select(id: string, object: PaletteObjectName): Promise<SessionSnapshot> {
    return this.request("POST", `/session/${id}/select`, { object });
  }

  pollGradient(id: string, max: number): Promise<GradientPoll> {
    return this.request("GET", `/session/${id}/gradient?max=${max}`);
  }
}
