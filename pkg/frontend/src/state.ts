// UI state container. Holds exactly what the server said, nothing derived:
// the report object is stored as received, and labels freeze if the network
// goes away. Parameter changes rebuild the session by replaying the palette.

import { ApiClient, HarmonyParams, Report, Suggestion } from "./api.js";

export interface UiState {
  sessionId: string | null;
  tokens: (string | number[])[]; // what the user entered, in order
  report: Report | null;
  suggestions: Suggestion[];
  params: HarmonyParams;
  suggestionCount: number;
  error: string | null;
  busy: boolean;
}

export const DEFAULT_PARAMS: HarmonyParams = {
  k_h: 3,
  k_N: 120,
  gamma: 5,
  k_c: 2,
  k_L: 2,
  t_line: 5,
};

type Listener = (state: UiState) => void;

export class PaletteSession {
  private state: UiState = {
    sessionId: null,
    tokens: [],
    report: null,
    suggestions: [],
    params: { ...DEFAULT_PARAMS },
    suggestionCount: 5,
    error: null,
    busy: false,
  };
  private listeners: Listener[] = [];

  constructor(private api: ApiClient) {}

  get current(): UiState {
    return this.state;
  }

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  async init(): Promise<void> {
    const sessionId = await this.api.createSession(this.state.params);
    this.emit({ sessionId, tokens: [], report: null, suggestions: [] });
  }

  /** Add one color; on API failure the report and palette stay unchanged. */
  async addColor(token: string | number[]): Promise<void> {
    if (!this.state.sessionId) throw new Error("session not initialized");
    this.emit({ busy: true });
    try {
      const report = await this.api.addColor(this.state.sessionId, token);
      this.emit({
        report,
        tokens: [...this.state.tokens, token],
        error: null,
        busy: false,
      });
      await this.refreshSuggestions();
    } catch (err) {
      this.emit({ error: describe(err), busy: false });
    }
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId || this.state.tokens.length === 0) return;
    this.emit({ busy: true });
    try {
      const report = await this.api.undo(this.state.sessionId);
      this.emit({
        report,
        tokens: this.state.tokens.slice(0, -1),
        error: null,
        busy: false,
      });
      await this.refreshSuggestions();
    } catch (err) {
      this.emit({ error: describe(err), busy: false });
    }
  }

  async refreshSuggestions(): Promise<void> {
    if (!this.state.sessionId || this.state.tokens.length === 0) {
      this.emit({ suggestions: [] });
      return;
    }
    try {
      const suggestions = await this.api.suggestions(
        this.state.sessionId,
        this.state.suggestionCount,
      );
      this.emit({ suggestions });
    } catch (err) {
      this.emit({ suggestions: [], error: describe(err) });
    }
  }

  async setSuggestionCount(n: number): Promise<void> {
    this.emit({ suggestionCount: n });
    await this.refreshSuggestions();
  }

  /** Change model parameters: new server session, replay the palette. */
  async setParams(params: HarmonyParams): Promise<void> {
    this.emit({ busy: true });
    try {
      const sessionId = await this.api.createSession(params);
      let report: Report | null = null;
      for (const token of this.state.tokens) {
        report = await this.api.addColor(sessionId, token);
      }
      this.emit({ sessionId, params, report, error: null, busy: false });
      await this.refreshSuggestions();
    } catch (err) {
      this.emit({ error: describe(err), busy: false });
    }
  }

  dismissError(): void {
    this.emit({ error: null });
  }
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
