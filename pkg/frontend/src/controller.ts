/**
 * View-agnostic editor logic. Every displayed state is a server response:
 * the controller holds no game rules, it only forwards commands and renders
 * what comes back. The host calls `tick()` once per animation frame; a tick
 * either advances the solve animation by one action or polls at most one
 * gradient cell, so the overlay paints one cell per frame.
 */

import { badgeFor, type OverlayBadge } from "./overlay.js";
import type {
  ActionLetter,
  ApiClient,
  ConditionName,
  PaletteObjectName,
  SessionSnapshot,
} from "./protocol.js";
import { ApiError } from "./protocol.js";

export interface EditorView {
  renderSession(snapshot: SessionSnapshot): void;
  setReadout(text: string): void;
  paintBadge(badge: OverlayBadge): void;
  clearOverlay(): void;
  setSelected(object: PaletteObjectName): void;
  showError(message: string): void;
}

export function readoutText(snapshot: SessionSnapshot): string {
  if (snapshot.solvable === "Solved") {
    return `Level is solvable in ${snapshot.length} moves`;
  }
  if (snapshot.solvable === "Budget") {
    return "Solver limit reached";
  }
  return "Level is unsolvable";
}

const ARROW_KEYS: Record<string, ActionLetter> = {
  ArrowDown: "D",
  ArrowUp: "U",
  ArrowLeft: "L",
  ArrowRight: "R",
};

export class EditorController {
  private snapshot: SessionSnapshot | null = null;
  private selected: PaletteObjectName = "ground";
  private animationQueue: ActionLetter[] = [];
  private pollInFlight = false;
  private paused = false;

  constructor(
    private readonly api: ApiClient,
    private readonly view: EditorView,
  ) {}

  get session(): SessionSnapshot {
    if (!this.snapshot) {
      throw new Error("controller not initialized");
    }
    return this.snapshot;
  }

  get animating(): boolean {
    return this.animationQueue.length > 0;
  }

  private get overlayEnabled(): boolean {
    return this.snapshot?.condition === "full";
  }

  async init(level: string, condition: ConditionName): Promise<void> {
    this.applySnapshot(await this.api.createSession(level, condition));
    this.selected = this.session.selected;
    this.view.setSelected(this.selected);
  }

  private applySnapshot(snapshot: SessionSnapshot): void {
    this.snapshot = snapshot;
    this.view.renderSession(snapshot);
    this.view.setReadout(readoutText(snapshot));
  }

  /** One animation frame: one solve-animation step or one overlay cell. */
  async tick(): Promise<void> {
    if (!this.snapshot || this.paused) {
      return;
    }
    if (this.animationQueue.length > 0) {
      const letter = this.animationQueue.shift() as ActionLetter;
      await this.guarded(async () => {
        this.applySnapshot(await this.api.action(this.session.id, letter));
      });
      return;
    }
    await this.guarded(() => this.pollGradientOnce());
  }

  async handleKey(key: string): Promise<void> {
    if (!this.snapshot || this.animating || this.paused) {
      return;
    }
    const letter = ARROW_KEYS[key];
    await this.guarded(async () => {
      if (letter) {
        this.applySnapshot(await this.api.action(this.session.id, letter));
      } else if (key === "q") {
        this.applySnapshot(await this.api.undo(this.session.id));
      } else if (key === "n") {
        await this.solve();
      } else if (key === "r") {
        this.applySnapshot(await this.api.reset(this.session.id));
      }
    });
  }

  /** Solve, then replay the returned actions through the server from the
   * initial state, one action per subsequent tick. */
  private async solve(): Promise<void> {
    const response = await this.api.solve(this.session.id);
    this.applySnapshot(response);
    if (response.actions && response.actions.length > 0) {
      this.animationQueue = [...response.actions];
      this.applySnapshot(await this.api.reset(this.session.id));
    }
  }

  async handleCellClick(col: number, row: number): Promise<void> {
    if (!this.snapshot || this.animating || this.paused) {
      return;
    }
    await this.guarded(async () => {
      const response = await this.api.edit(this.session.id, col, row, this.selected);
      if (response.edit?.outcome === "applied") {
        this.view.clearOverlay(); // server restarted the sweep
      }
      this.applySnapshot(response);
    });
  }

  async handlePaletteClick(object: PaletteObjectName): Promise<void> {
    if (!this.snapshot || this.animating || this.paused) {
      return;
    }
    this.selected = object;
    this.view.setSelected(object);
    await this.guarded(async () => {
      this.view.clearOverlay();
      this.applySnapshot(await this.api.select(this.session.id, object));
    });
  }

  private async pollGradientOnce(): Promise<void> {
    if (!this.overlayEnabled || this.pollInFlight) {
      return;
    }
    const sweep = this.session.sweep;
    if (!sweep || sweep.done) {
      return;
    }
    this.pollInFlight = true;
    try {
      const poll = await this.api.pollGradient(this.session.id, 1);
      if (poll.restarted) {
        this.view.clearOverlay();
      }
      for (const cell of poll.cells) {
        const badge = badgeFor(cell);
        if (badge) {
          this.view.paintBadge(badge);
        }
      }
      if (this.snapshot) {
        this.snapshot = {
          ...this.snapshot,
          sweep: {
            cursor: poll.cursor,
            total: poll.total,
            generation: poll.generation,
            done: poll.done,
          },
        };
      }
    } finally {
      this.pollInFlight = false;
    }
  }

  private async guarded(run: () => Promise<void>): Promise<void> {
    try {
      await run();
    } catch (error) {
      if (error instanceof ApiError) {
        this.view.showError(error.message); // non-blocking toast
        return;
      }
      // Network failure: pause input rather than hammer a dead server.
      this.paused = true;
      this.view.showError("connection lost; input paused");
    }
  }
}
