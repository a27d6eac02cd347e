/** DOM rendering: level grid on the left, palette and controls on the right,
 * solvability readout bottom-right, overlay badges over the grid. */

import type { EditorView } from "./controller.js";
import { outlineCss, type OverlayBadge } from "./overlay.js";
import type { PaletteObjectName, SessionSnapshot } from "./protocol.js";

const TILE_SIZE = 36;

const TILE_COLORS: Record<string, string> = {
  ".": "#bfe3ff", // sky
  "#": "#8a5a2b", // ground
  "^": "#7d7d7d", // spike
  F: "#a14fd1", // fruit
  E: "#e3b341", // exit
};

const TILE_GLYPHS: Record<string, string> = { "^": "▲", F: "●", E: "◎" };

export class DomView implements EditorView {
  private readonly grid: HTMLDivElement;
  private readonly overlay: HTMLDivElement;
  private readonly readout: HTMLDivElement;
  private readonly toast: HTMLDivElement;
  private paletteButtons = new Map<PaletteObjectName, HTMLButtonElement>();

  constructor(
    root: HTMLElement,
    private readonly handlers: {
      onCellClick(col: number, row: number): void;
      onPaletteClick(object: PaletteObjectName): void;
      onControl(key: string): void;
    },
  ) {
    root.innerHTML = "";
    const board = document.createElement("div");
    board.className = "board";
    this.grid = document.createElement("div");
    this.grid.className = "grid";
    this.overlay = document.createElement("div");
    this.overlay.className = "grid-overlay";
    board.append(this.grid, this.overlay);

    const side = document.createElement("div");
    side.className = "side";
    side.append(this.buildPalette(), this.buildControls());
    this.readout = document.createElement("div");
    this.readout.className = "readout";
    side.append(this.readout);

    this.toast = document.createElement("div");
    this.toast.className = "toast";

    root.append(board, side, this.toast);

    this.grid.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.dataset.col !== undefined && target.dataset.row !== undefined) {
        handlers.onCellClick(Number(target.dataset.col), Number(target.dataset.row));
      }
    });
  }

  private buildPalette(): HTMLElement {
    const palette = document.createElement("div");
    palette.className = "palette";
    const objects: PaletteObjectName[] = ["sky", "ground", "spike", "fruit", "exit"];
    for (const object of objects) {
      const button = document.createElement("button");
      button.textContent = object;
      button.addEventListener("click", () => this.handlers.onPaletteClick(object));
      this.paletteButtons.set(object, button);
      palette.append(button);
    }
    return palette;
  }

  private buildControls(): HTMLElement {
    const controls = document.createElement("div");
    controls.className = "controls";
    const buttons: [string, string][] = [
      ["◀", "ArrowLeft"],
      ["▼", "ArrowDown"],
      ["▲", "ArrowUp"],
      ["▶", "ArrowRight"],
      ["Undo (q)", "q"],
      ["Solve (n)", "n"],
      ["Reset (r)", "r"],
    ];
    for (const [label, key] of buttons) {
      const button = document.createElement("button");
      button.textContent = label;
      button.addEventListener("click", () => this.handlers.onControl(key));
      controls.append(button);
    }
    return controls;
  }

  renderSession(snapshot: SessionSnapshot): void {
    const rows = snapshot.level.replace(/\n$/, "").split("\n");
    this.grid.style.gridTemplateColumns = `repeat(${snapshot.width}, ${TILE_SIZE}px)`;
    this.grid.innerHTML = "";
    const birdCells = new Map(snapshot.play.bird.map(([c, r], i) => [`${c},${r}`, i]));
    const fruitLeft = new Set(snapshot.play.fruit_remaining.map(([c, r]) => `${c},${r}`));
    for (let row = 0; row < snapshot.height; row += 1) {
      for (let col = 0; col < snapshot.width; col += 1) {
        const ch = rows[row]?.[col] ?? ".";
        const tile = /[A-Z]/.test(ch) && !"EF".includes(ch) ? "." : ch;
        const cell = document.createElement("div");
        cell.className = "cell";
        cell.dataset.col = String(col);
        cell.dataset.row = String(row);
        const key = `${col},${row}`;
        if (birdCells.has(key)) {
          cell.style.background = birdCells.get(key) === 0 ? "#c0202a" : "#e2666e";
          cell.textContent = birdCells.get(key) === 0 ? "◉" : "";
        } else if (tile === "F" && !fruitLeft.has(key)) {
          cell.style.background = TILE_COLORS["."] ?? "";
        } else {
          cell.style.background = TILE_COLORS[tile] ?? TILE_COLORS["."] ?? "";
          cell.textContent = TILE_GLYPHS[tile] ?? "";
        }
        this.grid.append(cell);
      }
    }
    this.overlay.style.width = `${snapshot.width * TILE_SIZE}px`;
    this.overlay.style.height = `${snapshot.height * TILE_SIZE}px`;
  }

  setReadout(text: string): void {
    this.readout.textContent = text;
  }

  paintBadge(badge: OverlayBadge): void {
    const el = document.createElement("div");
    el.className = "badge";
    el.textContent = badge.text;
    el.style.left = `${badge.col * TILE_SIZE}px`;
    el.style.top = `${badge.row * TILE_SIZE}px`;
    el.style.outline = `3px solid ${outlineCss(badge.outline)}`;
    this.overlay.append(el);
  }

  clearOverlay(): void {
    this.overlay.innerHTML = "";
  }

  setSelected(object: PaletteObjectName): void {
    for (const [name, button] of this.paletteButtons) {
      button.classList.toggle("selected", name === object);
    }
  }

  showError(message: string): void {
    const note = document.createElement("div");
    note.textContent = message;
    this.toast.append(note);
    setTimeout(() => note.remove(), 2500);
  }
}
