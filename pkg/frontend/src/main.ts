/** Bootstrap: create a session from the query string (or a starter level)
 * and run the frame loop. Overlay pacing is one cell per frame at ~30fps. */

import { EditorController } from "./controller.js";
import { DomView } from "./dom.js";
import { ApiClient, type ConditionName } from "./protocol.js";

const STARTER_LEVEL = "........\n.F......\n.####...\n........\nBA....E.\n########\n";

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const condition = (params.get("condition") === "half" ? "half" : "full") as ConditionName;
  const level = params.get("level") ?? STARTER_LEVEL;

  const api = new ApiClient((url, init) => fetch(url, init), "");
  const root = document.getElementById("editor");
  if (!root) {
    throw new Error("missing #editor element");
  }
  let controller: EditorController;
  const view = new DomView(root, {
    onCellClick: (col, row) => void controller.handleCellClick(col, row),
    onPaletteClick: (object) => void controller.handlePaletteClick(object),
    onControl: (key) => void controller.handleKey(key),
  });
  controller = new EditorController(api, view);
  await controller.init(level, condition);

  document.addEventListener("keydown", (event) => {
    if (["ArrowUp", "ArrowDown", "ArrowLeft", "ArrowRight", "q", "n", "r"].includes(event.key)) {
      event.preventDefault();
      void controller.handleKey(event.key);
    }
  });

  // The graphics loop runs at display rate; process every other frame to
  // stay near 30fps, one gradient cell (or one animation step) per frame.
  let skip = false;
  const frame = (): void => {
    skip = !skip;
    if (!skip) {
      void controller.tick();
    }
    window.requestAnimationFrame(frame);
  };
  window.requestAnimationFrame(frame);
}

void start();
