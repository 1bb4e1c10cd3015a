// DOM rendering for the board view. Everything here is presentation;
// state transitions all go through the PlayApi.

import { ApiError, PlayApi, SessionState, Valuation } from "./api.js";
import { atomsOf, parseFormula, previewTruth } from "./formula.js";
import { BoardView, NodeView, buildBoardView } from "./view.js";

export interface BoardCallbacks {
  onPick: (move: string) => void;
  onValuation: (valuation: Valuation) => void;
}

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderNode(node: NodeView, cb: BoardCallbacks): HTMLElement {
  switch (node.kind) {
    case "leaf":
      return el("span", "leaf", node.text);
    case "neg": {
      const wrap = el("span", "neg");
      wrap.append("~", renderNode(node.body, cb));
      return wrap;
    }
    case "imp": {
      const wrap = el("span", "imp");
      wrap.append(
        paren(renderNode(node.left, cb)),
        el("span", "op", " -> "),
        paren(renderNode(node.right, cb)),
      );
      return wrap;
    }
    case "pand":
    case "por": {
      const wrap = el("span", node.kind);
      const glue = node.kind === "pand" ? " & " : " | ";
      node.parts.forEach((part, i) => {
        if (i > 0) wrap.append(el("span", "op", glue));
        wrap.append(paren(renderNode(part, cb)));
      });
      return wrap;
    }
    case "choice": {
      const { choice } = node;
      const wrap = el("span", `choice ${choice.ownership} ${choice.kind}`);
      wrap.title =
        choice.ownership === "human"
          ? "your choice"
          : "machine's choice";
      const glue = choice.kind === "cand" ? " * " : " + ";
      choice.controls.forEach((control, i) => {
        if (i > 0) wrap.append(el("span", "op", glue));
        const button = el("button", "component", control.label) as HTMLButtonElement;
        button.disabled = !control.enabled;
        if (control.enabled) {
          if (control.resultPreview !== null) {
            button.title = `play ${control.move} -> ${control.resultPreview}`;
          }
          button.addEventListener("click", () => cb.onPick(control.move));
        }
        wrap.append(button);
      });
      return wrap;
    }
  }
}

function paren(inner: HTMLElement): HTMLElement {
  const wrap = el("span", "group");
  wrap.append("(", inner, ")");
  return wrap;
}

function renderValuationPicker(view: BoardView, cb: BoardCallbacks): HTMLElement {
  const box = el("div", "valuation-picker");
  box.append(el("div", "hint", "pick a valuation to settle the winner:"));
  const boxes = new Map<string, HTMLInputElement>();
  for (const atom of view.valuationAtoms) {
    const label = el("label");
    const input = document.createElement("input");
    input.type = "checkbox";
    boxes.set(atom, input);
    label.append(input, ` ${atom}`);
    box.append(label);
  }
  const go = el("button", "settle", "settle") as HTMLButtonElement;
  go.addEventListener("click", () => {
    const valuation: Valuation = {};
    for (const [atom, input] of boxes) valuation[atom] = input.checked;
    cb.onValuation(valuation);
  });
  box.append(go);
  return box;
}

function renderTruthPreview(view: BoardView): HTMLElement {
  // read-only mid-game aid: how the current formula's choice-free collapse
  // evaluates under a candidate valuation
  const box = el("div", "truth-preview");
  const root = parseFormula(view.formulaNow);
  const names = atomsOf(root);
  if (names.length === 0) return box;
  box.append(el("div", "hint", "preview: collapse truth under"));
  const boxes = new Map<string, HTMLInputElement>();
  const out = el("span", "preview-result");
  const update = () => {
    const valuation: Record<string, boolean> = {};
    for (const [atom, input] of boxes) valuation[atom] = input.checked;
    out.textContent = previewTruth(root, valuation) ? "true (⊤ would win)" : "false (⊥ would win)";
  };
  for (const atom of names) {
    const label = el("label");
    const input = document.createElement("input");
    input.type = "checkbox";
    input.addEventListener("change", update);
    boxes.set(atom, input);
    label.append(input, ` ${atom}`);
    box.append(label);
  }
  box.append(out);
  update();
  return box;
}

export function renderBoard(
  container: HTMLElement,
  view: BoardView,
  cb: BoardCallbacks,
): void {
  container.replaceChildren();
  const banner = el("div", "banners");
  banner.append(el("span", "role", view.roleBanner));
  if (!view.strategy) banner.append(el("span", "free", " (free play)"));
  if (view.winnerBanner) banner.append(el("span", "winner", ` ${view.winnerBanner}`));
  container.append(banner);

  const board = el("div", "board");
  board.append(renderNode(view.tree, cb));
  container.append(board);

  const history = el("div", "history");
  history.append(el("div", "hint", "run"));
  if (view.history.length === 0) {
    history.append(el("div", "entry empty", "(no moves yet)"));
  }
  for (const entry of view.history) {
    history.append(el("div", "entry", `${entry.glyph} ${entry.move}`));
  }
  container.append(history);

  if (view.finished && view.needsValuation) {
    container.append(renderValuationPicker(view, cb));
  } else if (!view.finished) {
    container.append(renderTruthPreview(view));
  }
}

export class BoardController {
  private sessionId: string | null = null;

  constructor(
    private api: PlayApi,
    private container: HTMLElement,
    private status: HTMLElement,
  ) {}

  async start(formula: string, role: "T" | "B", strategy: boolean): Promise<void> {
    try {
      const created = await this.api.createSession(formula, role, { strategy });
      this.sessionId = created.id;
      this.show(created.state);
      this.status.textContent = "";
    } catch (err) {
      this.status.textContent = err instanceof Error ? err.message : String(err);
    }
  }

  private show(state: SessionState): void {
    renderBoard(this.container, buildBoardView(state), {
      onPick: (move) => void this.pick(move),
      onValuation: (valuation) => void this.settle(valuation),
    });
  }

  private async pick(move: string): Promise<void> {
    if (this.sessionId === null) return;
    try {
      this.show(await this.api.move(this.sessionId, move));
      this.status.textContent = "";
    } catch (err) {
      if (err instanceof ApiError && err.status === 400) {
        // stale control: shake and resync from the server, nothing mutated
        this.container.classList.remove("shake");
        void this.container.offsetWidth; // restart the animation
        this.container.classList.add("shake");
        this.status.textContent = `illegal; legal now: ${err.legal.join(", ") || "none"}`;
        this.show(await this.api.getState(this.sessionId));
      } else {
        this.status.textContent = err instanceof Error ? err.message : String(err);
      }
    }
  }

  private async settle(valuation: Valuation): Promise<void> {
    if (this.sessionId === null) return;
    this.show(await this.api.setValuation(this.sessionId, valuation));
  }
}
