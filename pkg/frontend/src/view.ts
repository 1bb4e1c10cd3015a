// Pure view-model for the board: what to render, with no DOM and no game
// logic. Interactive controls are exactly the API's legal_human_moves;
// choice nodes the machine owns render inert controls.

import {
  FormulaNode,
  formulaToText,
  parseFormula,
  surfaceChoices,
} from "./formula.js";
import { MoveOption, RunEntry, Role, SessionState } from "./api.js";

export type Ownership = "human" | "machine";

export interface ChoiceControl {
  move: string; // the move string to POST when picked
  component: number;
  label: string; // the component formula
  enabled: boolean;
  resultPreview: string | null; // API-provided next formula, human moves only
}

export interface ChoiceView {
  spec: string;
  kind: "cand" | "cor";
  ownership: Ownership;
  controls: ChoiceControl[];
}

export type NodeView =
  | { kind: "leaf"; text: string }
  | { kind: "neg"; body: NodeView }
  | { kind: "imp"; left: NodeView; right: NodeView }
  | { kind: "pand" | "por"; parts: NodeView[] }
  | { kind: "choice"; choice: ChoiceView; text: string };

export interface HistoryEntry {
  glyph: string; // ⊤ or ⊥
  by: Role;
  move: string;
}

export interface BoardView {
  formulaNow: string;
  tree: NodeView;
  history: HistoryEntry[];
  roleBanner: string;
  winnerBanner: string | null;
  finished: boolean;
  needsValuation: boolean;
  valuationAtoms: string[];
  strategy: boolean;
}

export const GLYPH: Record<Role, string> = { T: "⊤", B: "⊥" };

export function historyOf(run: RunEntry[]): HistoryEntry[] {
  return run.map((entry) => ({
    glyph: GLYPH[entry.by],
    by: entry.by,
    move: entry.move,
  }));
}

function groupBySpec(moves: MoveOption[]): Map<string, MoveOption[]> {
  const grouped = new Map<string, MoveOption[]>();
  for (const option of moves) {
    const bucket = grouped.get(option.spec);
    if (bucket) bucket.push(option);
    else grouped.set(option.spec, [option]);
  }
  return grouped;
}

function buildTree(root: FormulaNode, legal: Map<string, MoveOption[]>): NodeView {
  const choiceSpecs = new Map<FormulaNode, string>();
  for (const sc of surfaceChoices(root)) {
    choiceSpecs.set(sc.node, sc.spec);
  }

  const build = (node: FormulaNode): NodeView => {
    switch (node.kind) {
      case "atom":
        return { kind: "leaf", text: node.name };
      case "top":
        return { kind: "leaf", text: "1" };
      case "bot":
        return { kind: "leaf", text: "0" };
      case "neg":
        return { kind: "neg", body: build(node.body) };
      case "imp":
        return { kind: "imp", left: build(node.left), right: build(node.right) };
      case "pand":
      case "por":
        return { kind: node.kind, parts: node.parts.map(build) };
      case "cand":
      case "cor": {
        const spec = choiceSpecs.get(node);
        if (spec === undefined) {
          // nested choice: not pickable by anyone yet, render as plain text
          return { kind: "leaf", text: formulaToText(node) };
        }
        const options = legal.get(spec);
        const controls: ChoiceControl[] = node.parts.map((part, index) => {
          const component = index + 1;
          const option = options?.find((o) => o.component === component);
          return {
            move: option ? option.move : `${spec}${component}`,
            component,
            label: formulaToText(part),
            enabled: option !== undefined,
            resultPreview: option ? option.result : null,
          };
        });
        return {
          kind: "choice",
          text: formulaToText(node),
          choice: {
            spec,
            kind: node.kind,
            ownership: options ? "human" : "machine",
            controls,
          },
        };
      }
    }
  };
  return build(root);
}

export function buildBoardView(state: SessionState): BoardView {
  const root = parseFormula(state.formula_now);
  const legal = groupBySpec(state.legal_human_moves);
  const winnerBanner =
    state.winner === null ? null : `${GLYPH[state.winner]} wins`;
  return {
    formulaNow: state.formula_now,
    tree: buildTree(root, legal),
    history: historyOf(state.run),
    roleBanner: `you play ${GLYPH[state.human_role]}`,
    winnerBanner,
    finished: state.finished,
    needsValuation: state.needs_valuation,
    valuationAtoms: state.atoms ?? [],
    strategy: state.strategy,
  };
}

/** Every enabled control in the tree, flattened; must equal the API's
 *  legal_human_moves exactly. */
export function enabledMoves(view: NodeView): string[] {
  const out: string[] = [];
  const walk = (node: NodeView): void => {
    switch (node.kind) {
      case "leaf":
        return;
      case "neg":
        walk(node.body);
        return;
      case "imp":
        walk(node.left);
        walk(node.right);
        return;
      case "pand":
      case "por":
        node.parts.forEach(walk);
        return;
      case "choice":
        for (const control of node.choice.controls) {
          if (control.enabled) out.push(control.move);
        }
        return;
    }
  };
  walk(view);
  return out.sort();
}
