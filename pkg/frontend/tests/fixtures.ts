// Wire payloads captured verbatim from a live `clgames serve` session.

import { SessionState } from "../src/api.js";

export const FRESH_SESSION: SessionState = {
  formula: "(p -> q) * (p -> r) -> p -> q * r",
  formula_now: "(p -> q) * (p -> r) -> p -> q * r",
  run: [],
  human_role: "B",
  legal_human_moves: [
    {
      move: "2.2.1",
      spec: "2.2.",
      component: 1,
      result: "(p -> q) * (p -> r) -> p -> q",
    },
    {
      move: "2.2.2",
      spec: "2.2.",
      component: 2,
      result: "(p -> q) * (p -> r) -> p -> r",
    },
  ],
  finished: false,
  strategy: true,
  winner: null,
  needs_valuation: false,
};

export const AFTER_PICK: SessionState = {
  formula: "(p -> q) * (p -> r) -> p -> q * r",
  formula_now: "(p -> q) -> p -> q",
  run: [
    { by: "B", move: "2.2.1" },
    { by: "T", move: "1.1" },
  ],
  human_role: "B",
  legal_human_moves: [],
  finished: true,
  strategy: true,
  winner: "T",
  needs_valuation: false,
};

export const NEEDS_VALUATION: SessionState = {
  formula: "p + ~p",
  formula_now: "p",
  run: [{ by: "T", move: "1" }],
  human_role: "T",
  legal_human_moves: [],
  finished: true,
  strategy: true,
  winner: null,
  needs_valuation: true,
  atoms: ["p"],
};
