import assert from "node:assert/strict";
import { test } from "node:test";

import {
  FormulaSyntaxError,
  atomsOf,
  formulaToText,
  parseFormula,
  previewTruth,
  surfaceChoices,
} from "../src/formula.js";

test("parses the canonical server rendering", () => {
  const node = parseFormula("(p -> q) * (p -> r) -> p -> q * r");
  assert.equal(node.kind, "imp");
  assert.equal(formulaToText(node), "(p -> q) * (p -> r) -> p -> q * r");
});

test("chains flatten, parentheses nest", () => {
  const flat = parseFormula("p & q & r");
  assert.equal(flat.kind, "pand");
  assert.equal((flat as { parts: unknown[] }).parts.length, 3);
  const nested = parseFormula("(p & q) & r");
  assert.equal((nested as { parts: unknown[] }).parts.length, 2);
  assert.equal(formulaToText(nested), "(p & q) & r");
});

test("round trips whatever it prints", () => {
  for (const text of [
    "p + ~p",
    "(a + ~a) -> (~b + b) & 1",
    "~(p | 0) -> (q * r) + p",
    "p -> q -> r",
  ]) {
    const node = parseFormula(text);
    assert.deepEqual(parseFormula(formulaToText(node)), node);
  }
});

test("syntax errors carry a position", () => {
  assert.throws(
    () => parseFormula("p & "),
    (err: unknown) => err instanceof FormulaSyntaxError && err.position === 4,
  );
});

test("surface choice addressing skips negation, numbers arrow sides", () => {
  const node = parseFormula("r | (p + q) | ~(p -> (r & (p + q)))");
  const specs = surfaceChoices(node).map((c) => c.spec);
  assert.deepEqual(specs, ["2.", "3.2.2."]);
});

test("nested choices are not surface", () => {
  const node = parseFormula("(p * q) + r");
  const found = surfaceChoices(node);
  assert.equal(found.length, 1);
  assert.equal(found[0].kind, "cor");
  assert.equal(found[0].spec, "");
});

test("atoms are sorted and deduplicated", () => {
  assert.deepEqual(atomsOf(parseFormula("q & p & ~q")), ["p", "q"]);
});

test("preview truth collapses choices like the engine's elementarization", () => {
  // choice-or counts as lost, choice-and as won
  assert.equal(previewTruth(parseFormula("p + ~p"), { p: true }), false);
  assert.equal(previewTruth(parseFormula("p * q"), {}), true);
  const g = parseFormula("(a + ~a) -> (~b + b) & 1");
  assert.equal(previewTruth(g, { a: true, b: true }), true); // 0 -> 0 & 1
  const partial = parseFormula("a -> (~b + b) & 1");
  assert.equal(previewTruth(partial, { a: true, b: true }), false); // a -> 0 & 1
});
