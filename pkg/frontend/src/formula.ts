// Display-side formula model: a parser for the server's canonical ASCII
// syntax, surface-choice addressing for laying controls onto the tree, and
// a truth preview of the elementarization. Rendering support only -- legal
// moves and outcomes always come from the API.

export type FormulaNode =
  | { kind: "atom"; name: string }
  | { kind: "top" }
  | { kind: "bot" }
  | { kind: "neg"; body: FormulaNode }
  | { kind: "imp"; left: FormulaNode; right: FormulaNode }
  | { kind: "pand"; parts: FormulaNode[] }
  | { kind: "por"; parts: FormulaNode[] }
  | { kind: "cand"; parts: FormulaNode[] }
  | { kind: "cor"; parts: FormulaNode[] };

export type ChoiceNode = Extract<FormulaNode, { kind: "cand" | "cor" }>;

export class FormulaSyntaxError extends Error {
  position: number;

  constructor(message: string, position: number) {
    super(`${message} (at position ${position})`);
    this.position = position;
  }
}

type Token = { text: string; pos: number };

const OPERATORS = new Set(["~", "&", "|", "*", "+", "->", "(", ")", "1", "0"]);

function tokenize(text: string): Token[] {
  const out: Token[] = [];
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (/\s/.test(ch)) {
      i += 1;
      continue;
    }
    if (ch === "-") {
      if (text.startsWith("->", i)) {
        out.push({ text: "->", pos: i });
        i += 2;
        continue;
      }
      throw new FormulaSyntaxError("expected '->'", i);
    }
    if (OPERATORS.has(ch)) {
      out.push({ text: ch, pos: i });
      i += 1;
      continue;
    }
    const m = /^[a-z][a-z0-9_]*/.exec(text.slice(i));
    if (m) {
      out.push({ text: m[0], pos: i });
      i += m[0].length;
      continue;
    }
    throw new FormulaSyntaxError(`unexpected character '${ch}'`, i);
  }
  return out;
}

class Parser {
  private tokens: Token[];
  private pos = 0;

  constructor(private text: string) {
    this.tokens = tokenize(text);
  }

  parse(): FormulaNode {
    const node = this.imp();
    if (this.pos !== this.tokens.length) {
      throw new FormulaSyntaxError("unexpected trailing input", this.here());
    }
    return node;
  }

  private here(): number {
    return this.pos < this.tokens.length ? this.tokens[this.pos].pos : this.text.length;
  }

  private peek(): string | null {
    return this.pos < this.tokens.length ? this.tokens[this.pos].text : null;
  }

  private take(): Token {
    return this.tokens[this.pos++];
  }

  private imp(): FormulaNode {
    const left = this.chain("+", "cor", () => this.chand());
    if (this.peek() === "->") {
      this.take();
      return { kind: "imp", left, right: this.imp() };
    }
    return left;
  }

  private chand(): FormulaNode {
    return this.chain("*", "cand", () => this.por());
  }

  private por(): FormulaNode {
    return this.chain("|", "por", () => this.pand());
  }

  private pand(): FormulaNode {
    return this.chain("&", "pand", () => this.neg());
  }

  private chain(
    op: string,
    kind: "pand" | "por" | "cand" | "cor",
    sub: () => FormulaNode,
  ): FormulaNode {
    const parts = [sub()];
    while (this.peek() === op) {
      this.take();
      parts.push(sub());
    }
    return parts.length === 1 ? parts[0] : ({ kind, parts } as FormulaNode);
  }

  private neg(): FormulaNode {
    const next = this.peek();
    if (next === "~") {
      this.take();
      return { kind: "neg", body: this.neg() };
    }
    if (next === "1") {
      this.take();
      return { kind: "top" };
    }
    if (next === "0") {
      this.take();
      return { kind: "bot" };
    }
    if (next === "(") {
      this.take();
      const node = this.imp();
      if (this.peek() !== ")") {
        throw new FormulaSyntaxError("expected ')'", this.here());
      }
      this.take();
      return node;
    }
    if (next !== null && /^[a-z]/.test(next)) {
      return { kind: "atom", name: this.take().text };
    }
    throw new FormulaSyntaxError("expected a formula", this.here());
  }
}

export function parseFormula(text: string): FormulaNode {
  return new Parser(text).parse();
}

export interface SurfaceChoice {
  spec: string; // dotted address with trailing dot; "" for the root
  kind: "cand" | "cor";
  node: ChoiceNode;
}

/** Choice nodes not nested inside other choice nodes, left to right.
 *  Negation adds no address step; the sides of -> are steps 1 and 2. */
export function surfaceChoices(root: FormulaNode): SurfaceChoice[] {
  const out: SurfaceChoice[] = [];
  const walk = (node: FormulaNode, spec: string): void => {
    switch (node.kind) {
      case "atom":
      case "top":
      case "bot":
        return;
      case "neg":
        walk(node.body, spec);
        return;
      case "imp":
        walk(node.left, `${spec}1.`);
        walk(node.right, `${spec}2.`);
        return;
      case "pand":
      case "por":
        node.parts.forEach((part, i) => walk(part, `${spec}${i + 1}.`));
        return;
      case "cand":
      case "cor":
        out.push({ spec, kind: node.kind, node });
        return;
    }
  };
  walk(root, "");
  return out;
}

const OP_TEXT = { pand: " & ", por: " | ", cand: " * ", cor: " + " } as const;
const LEVEL = { imp: 0, cor: 1, cand: 2, por: 3, pand: 4, neg: 5 } as const;

function render(node: FormulaNode, floor: number): string {
  let text: string;
  let level: number;
  switch (node.kind) {
    case "atom":
      return node.name;
    case "top":
      return "1";
    case "bot":
      return "0";
    case "neg":
      text = "~" + render(node.body, 5);
      level = LEVEL.neg;
      break;
    case "imp":
      text = `${render(node.left, 1)} -> ${render(node.right, 0)}`;
      level = LEVEL.imp;
      break;
    default:
      text = node.parts.map((p) => render(p, LEVEL[node.kind] + 1)).join(OP_TEXT[node.kind]);
      level = LEVEL[node.kind];
  }
  return level < floor ? `(${text})` : text;
}

export function formulaToText(node: FormulaNode): string {
  return render(node, 0);
}

export function atomsOf(node: FormulaNode): string[] {
  const found = new Set<string>();
  const walk = (n: FormulaNode): void => {
    if (n.kind === "atom") found.add(n.name);
    else if (n.kind === "neg") walk(n.body);
    else if (n.kind === "imp") {
      walk(n.left);
      walk(n.right);
    } else if ("parts" in n) n.parts.forEach(walk);
  };
  walk(node);
  return [...found].sort();
}

/** Elementarization truth at a candidate valuation: choice-or counts as
 *  lost, choice-and as won. A read-only preview; the settled winner still
 *  comes from the API. */
export function previewTruth(node: FormulaNode, valuation: Record<string, boolean>): boolean {
  switch (node.kind) {
    case "atom": {
      const value = valuation[node.name];
      if (value === undefined) throw new Error(`no value for atom ${node.name}`);
      return value;
    }
    case "top":
      return true;
    case "bot":
      return false;
    case "neg":
      return !previewTruth(node.body, valuation);
    case "imp":
      return !previewTruth(node.left, valuation) || previewTruth(node.right, valuation);
    case "pand":
      return node.parts.every((p) => previewTruth(p, valuation));
    case "por":
      return node.parts.some((p) => previewTruth(p, valuation));
    case "cand":
      return true;
    case "cor":
      return false;
  }
}
