"""Formulas of the parallel/choice propositional language.

A formula doubles as a game board: the choice connectives are the move
points, and the surrounding structure decides which player owns each of
them.  This module is purely syntactic -- parsing, printing, occurrence
analysis, elementarization, stability, substitution and classical truth.
Game play lives in `games`, provability in `proofs`.

ASCII syntax (tightest to loosest): ~  &  |  *  +  ->
with `*`/`+` the choice connectives, `&`/`|` the parallel ones, `1`/`0`
the trivially won/lost games, and `->` right-associative.  Unparenthesized
chains of one n-ary connective form a single n-ary node; parentheses force
nesting, and the two shapes are different games.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Union

TAUTOLOGY_ATOM_CAP = 20


class FormulaError(ValueError):
    """Structurally invalid formula, choice spec, or valuation."""


class ParseError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    """The game the machine wins by doing nothing."""


@dataclass(frozen=True)
class Bot:
    """The game the machine loses no matter what."""


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


class _Nary:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise FormulaError(f"{type(self).__name__} needs at least 2 parts")


@dataclass(frozen=True)
class ParAnd(_Nary):
    """Parallel conjunction: all parts are played at once, all must be won."""

    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class ParOr(_Nary):
    """Parallel disjunction: all parts are played at once, one win suffices."""

    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class ChAnd(_Nary):
    """Choice conjunction: the environment picks one part to play."""

    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class ChOr(_Nary):
    """Choice disjunction: the machine picks one part to play."""

    parts: tuple["Formula", ...]


Formula = Union[Atom, Top, Bot, Neg, Imp, ParAnd, ParOr, ChAnd, ChOr]

TOP = Top()
BOT = Bot()

CHOICE_AND = "*"
CHOICE_OR = "+"


# --- parsing ---------------------------------------------------------------

_UNICODE = {
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "⊓": "*",
    "⊔": "+",
    "⊤": "1",
    "⊥": "0",
}

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Yields (kind, value, position); kinds are the ASCII operator symbols,
    '1', '0', '(', ')' and 'atom'."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _UNICODE:
            sym = _UNICODE[ch]
            out.append((sym, sym, i))
            i += 1
            continue
        if ch == "-":
            if text.startswith("->", i):
                out.append(("->", "->", i))
                i += 2
                continue
            raise ParseError("expected '->'", i)
        if ch in "~&|*+()10":
            out.append((ch, ch, i))
            i += 1
            continue
        m = _ATOM_RE.match(text, i)
        if m:
            out.append(("atom", m.group(0), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def _here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][2]
        return len(self.text)

    def _take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self._imp()
        if self.pos != len(self.tokens):
            raise ParseError("unexpected trailing input", self._here())
        return f

    def _imp(self) -> Formula:
        left = self._chain(CHOICE_OR, self._chand, ChOr)
        if self._peek() == "->":
            self._take()
            return Imp(left, self._imp())
        return left

    def _chand(self) -> Formula:
        return self._chain(CHOICE_AND, self._por, ChAnd)

    def _por(self) -> Formula:
        return self._chain("|", self._pand, ParOr)

    def _pand(self) -> Formula:
        return self._chain("&", self._neg, ParAnd)

    def _chain(self, op, sub, node) -> Formula:
        parts = [sub()]
        while self._peek() == op:
            self._take()
            parts.append(sub())
        if len(parts) == 1:
            return parts[0]
        return node(tuple(parts))

    def _neg(self) -> Formula:
        kind = self._peek()
        if kind == "~":
            self._take()
            return Neg(self._neg())
        if kind == "1":
            self._take()
            return TOP
        if kind == "0":
            self._take()
            return BOT
        if kind == "(":
            self._take()
            f = self._imp()
            if self._peek() != ")":
                raise ParseError("expected ')'", self._here())
            self._take()
            return f
        if kind == "atom":
            return Atom(self._take()[1])
        raise ParseError("expected a formula", self._here())


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# --- printing --------------------------------------------------------------

# Binding levels, loosest to tightest.  A subterm is parenthesized whenever
# its own level is below what its context requires; same-level n-ary nodes
# always get parentheses so that nesting survives a reparse.
_LEAF = 6


def _render(f: Formula, floor: int) -> str:
    if isinstance(f, Atom):
        text, level = f.name, _LEAF
    elif isinstance(f, Top):
        text, level = "1", _LEAF
    elif isinstance(f, Bot):
        text, level = "0", _LEAF
    elif isinstance(f, Neg):
        text, level = "~" + _render(f.body, 5), 5
    elif isinstance(f, ParAnd):
        text, level = " & ".join(_render(p, 5) for p in f.parts), 4
    elif isinstance(f, ParOr):
        text, level = " | ".join(_render(p, 4) for p in f.parts), 3
    elif isinstance(f, ChAnd):
        text, level = " * ".join(_render(p, 3) for p in f.parts), 2
    elif isinstance(f, ChOr):
        text, level = " + ".join(_render(p, 2) for p in f.parts), 1
    elif isinstance(f, Imp):
        text, level = _render(f.left, 1) + " -> " + _render(f.right, 0), 0
    else:
        raise FormulaError(f"not a formula: {f!r}")
    if level < floor:
        return f"({text})"
    return text


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering; parse(to_text(f)) == f."""
    return _render(f, 0)


# --- occurrence analysis ---------------------------------------------------


@dataclass(frozen=True)
class ChoiceSpec:
    """Address of one surface choice connective and who gets to pick it.

    `path` holds the child indices from the root down to the node, where
    negation contributes no step and the two sides of `->` are steps 1 and 2.
    `string_form` is the dotted rendering of the path ("" for the root); a
    choice move is string_form plus the component number.
    """

    path: tuple[int, ...]
    positive: bool
    kind: str  # CHOICE_AND or CHOICE_OR
    arity: int

    @property
    def string_form(self) -> str:
        return "".join(f"{k}." for k in self.path)

    @property
    def polarity(self) -> str:
        return "positive" if self.positive else "negative"

    @property
    def top_owned(self) -> bool:
        """True when the machine picks this occurrence: a choice-or in
        positive position or a choice-and in negative position."""
        return self.positive == (self.kind == CHOICE_OR)

    def move(self, component: int) -> str:
        if not 1 <= component <= self.arity:
            raise FormulaError(
                f"component {component} out of range 1..{self.arity}"
            )
        return self.string_form + str(component)


def surface_choice_occurrences(f: Formula) -> list[ChoiceSpec]:
    """All choice nodes not nested inside another choice node, left to right."""
    out: list[ChoiceSpec] = []

    def walk(g: Formula, path: tuple[int, ...], positive: bool) -> None:
        if isinstance(g, (Atom, Top, Bot)):
            return
        if isinstance(g, Neg):
            walk(g.body, path, not positive)
        elif isinstance(g, Imp):
            walk(g.left, path + (1,), not positive)
            walk(g.right, path + (2,), positive)
        elif isinstance(g, (ParAnd, ParOr)):
            for i, part in enumerate(g.parts, 1):
                walk(part, path + (i,), positive)
        elif isinstance(g, ChAnd):
            out.append(ChoiceSpec(path, positive, CHOICE_AND, len(g.parts)))
        elif isinstance(g, ChOr):
            out.append(ChoiceSpec(path, positive, CHOICE_OR, len(g.parts)))

    walk(f, (), True)
    return out


def substitute_at(f: Formula, spec: ChoiceSpec, component: int) -> Formula:
    """Replaces the choice occurrence addressed by `spec` with its
    `component`-th part (1-based)."""
    if not 1 <= component <= spec.arity:
        raise FormulaError(f"component {component} out of range 1..{spec.arity}")

    def replace(g: Formula, path: tuple[int, ...]) -> Formula:
        if isinstance(g, Neg):
            return Neg(replace(g.body, path))
        if not path:
            if isinstance(g, ChAnd) and spec.kind != CHOICE_AND:
                raise FormulaError("spec kind does not match the occurrence")
            if isinstance(g, ChOr) and spec.kind != CHOICE_OR:
                raise FormulaError("spec kind does not match the occurrence")
            if not isinstance(g, (ChAnd, ChOr)):
                raise FormulaError("spec does not address a choice occurrence")
            if len(g.parts) != spec.arity:
                raise FormulaError("spec arity does not match the occurrence")
            return g.parts[component - 1]
        head, rest = path[0], path[1:]
        if isinstance(g, Imp):
            if head == 1:
                return Imp(replace(g.left, rest), g.right)
            if head == 2:
                return Imp(g.left, replace(g.right, rest))
            raise FormulaError("spec path leaves the formula")
        if isinstance(g, (ParAnd, ParOr)):
            if not 1 <= head <= len(g.parts):
                raise FormulaError("spec path leaves the formula")
            parts = list(g.parts)
            parts[head - 1] = replace(parts[head - 1], rest)
            return type(g)(tuple(parts))
        raise FormulaError("spec path leaves the formula")

    return replace(f, spec.path)


# --- elementary layer ------------------------------------------------------


def is_elementary(f: Formula) -> bool:
    """True when the formula contains no choice connective."""
    if isinstance(f, (Atom, Top, Bot)):
        return True
    if isinstance(f, Neg):
        return is_elementary(f.body)
    if isinstance(f, Imp):
        return is_elementary(f.left) and is_elementary(f.right)
    if isinstance(f, (ParAnd, ParOr)):
        return all(is_elementary(p) for p in f.parts)
    return False


def elementarize(f: Formula) -> Formula:
    """Collapses every outermost choice-or to 0 and choice-and to 1."""
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if isinstance(f, Neg):
        return Neg(elementarize(f.body))
    if isinstance(f, Imp):
        return Imp(elementarize(f.left), elementarize(f.right))
    if isinstance(f, (ParAnd, ParOr)):
        return type(f)(tuple(elementarize(p) for p in f.parts))
    if isinstance(f, ChAnd):
        return TOP
    return BOT


def atoms(f: Formula) -> tuple[str, ...]:
    """Atom names, sorted, without duplicates."""
    seen: set[str] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, Atom):
            seen.add(g.name)
        elif isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, Imp):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (ParAnd, ParOr, ChAnd, ChOr)):
            for p in g.parts:
                walk(p)

    walk(f)
    return tuple(sorted(seen))


def choice_component_count(f: Formula) -> int:
    """Total number of components over all choice nodes, at any depth."""
    if isinstance(f, (Atom, Top, Bot)):
        return 0
    if isinstance(f, Neg):
        return choice_component_count(f.body)
    if isinstance(f, Imp):
        return choice_component_count(f.left) + choice_component_count(f.right)
    total = sum(choice_component_count(p) for p in f.parts)
    if isinstance(f, (ChAnd, ChOr)):
        total += len(f.parts)
    return total


def classical_truth(f: Formula, valuation: dict[str, bool]) -> bool:
    """Standard evaluation of a choice-free formula; every atom must be set."""
    if isinstance(f, Atom):
        if f.name not in valuation:
            raise FormulaError(f"no value for atom {f.name!r}")
        return valuation[f.name]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Neg):
        return not classical_truth(f.body, valuation)
    if isinstance(f, Imp):
        return (not classical_truth(f.left, valuation)) or classical_truth(
            f.right, valuation
        )
    if isinstance(f, ParAnd):
        return all(classical_truth(p, valuation) for p in f.parts)
    if isinstance(f, ParOr):
        return any(classical_truth(p, valuation) for p in f.parts)
    raise FormulaError("classical evaluation needs a choice-free formula")


def all_valuations(names: tuple[str, ...] | list[str]) -> Iterator[dict[str, bool]]:
    """All valuations of `names`, false-before-true, first name most
    significant (so the first yielded valuation is all-false)."""
    names = tuple(names)
    for bits in product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def tautology(f: Formula) -> bool:
    """Truth-table tautology test; refuses formulas past the atom cap."""
    names = atoms(f)
    if len(names) > TAUTOLOGY_ATOM_CAP:
        raise FormulaError(
            f"tautology check capped at {TAUTOLOGY_ATOM_CAP} atoms, got {len(names)}"
        )
    return all(classical_truth(f, v) for v in all_valuations(names))


def is_stable(f: Formula) -> bool:
    """True when the elementarization is a classical tautology."""
    return tautology(elementarize(f))


def _formula_str(self) -> str:
    return to_text(self)


for _cls in (Atom, Top, Bot, Neg, Imp, ParAnd, ParOr, ChAnd, ChOr):
    _cls.__str__ = _formula_str
