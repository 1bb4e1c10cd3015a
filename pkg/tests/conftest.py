"""Shared corpus and independent oracles for the test suite.

The oracles here (brute-force truth tables, expansion-based polarity) are
deliberately separate implementations from the package code they check.
"""

from __future__ import annotations

import random

from clgames.formulas import (
    Atom,
    BOT,
    Bot,
    ChAnd,
    ChOr,
    Formula,
    Imp,
    Neg,
    ParAnd,
    ParOr,
    TOP,
    Top,
    parse,
)

# fixed vectors: formula text -> CL1-provable?
PROVABLE_VECTORS = [
    "((p->q)*(p->r))->(p->(q*r))",
    "((p*q)&(p*q))->(p*q)",
    "((~p|~q)&(~r|~s))|((p|r)&(q|s))",
    "p|~p",
]
UNPROVABLE_VECTORS = [
    "((p->q)*(p->r))->(p->(q&r))",
    "(p*q)->((p*q)&(p*q))",
    "((p&(r*s))*(q&(r*s)))->((p*q)&(r*s))",
    "p+~p",
]
TWO_BOARD = "(a+~a)->((~b+b)&1)"

ALL_VECTORS = PROVABLE_VECTORS + UNPROVABLE_VECTORS


# --- independent classical oracle -------------------------------------------


def eval_classical(f: Formula, v: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Neg):
        return not eval_classical(f.body, v)
    if isinstance(f, Imp):
        return (not eval_classical(f.left, v)) or eval_classical(f.right, v)
    if isinstance(f, ParAnd):
        return all(eval_classical(p, v) for p in f.parts)
    if isinstance(f, ParOr):
        return any(eval_classical(p, v) for p in f.parts)
    raise AssertionError(f"oracle got a choice node: {f!r}")


def oracle_atoms(f: Formula) -> list[str]:
    found: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            found.add(g.name)
        elif isinstance(g, Neg):
            stack.append(g.body)
        elif isinstance(g, Imp):
            stack.extend((g.left, g.right))
        elif isinstance(g, (ParAnd, ParOr, ChAnd, ChOr)):
            stack.extend(g.parts)
    return sorted(found)


def oracle_tautology(f: Formula) -> bool:
    names = oracle_atoms(f)
    for bits in range(2 ** len(names)):
        v = {n: bool(bits >> k & 1) for k, n in enumerate(names)}
        if not eval_classical(f, v):
            return False
    return True


# --- expansion-based polarity oracle -----------------------------------------


def expand_arrows(f: Formula) -> Formula:
    """Rewrites every a -> b into ~a | b, recursively."""
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if isinstance(f, Neg):
        return Neg(expand_arrows(f.body))
    if isinstance(f, Imp):
        return ParOr((Neg(expand_arrows(f.left)), expand_arrows(f.right)))
    return type(f)(tuple(expand_arrows(p) for p in f.parts))


def oracle_surface_choices(f: Formula) -> list[tuple[bool, str, int]]:
    """(positive, kind, arity) of each surface choice node of the arrow-free
    expansion, left to right, counting enclosing negations directly."""
    out: list[tuple[bool, str, int]] = []

    def walk(g: Formula, negs: int) -> None:
        if isinstance(g, (Atom, Top, Bot)):
            return
        if isinstance(g, Neg):
            walk(g.body, negs + 1)
        elif isinstance(g, (ParAnd, ParOr)):
            for p in g.parts:
                walk(p, negs)
        elif isinstance(g, ChAnd):
            out.append((negs % 2 == 0, "*", len(g.parts)))
        elif isinstance(g, ChOr):
            out.append((negs % 2 == 0, "+", len(g.parts)))

    walk(expand_arrows(f), 0)
    return out


# --- random formula generator -------------------------------------------------


def random_formula(
    rng: random.Random,
    max_connectives: int = 10,
    n_atoms: int = 5,
    choice_free: bool = False,
    allow_consts: bool = True,
) -> Formula:
    names = "pqrst"[:n_atoms]

    def leaf() -> Formula:
        r = rng.random()
        if allow_consts and r < 0.1:
            return TOP if rng.random() < 0.5 else BOT
        return Atom(rng.choice(names))

    def build(budget: int) -> Formula:
        if budget <= 0 or rng.random() < 0.25:
            return leaf()
        kinds = ["neg", "imp", "pand", "por"]
        if not choice_free:
            kinds += ["cand", "cor", "cand", "cor"]
        kind = rng.choice(kinds)
        if kind == "neg":
            return Neg(build(budget - 1))
        if kind == "imp":
            split = rng.randint(0, budget - 1)
            return Imp(build(split), build(budget - 1 - split))
        n = rng.choice([2, 2, 2, 3])
        shares = [0] * n
        for _ in range(budget - 1):
            shares[rng.randrange(n)] += 1
        parts = tuple(build(s) for s in shares)
        node = {"pand": ParAnd, "por": ParOr, "cand": ChAnd, "cor": ChOr}[kind]
        return node(parts)

    return build(rng.randint(1, max_connectives))


def formula_corpus(seed: int, count: int, **kwargs) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, **kwargs) for _ in range(count)]


def sampled_corpus(seed: int, count: int, keep, cap: int = 200_000, **kwargs):
    """Rejection-samples random formulas until `count` satisfy `keep`."""
    rng = random.Random(seed)
    out = []
    for _ in range(cap):
        f = random_formula(rng, **kwargs)
        if keep(f):
            out.append(f)
            if len(out) == count:
                return out
    raise AssertionError(f"only {len(out)} of {count} formulas found")


def provable_corpus(seed: int, count: int, **kwargs):
    from clgames.proofs import System, prove

    return sampled_corpus(
        seed, count, lambda f: prove(f, System.CL1) is not None, **kwargs
    )


def unprovable_corpus(seed: int, count: int, **kwargs):
    from clgames.proofs import System, prove

    return sampled_corpus(
        seed, count, lambda f: prove(f, System.CL1) is None, **kwargs
    )
