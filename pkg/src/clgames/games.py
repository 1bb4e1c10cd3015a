"""Formulas played as games: runs, legality, winners, and game comparisons.

Two independent evaluation routes are kept side by side on purpose.
`run_status`/`winner` fold choice moves over the formula and read the
winner off the final formula's elementarization; `wn_generic` evaluates a
run structurally against the defining clauses of each connective.  The two
must agree everywhere, and the test suite holds them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

from .formulas import (
    Atom,
    Bot,
    ChAnd,
    ChOr,
    ChoiceSpec,
    Formula,
    FormulaError,
    Imp,
    Neg,
    ParAnd,
    ParOr,
    Top,
    all_valuations,
    atoms,
    choice_component_count,
    classical_truth,
    elementarize,
    substitute_at,
    surface_choice_occurrences,
)

SPADE = "♠"


class IllegalMoveError(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class Player(Enum):
    T = "T"  # the machine
    B = "B"  # the environment

    @property
    def adversary(self) -> "Player":
        return Player.B if self is Player.T else Player.T


@dataclass(frozen=True)
class LabeledMove:
    by: Player
    move: str


Run = tuple[LabeledMove, ...]


def reverse_labels(run: Run) -> Run:
    return tuple(LabeledMove(lm.by.adversary, lm.move) for lm in run)


def run_projection(run: Run, i: int) -> Run:
    """Moves addressed to part `i` of a parallel node, prefix stripped."""
    prefix = f"{i}."
    return tuple(
        LabeledMove(lm.by, lm.move[len(prefix):])
        for lm in run
        if lm.move.startswith(prefix)
    )


# --- run text and JSON forms -------------------------------------------------


def run_to_text(run: Run) -> str:
    """Comma-separated labeled moves; the always-illegal token prints as S."""
    return ",".join(
        lm.by.value + ("S" if lm.move == SPADE else lm.move) for lm in run
    )


def parse_run(text: str) -> Run:
    text = text.strip()
    if not text:
        return ()
    out = []
    for part in text.split(","):
        part = part.strip()
        if len(part) < 2 or part[0] not in ("T", "B"):
            raise FormulaError(f"bad labeled move {part!r}")
        move = part[1:]
        if move == "S":
            move = SPADE
        out.append(LabeledMove(Player(part[0]), move))
    return tuple(out)


def run_to_json(run: Run) -> list[dict]:
    return [{"by": lm.by.value, "move": lm.move} for lm in run]


def run_from_json(data: Iterable[dict]) -> Run:
    return tuple(LabeledMove(Player(d["by"]), d["move"]) for d in data)


# --- interpretations ---------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass
class FirstTermTable:
    """A predicate that reads only the first term of the input."""

    table: dict[int, bool]
    default: bool = False


Predicate = Union[Const, FirstTermTable]
Interpretation = dict[str, Predicate]


def canon_input(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical finite stand-in for an input padded with zeros."""
    items = list(seq)
    for x in items:
        if not isinstance(x, int) or x < 0:
            raise FormulaError(f"inputs are natural numbers, got {x!r}")
    while items and items[-1] == 0:
        items.pop()
    return tuple(items)


def predicate_at(pred: Predicate, e: Sequence[int]) -> bool:
    if isinstance(pred, Const):
        return pred.value
    first = e[0] if e else 0
    return pred.table.get(first, pred.default)


def valuation_at(itp: Interpretation, e: Sequence[int]) -> dict[str, bool]:
    e = canon_input(e)
    return {name: predicate_at(pred, e) for name, pred in itp.items()}


def const_interpretation(valuation: dict[str, bool]) -> Interpretation:
    return {name: Const(v) for name, v in valuation.items()}


def interpretation_to_json(itp: Interpretation) -> dict:
    out: dict = {}
    for name, pred in itp.items():
        if isinstance(pred, Const):
            out[name] = {"const": pred.value}
        else:
            out[name] = {
                "table": {str(k): v for k, v in sorted(pred.table.items())},
                "default": pred.default,
            }
    return out


def interpretation_from_json(data: dict) -> Interpretation:
    out: Interpretation = {}
    for name, raw in data.items():
        if "const" in raw:
            out[name] = Const(bool(raw["const"]))
        elif "table" in raw:
            out[name] = FirstTermTable(
                {int(k): bool(v) for k, v in raw["table"].items()},
                bool(raw.get("default", False)),
            )
        else:
            raise FormulaError(f"bad predicate for atom {name!r}")
    return out


# --- legality and winners (choice-move route) --------------------------------


def choice_moves(f: Formula) -> dict[str, tuple[ChoiceSpec, int]]:
    """Every available choice move, keyed by its move string."""
    out: dict[str, tuple[ChoiceSpec, int]] = {}
    for spec in surface_choice_occurrences(f):
        for i in range(1, spec.arity + 1):
            out[spec.move(i)] = (spec, i)
    return out


def legal_moves(f: Formula, player: Player) -> set[str]:
    want_top = player is Player.T
    return {
        mv
        for mv, (spec, _) in choice_moves(f).items()
        if spec.top_owned == want_top
    }


def apply_move(f: Formula, lm: LabeledMove) -> Formula:
    """The formula after one legal choice move; raises IllegalMoveError."""
    hit = choice_moves(f).get(lm.move)
    if hit is None:
        raise IllegalMoveError(f"no choice occurrence answers move {lm.move!r}")
    spec, i = hit
    owner = Player.T if spec.top_owned else Player.B
    if owner is not lm.by:
        raise IllegalMoveError(
            f"move {lm.move!r} belongs to {owner.value}, not {lm.by.value}"
        )
    return substitute_at(f, spec, i)


@dataclass(frozen=True)
class RunStatus:
    limit: Optional[Formula]
    offender: Optional[Player] = None
    index: Optional[int] = None

    @property
    def is_legal(self) -> bool:
        return self.offender is None


def run_status(f: Formula, run: Run) -> RunStatus:
    """Folds the run over the formula; on failure reports the last move of
    the shortest illegal prefix."""
    g = f
    for k, lm in enumerate(run):
        try:
            g = apply_move(g, lm)
        except IllegalMoveError:
            return RunStatus(None, lm.by, k)
    return RunStatus(g)


def winner(
    f: Formula, run: Run, itp: Interpretation, e: Sequence[int] = ()
) -> Player:
    """Whoever an illegal run convicts, else truth of the final formula's
    elementarization at the input."""
    status = run_status(f, run)
    if not status.is_legal:
        return status.offender.adversary
    v = valuation_at(itp, e)
    won = classical_truth(elementarize(status.limit), v)
    return Player.T if won else Player.B


# --- structural evaluation (defining-clause route) ----------------------------


def _component_of_first(move: str, n: int) -> int | None:
    """The move as a bare component number 1..n, else None."""
    if move.isdigit() and str(int(move)) == move and 1 <= int(move) <= n:
        return int(move)
    return None


def _component_prefix(move: str, n: int) -> int | None:
    """The 'i.' routing prefix of a parallel-node move, else None."""
    head, dot, _ = move.partition(".")
    if not dot or not head.isdigit() or str(int(head)) != head:
        return None
    i = int(head)
    return i if 1 <= i <= n else None


def _structurally_legal(f: Formula, run: Run) -> bool:
    if not run:
        return True
    if isinstance(f, (Atom, Top, Bot)):
        return False
    if isinstance(f, Neg):
        return _structurally_legal(f.body, reverse_labels(run))
    if isinstance(f, Imp):
        return _structurally_legal(ParOr((Neg(f.left), f.right)), run)
    if isinstance(f, (ParAnd, ParOr)):
        n = len(f.parts)
        if any(_component_prefix(lm.move, n) is None for lm in run):
            return False
        return all(
            _structurally_legal(f.parts[i - 1], run_projection(run, i))
            for i in range(1, n + 1)
        )
    # choice nodes: a single initial pick by the owner, then the chosen part
    first = run[0]
    chooser = Player.B if isinstance(f, ChAnd) else Player.T
    if first.by is not chooser:
        return False
    i = _component_of_first(first.move, len(f.parts))
    if i is None:
        return False
    return _structurally_legal(f.parts[i - 1], run[1:])


def structural_offender(f: Formula, run: Run) -> tuple[Player, int] | None:
    """Label and index of the move ending the shortest illegal prefix."""
    for k in range(1, len(run) + 1):
        if not _structurally_legal(f, run[:k]):
            return (run[k - 1].by, k - 1)
    return None


def _wn_legal(f: Formula, run: Run, v: dict[str, bool]) -> Player:
    if isinstance(f, Atom):
        if f.name not in v:
            raise FormulaError(f"no value for atom {f.name!r}")
        return Player.T if v[f.name] else Player.B
    if isinstance(f, Top):
        return Player.T
    if isinstance(f, Bot):
        return Player.B
    if isinstance(f, Neg):
        return _wn_legal(f.body, reverse_labels(run), v).adversary
    if isinstance(f, Imp):
        return _wn_legal(ParOr((Neg(f.left), f.right)), run, v)
    if isinstance(f, ParAnd):
        won_all = all(
            _wn_legal(p, run_projection(run, i), v) is Player.T
            for i, p in enumerate(f.parts, 1)
        )
        return Player.T if won_all else Player.B
    if isinstance(f, ParOr):
        won_any = any(
            _wn_legal(p, run_projection(run, i), v) is Player.T
            for i, p in enumerate(f.parts, 1)
        )
        return Player.T if won_any else Player.B
    if isinstance(f, ChAnd):
        if not run:
            return Player.T  # the environment never picked
        i = int(run[0].move)
        return _wn_legal(f.parts[i - 1], run[1:], v)
    if isinstance(f, ChOr):
        if not run:
            return Player.B  # the machine never picked
        i = int(run[0].move)
        return _wn_legal(f.parts[i - 1], run[1:], v)
    raise FormulaError(f"not a formula: {f!r}")


def wn_generic(f: Formula, run: Run, v: dict[str, bool]) -> Player:
    """Winner by the defining clauses of each connective; illegal runs go
    against whoever moved illegally first."""
    bad = structural_offender(f, run)
    if bad is not None:
        return bad[0].adversary
    return _wn_legal(f, run, v)


# --- delays, static checks, game equality -------------------------------------


def is_delay(delta: Run, gamma: Run, player: Player) -> bool:
    """True when `delta` plays the same moves as `gamma` but `player` may
    have acted later relative to the adversary."""
    for p in Player:
        if [lm.move for lm in delta if lm.by is p] != [
            lm.move for lm in gamma if lm.by is p
        ]:
            return False
    own_g = [k for k, lm in enumerate(gamma) if lm.by is player]
    adv_g = [k for k, lm in enumerate(gamma) if lm.by is not player]
    own_d = [k for k, lm in enumerate(delta) if lm.by is player]
    adv_d = [k for k, lm in enumerate(delta) if lm.by is not player]
    for n, g_pos in enumerate(own_g):
        for k, a_pos in enumerate(adv_g):
            if g_pos > a_pos and not own_d[n] > adv_d[k]:
                return False
    return True


def enumerate_legal_runs(f: Formula) -> list[Run]:
    """All legal runs (finite: each move removes a choice node), prefix-closed,
    in a deterministic order."""
    out: list[Run] = []

    def walk(g: Formula, run: Run) -> None:
        out.append(run)
        for mv, (spec, i) in sorted(choice_moves(g).items()):
            owner = Player.T if spec.top_owned else Player.B
            walk(substitute_at(g, spec, i), run + (LabeledMove(owner, mv),))

    walk(f, ())
    return out


def check_static(f: Formula, v: dict[str, bool], bound: int = 6) -> bool:
    """Exhaustively verifies winner preservation under delays: over every
    legal run and every reordering of it (legal or not), whenever the winner's
    moves only shift later the winner must not change."""
    if choice_component_count(f) > bound:
        raise BoundExceeded(
            f"formula has {choice_component_count(f)} choice components, bound {bound}"
        )
    universe: set[Run] = set()
    for run in enumerate_legal_runs(f):
        universe.update(permutations(run))
    for gamma in universe:
        w = wn_generic(f, gamma, v)
        for delta in set(permutations(gamma)):
            if delta == gamma:
                continue
            if is_delay(delta, gamma, w) and wn_generic(f, delta, v) is not w:
                return False
    return True


def game_equal(
    f: Formula,
    g: Formula,
    valuations: list[dict[str, bool]] | None = None,
    bound: int = 6,
) -> bool:
    """Same legal runs and same winner on every enumerated run -- legal ones
    plus one-move illegal extensions -- under every valuation given (default:
    all valuations of the combined atoms)."""
    for x in (f, g):
        if choice_component_count(x) > bound:
            raise BoundExceeded(
                f"formula has {choice_component_count(x)} choice components, bound {bound}"
            )
    runs_f = set(enumerate_legal_runs(f))
    runs_g = set(enumerate_legal_runs(g))
    if runs_f != runs_g:
        return False
    if valuations is None:
        names = sorted(set(atoms(f)) | set(atoms(g)))
        valuations = list(all_valuations(names))
    moves_seen = {lm.move for run in runs_f for lm in run} | {SPADE}
    probes: set[Run] = set()
    for run in runs_f:
        for player in Player:
            for mv in moves_seen:
                ext = run + (LabeledMove(player, mv),)
                if ext not in runs_f:
                    probes.add(ext)
    for run in list(runs_f) + sorted(probes, key=run_to_text):
        for v in valuations:
            if wn_generic(f, run, v) is not wn_generic(g, run, v):
                return False
    return True
