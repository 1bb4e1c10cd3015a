"""Play policies extracted from proofs, match scheduling, exhaustive
strategy verification, and the diagonal counter-interpretation.

A proof is a playbook.  The extracted policy keeps one proof formula as its
current position: replacement-justified formulas tell it which move to make,
branching-justified formulas tell it to wait and follow the opponent into
the cited premise.  The policy never sees an interpretation or an input --
that blindness is the point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .formulas import (
    Formula,
    FormulaError,
    all_valuations,
    atoms,
    classical_truth,
    elementarize,
    is_stable,
    substitute_at,
    surface_choice_occurrences,
    to_text,
)
from .games import (
    SPADE,
    FirstTermTable,
    Interpretation,
    LabeledMove,
    Player,
    Run,
    canon_input,
    choice_moves,
    const_interpretation,
    interpretation_to_json,
    legal_moves,
    run_status,
    run_to_json,
    run_to_text,
    winner,
)
from .proofs import (
    Proof,
    RuleB,
    System,
    check_proof,
    rule_a_covers,
)

EXPLICIT_WINNER_ATOM_CAP = 4
DEFAULT_STEP_CAP = 200


class _Signal:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


PASS = _Signal("PASS")
DONE = _Signal("DONE")

Action = "str | _Signal"


class Agent:
    """A player: shown the run so far, answers a move string, PASS (nothing
    this round) or DONE (nothing this round nor later, unless the opponent
    moves first)."""

    role: Player

    def act(self, run: Run):
        raise NotImplementedError


class ProofPolicy(Agent):
    """The strategy a proof encodes, for the proof's own side.

    A CL1 proof drives the machine; a CL1p proof drives the environment.
    An opponent move that matches no covered occurrence of the current
    formula settles the game in our favor and the policy goes quiet.
    """

    def __init__(self, proof: Proof):
        check_proof(proof)
        self.proof = proof
        self.role = Player.T if proof.system is System.CL1 else Player.B
        self._step_of = {s.formula: s for s in proof.steps}
        self.current: Formula = proof.goal
        self.opponent_illegal = False
        self._cursor = 0

    @property
    def phase(self) -> str:
        if self.opponent_illegal:
            return "won-by-opponent-illegality"
        if isinstance(self._step_of[self.current].rule, RuleB):
            return "moving"
        return "waiting"

    def _follow_map(self) -> dict[str, Formula]:
        """Opponent moves the playbook recognizes from the current formula,
        mapped to the premise each one selects."""
        out: dict[str, Formula] = {}
        for spec in surface_choice_occurrences(self.current):
            if not rule_a_covers(spec, self.proof.system):
                continue
            for i in range(1, spec.arity + 1):
                out[spec.move(i)] = substitute_at(self.current, spec, i)
        return out

    def _ingest(self, run: Run) -> None:
        new = run[self._cursor:]
        self._cursor = len(run)
        for lm in new:
            if lm.by is self.role or self.opponent_illegal:
                continue
            if isinstance(self._step_of[self.current].rule, RuleB):
                raise RuntimeError(
                    "opponent move arrived while the policy had a pending move"
                )
            follow = self._follow_map()
            if lm.move in follow:
                self.current = follow[lm.move]
            else:
                self.opponent_illegal = True

    def act(self, run: Run):
        self._ingest(run)
        if self.opponent_illegal:
            return DONE
        step = self._step_of[self.current]
        if isinstance(step.rule, RuleB):
            move = step.rule.spec.move(step.rule.component)
            self.current = self.proof.steps[step.rule.premise].formula
            return move
        return DONE


def machine_policy(proof: Proof) -> ProofPolicy:
    if proof.system is not System.CL1:
        raise ValueError("machine policies come from CL1 proofs")
    return ProofPolicy(proof)


def env_policy(proof: Proof) -> ProofPolicy:
    if proof.system is not System.CL1P:
        raise ValueError("environment policies come from CL1p proofs")
    return ProofPolicy(proof)


class ScriptedAgent(Agent):
    """Plays a fixed move list, then goes quiet; `repeat` loops it forever."""

    def __init__(self, role: Player, moves: Sequence[str], repeat: bool = False):
        self.role = role
        self.moves = list(moves)
        self.repeat = repeat
        self._next = 0

    def act(self, run: Run):
        if not self.moves:
            return DONE
        if self._next >= len(self.moves):
            if not self.repeat:
                return DONE
            self._next = 0
        move = self.moves[self._next]
        self._next += 1
        return move


class RandomAgent(Agent):
    """Plays random legal moves for its role on a fixed game, with a chance
    of going quiet for good at each turn.  Deterministic per seed."""

    def __init__(
        self,
        role: Player,
        game: Formula,
        seed: int = 0,
        stop_chance: float = 0.25,
    ):
        self.role = role
        self.game = game
        self.stop_chance = stop_chance
        self._rng = random.Random(seed)
        self._stopped = False

    def act(self, run: Run):
        if self._stopped:
            return DONE
        status = run_status(self.game, run)
        if not status.is_legal:
            self._stopped = True
            return DONE
        options = sorted(legal_moves(status.limit, self.role))
        if not options or self._rng.random() < self.stop_chance:
            self._stopped = True
            return DONE
        return self._rng.choice(options)


# --- match scheduling ---------------------------------------------------------


@dataclass
class MatchRecord:
    game: Formula
    run: Run
    limit: Optional[Formula]
    winner: Optional[Player]
    steps: int
    quiesced: bool
    transcript: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "run": run_to_json(self.run),
            "limit": None if self.limit is None else to_text(self.limit),
            "winner": None if self.winner is None else self.winner.value,
            "steps": self.steps,
        }


def run_match(
    game: Formula,
    machine: Agent,
    env: Agent,
    pacer: Player = Player.T,
    itp: Interpretation | None = None,
    e: Sequence[int] = (),
    step_cap: int = DEFAULT_STEP_CAP,
) -> MatchRecord:
    """One deterministic match.  Each round the pacer acts; when it has no
    move it thereby grants permission, and the other agent may answer with at
    most one move.  A round without any move ends the match; `step_cap`
    guards against agents that never go quiet (reported, not fatal).
    """
    if step_cap <= 0:
        raise ValueError("step_cap must be positive")
    if machine.role is not Player.T or env.role is not Player.B:
        raise ValueError("machine plays T, env plays B")
    agents = {Player.T: machine, Player.B: env}
    lead, follow = agents[pacer], agents[pacer.adversary]
    run: Run = ()
    transcript: list[str] = []
    quiesced = False
    steps = 0
    while steps < step_cap:
        steps += 1
        action = lead.act(run)
        if isinstance(action, str):
            run = run + (LabeledMove(pacer, action),)
            transcript.append(f"{pacer.value} moves {action}")
            continue
        transcript.append(f"{pacer.value} grants permission")
        reply = follow.act(run)
        if isinstance(reply, str):
            run = run + (LabeledMove(pacer.adversary, reply),)
            transcript.append(f"{pacer.adversary.value} moves {reply}")
            continue
        quiesced = True
        break
    status = run_status(game, run)
    outcome = winner(game, run, itp, e) if itp is not None else None
    return MatchRecord(
        game,
        run,
        status.limit if status.is_legal else None,
        outcome,
        steps,
        quiesced,
        tuple(transcript),
    )


# --- exhaustive verification ----------------------------------------------------


@dataclass(frozen=True)
class Branch:
    run: Run
    limit: Optional[Formula]  # None on the illegal-probe branches
    kind: str  # "limit" or "opponent-illegal"


@dataclass
class VerificationReport:
    game: Formula
    system: System
    branches: tuple[Branch, ...]
    limits: tuple[Formula, ...]
    falsifiers: dict[Formula, dict[str, bool]]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def falsifying_valuation(limit: Formula) -> dict[str, bool]:
    """First valuation (atoms alphabetical, false before true) making the
    elementarization false; an error on stable formulas."""
    core = elementarize(limit)
    for v in all_valuations(atoms(limit)):
        if not classical_truth(core, v):
            return v
    raise FormulaError(f"{to_text(limit)} is stable; nothing falsifies it")


def _explore(f: Formula, proof: Proof) -> VerificationReport:
    """Walks every opponent behavior against the proof's policy: at each
    waiting state the opponent may stop, play any covered move, or play one
    representative illegal move."""
    check_proof(proof)
    if proof.goal != f:
        raise ValueError("the proof does not prove this formula")
    own = Player.T if proof.system is System.CL1 else Player.B
    opponent = own.adversary
    counter = proof.system is System.CL1P
    step_of = {s.formula: s for s in proof.steps}

    names = atoms(f)
    value_rows = (
        list(all_valuations(names))
        if len(names) <= EXPLICIT_WINNER_ATOM_CAP
        else []
    )

    failures: list[str] = []
    branches: list[Branch] = []
    limits: list[Formula] = []
    falsifiers: dict[Formula, dict[str, bool]] = {}

    def check_position(theta: Run, current: Formula, where: str) -> None:
        status = run_status(f, theta)
        if not status.is_legal or status.limit != current:
            failures.append(
                f"{where}: run {run_to_text(theta) or '<empty>'} does not "
                f"rebuild the policy formula {to_text(current)}"
            )

    def expect_winner(theta: Run, who: Player, why: str) -> None:
        for v in value_rows:
            got = winner(f, theta, const_interpretation(v), ())
            if got is not who:
                failures.append(
                    f"{why}: run {run_to_text(theta) or '<empty>'} won by "
                    f"{got.value} under {v}"
                )

    def explore(current: Formula, theta: Run) -> None:
        check_position(theta, current, "entry")
        step = step_of.get(current)
        if step is None:
            failures.append(f"{to_text(current)} is not a proof formula")
            return
        while isinstance(step.rule, RuleB):
            move = step.rule.spec.move(step.rule.component)
            theta = theta + (LabeledMove(own, move),)
            current = proof.steps[step.rule.premise].formula
            check_position(theta, current, "after own move")
            step = step_of[current]

        # the opponent stops here: `current` is the limit formula
        if counter:
            if is_stable(current):
                failures.append(f"limit {to_text(current)} is stable")
            else:
                fv = falsifiers.setdefault(
                    current, falsifying_valuation(current)
                )
                got = winner(f, theta, const_interpretation(fv), ())
                if got is not Player.B:
                    failures.append(
                        f"limit {to_text(current)}: machine survived the "
                        f"falsifying valuation {fv}"
                    )
        else:
            if not is_stable(current):
                failures.append(f"limit {to_text(current)} is not stable")
            expect_winner(theta, Player.T, "stable limit")
        if current not in limits:
            limits.append(current)
        branches.append(Branch(theta, current, "limit"))

        # every covered opponent move
        for mv, (spec, i) in sorted(choice_moves(current).items()):
            if rule_a_covers(spec, proof.system):
                explore(
                    substitute_at(current, spec, i),
                    theta + (LabeledMove(opponent, mv),),
                )

        # one representative illegal opponent move
        probe = theta + (LabeledMove(opponent, SPADE),)
        status = run_status(f, probe)
        if status.is_legal or status.offender is not opponent or status.index != len(theta):
            failures.append(
                f"probe {run_to_text(probe)} not convicted as an {opponent.value} offense"
            )
        if counter:
            got = winner(f, probe, const_interpretation(dict.fromkeys(names, False)), ())
            if got is not Player.B:
                failures.append(f"probe {run_to_text(probe)} not won by B")
        else:
            expect_winner(probe, Player.T, "opponent illegality")
        branches.append(Branch(probe, None, "opponent-illegal"))

    explore(f, ())
    return VerificationReport(
        f,
        proof.system,
        tuple(branches),
        tuple(limits),
        falsifiers,
        tuple(failures),
    )


def verify_winning(f: Formula, proof: Proof) -> VerificationReport:
    """Exhausts the environment's behaviors against the machine's policy:
    every branch must end in a stable limit or environment illegality, the
    run must rebuild the policy formula at every node, and (for small atom
    counts) the machine must win under every valuation."""
    if proof.system is not System.CL1:
        raise ValueError("verify_winning wants a CL1 proof")
    return _explore(f, proof)


def verify_counter(f: Formula, proof: Proof) -> VerificationReport:
    """Exhausts the machine's behaviors against the environment's policy:
    every branch must end in an instable limit or machine illegality, and
    each reachable limit must come with a falsifying valuation that defeats
    the machine on that branch."""
    if proof.system is not System.CL1P:
        raise ValueError("verify_counter wants a CL1p proof")
    return _explore(f, proof)


# --- the diagonal construction ---------------------------------------------------


@dataclass
class DiagonalReport:
    game: Formula
    limits: dict[int, Formula]
    runs: dict[int, Run]
    instables: tuple[Formula, ...]
    models: dict[Formula, dict[str, bool]]
    interpretation: Interpretation
    verdicts: dict[int, Player]
    capped: tuple[int, ...]  # policies that never went quiet (reported, not fatal)
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {
            "limits": {str(c): to_text(l) for c, l in self.limits.items()},
            "interpretation": interpretation_to_json(self.interpretation),
            "verdicts": {str(c): w.value for c, w in self.verdicts.items()},
        }


def diagonal_interpretation(
    policies: Sequence[Agent],
    proof: Proof,
    step_cap: int = DEFAULT_STEP_CAP,
) -> DiagonalReport:
    """Builds one interpretation that defeats every policy in the family at
    its own index.

    Policy c plays the machine against the proof's environment policy; the
    limit formula of that match gets a falsifying model, and each atom is
    interpreted as a first-input-term table that answers c the way the model
    of c's own limit does.  Under this interpretation the limit's
    elementarization is false exactly where policy c lands, so c loses at
    input index c.
    """
    if proof.system is not System.CL1P:
        raise ValueError("the diagonal construction wants a CL1p proof")
    check_proof(proof)
    game = proof.goal
    instables = tuple(
        step.formula for step in proof.steps if not is_stable(step.formula)
    )
    models = {g: falsifying_valuation(g) for g in instables}

    problems: list[str] = []
    capped: list[int] = []
    limits: dict[int, Formula] = {}
    runs: dict[int, Run] = {}
    for c, agent in enumerate(policies):
        if agent.role is not Player.T:
            raise ValueError(f"policy {c} must play T")
        env = env_policy(proof)
        record = run_match(
            game, agent, env, pacer=Player.B, itp=None, step_cap=step_cap
        )
        if not record.quiesced:
            capped.append(c)
        if env.current not in models:
            problems.append(
                f"policy {c} left the play at {to_text(env.current)}, "
                "which is not an instable proof formula"
            )
            continue
        limits[c] = env.current
        runs[c] = record.run

    itp: Interpretation = {}
    for name in atoms(game):
        true_at = {
            c: True
            for c, limit in limits.items()
            if models[limit].get(name, False)
        }
        itp[name] = FirstTermTable(true_at, default=False)

    verdicts: dict[int, Player] = {}
    for c in sorted(limits):
        got = winner(game, runs[c], itp, canon_input((c,)))
        verdicts[c] = got
        if got is not Player.B:
            problems.append(
                f"policy {c} won at its own index; the construction is broken"
            )

    return DiagonalReport(
        game,
        limits,
        runs,
        instables,
        models,
        itp,
        verdicts,
        tuple(capped),
        tuple(problems),
    )
