"""Workbench for propositional computability logic: decide provability with
checkable proofs, play formulas as games, extract and verify strategies."""

from .formulas import (
    Atom,
    BOT,
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
    ParseError,
    TOP,
    Top,
    atoms,
    classical_truth,
    elementarize,
    is_elementary,
    is_stable,
    parse,
    substitute_at,
    surface_choice_occurrences,
    to_text,
)
from .games import (
    BoundExceeded,
    Const,
    FirstTermTable,
    IllegalMoveError,
    Interpretation,
    LabeledMove,
    Player,
    Run,
    RunStatus,
    SPADE,
    apply_move,
    check_static,
    enumerate_legal_runs,
    game_equal,
    is_delay,
    legal_moves,
    parse_run,
    reverse_labels,
    run_projection,
    run_status,
    run_to_text,
    valuation_at,
    winner,
    wn_generic,
)
from .proofs import (
    Proof,
    ProofError,
    RuleA,
    RuleB,
    Step,
    System,
    check_proof,
    duality_check,
    prove,
    rule_a_premises,
    rule_b_options,
)
from .strategies import (
    Agent,
    DiagonalReport,
    DONE,
    MatchRecord,
    PASS,
    ProofPolicy,
    RandomAgent,
    ScriptedAgent,
    VerificationReport,
    diagonal_interpretation,
    env_policy,
    falsifying_valuation,
    machine_policy,
    run_match,
    verify_counter,
    verify_winning,
)

__all__ = [
    "Atom", "BOT", "Bot", "ChAnd", "ChOr", "ChoiceSpec", "Formula",
    "FormulaError", "Imp", "Neg", "ParAnd", "ParOr", "ParseError", "TOP",
    "Top", "atoms", "classical_truth", "elementarize", "is_elementary",
    "is_stable", "parse", "substitute_at", "surface_choice_occurrences",
    "to_text",
    "BoundExceeded", "Const", "FirstTermTable", "IllegalMoveError",
    "Interpretation", "LabeledMove", "Player", "Run", "RunStatus", "SPADE",
    "apply_move", "check_static", "enumerate_legal_runs", "game_equal",
    "is_delay", "legal_moves", "parse_run", "reverse_labels",
    "run_projection", "run_status", "run_to_text", "valuation_at", "winner",
    "wn_generic",
    "Proof", "ProofError", "RuleA", "RuleB", "Step", "System", "check_proof",
    "duality_check", "prove", "rule_a_premises", "rule_b_options",
    "Agent", "DiagonalReport", "DONE", "MatchRecord", "PASS", "ProofPolicy",
    "RandomAgent", "ScriptedAgent", "VerificationReport",
    "diagonal_interpretation", "env_policy", "falsifying_valuation",
    "machine_policy", "run_match", "verify_counter", "verify_winning",
]
