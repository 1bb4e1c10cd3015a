"""Command-line surface.

Exit codes: 0 = success / provable / all checks passed, 1 = negative result
(unprovable, refutation missing, failed check), 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .formulas import FormulaError, ParseError, parse, to_text
from .games import (
    Const,
    Player,
    interpretation_from_json,
    legal_moves,
    parse_run,
    run_status,
    winner,
)
from .proofs import Proof, ProofError, System, check_proof, prove
from .strategies import (
    DEFAULT_STEP_CAP,
    RandomAgent,
    ScriptedAgent,
    diagonal_interpretation,
    verify_counter,
    verify_winning,
)
from .server import serve_forever


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _parse_itp(args) -> dict:
    """Builds an interpretation from --itp shorthand and/or --itp-file JSON."""
    itp = {}
    if getattr(args, "itp_file", None):
        with open(args.itp_file) as fh:
            itp.update(interpretation_from_json(json.load(fh)))
    if getattr(args, "itp", None):
        for piece in args.itp.split(","):
            piece = piece.strip()
            if not piece:
                continue
            name, _, value = piece.partition("=")
            if value not in ("0", "1"):
                raise FormulaError(f"bad valuation entry {piece!r}, want atom=0|1")
            itp[name.strip()] = Const(value == "1")
    return itp


def _parse_input(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


# --- commands -----------------------------------------------------------------


def cmd_prove(args) -> int:
    f = parse(args.formula)
    proof = prove(f, System.CL1)
    if proof is not None:
        print("provable")
        if args.proof:
            print(json.dumps(proof.to_json(), indent=2))
        return 0
    print("unprovable")
    if args.refute:
        refutation = prove(f, System.CL1P)
        print(json.dumps(refutation.to_json(), indent=2))
    return 1


def cmd_refute(args) -> int:
    f = parse(args.formula)
    proof = prove(f, System.CL1P)
    if proof is None:
        print("not refutable (provable)")
        return 1
    print(json.dumps(proof.to_json(), indent=2))
    return 0


def cmd_check(args) -> int:
    if args.proof_file == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.proof_file) as fh:
            data = json.load(fh)
    try:
        check_proof(Proof.from_json(data))
    except ProofError as exc:
        print(f"bad proof: {exc}")
        return 1
    print("ok")
    return 0


def cmd_eval(args) -> int:
    f = parse(args.formula)
    run = parse_run(args.run or "")
    itp = _parse_itp(args)
    e = _parse_input(args.input)
    status = run_status(f, run)
    if not status.is_legal:
        culprit = status.offender
        print(
            f"{culprit.adversary.value} wins: "
            f"{culprit.value}-illegal at move {status.index}"
        )
        return 0
    won_by = winner(f, run, itp, e)
    print(f"{won_by.value}, limit {to_text(status.limit)}")
    return 0


def cmd_legal_moves(args) -> int:
    f = parse(args.formula)
    for player in (Player.T, Player.B):
        moves = " ".join(sorted(legal_moves(f, player)))
        print(f"{player.value}: {moves}")
    return 0


def cmd_verify(args) -> int:
    f = parse(args.formula)
    proof = prove(f, System.CL1)
    if proof is not None:
        report = verify_winning(f, proof)
        label = "provable"
    else:
        report = verify_counter(f, prove(f, System.CL1P))
        label = "unprovable"
    names = ", ".join(to_text(l) for l in report.limits)
    tone = "all stable" if label == "provable" else "all instable"
    print(f"{label}; limits {names}; {tone}")
    if not report.ok:
        for failure in report.failures:
            print(f"FAIL {failure}")
        return 1
    legal_branches = sum(1 for b in report.branches if b.kind == "limit")
    print(f"{legal_branches} limit branches, {len(report.branches)} total; ok")
    return 0


def cmd_diagonal(args) -> int:
    f = parse(args.formula)
    proof = prove(f, System.CL1P)
    if proof is None:
        print("formula is provable; no counter-strategy to diagonalize over")
        return 2
    policies = []
    if args.policies:
        with open(args.policies) as fh:
            for entry in json.load(fh):
                policies.append(
                    ScriptedAgent(
                        Player.T, entry["moves"], bool(entry.get("repeat", False))
                    )
                )
    for k in range(args.random):
        policies.append(RandomAgent(Player.T, f, seed=args.seed + k))
    if not policies:
        print("no policies given; use --policies FILE and/or --random N")
        return 2
    report = diagonal_interpretation(policies, proof, step_cap=args.step_cap)
    print(json.dumps(report.to_json(), indent=2))
    if report.capped:
        print(
            f"note: policies {list(report.capped)} never went quiet "
            f"(step cap {args.step_cap})",
            file=sys.stderr,
        )
    return 0 if report.ok else 1


def cmd_play(args) -> int:
    from .server import SessionStore

    store = SessionStore()
    created = store.create(
        {
            "formula": args.formula,
            "human_role": args.role,
            "strategy": not args.no_strategy,
        }
    )
    sid = created["id"]
    state = created["state"]
    print(f"you play {args.role}; machine strategy: {state['strategy']}")
    while True:
        print(f"\nboard: {state['formula_now']}")
        if state["run"]:
            print("run so far:", ",".join(f"{m['by']}{m['move']}" for m in state["run"]))
        if state["finished"]:
            break
        options = state["legal_human_moves"]
        for k, option in enumerate(options):
            print(f"  [{k}] {option['move']}  ->  {option['result']}")
        choice = input("pick (or q): ").strip()
        if choice == "q":
            return 0
        try:
            move = options[int(choice)]["move"]
        except (ValueError, IndexError):
            print("not an option")
            continue
        state = store.move(sid, {"move": move})
    if state["needs_valuation"]:
        raw = input("valuation (atom=0|1, comma separated): ")
        valuation = {}
        for piece in raw.split(","):
            name, _, value = piece.strip().partition("=")
            valuation[name] = value == "1"
        state = store.set_valuation(sid, valuation)
    print(f"winner: {state['winner']}")
    return 0


def cmd_serve(args) -> int:
    config = _load_config(args.config)
    port = args.port if args.port is not None else config.get("port", 8000)
    step_cap = config.get("step_cap", DEFAULT_STEP_CAP)
    serve_forever(port, step_cap)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clgames",
        description="Propositional computability logic workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="decide provability")
    p.add_argument("formula")
    p.add_argument("--proof", action="store_true", help="emit the proof as JSON")
    p.add_argument(
        "--refute",
        action="store_true",
        help="when unprovable, emit the mirror-system proof as JSON",
    )
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("refute", help="prove in the mirror system")
    p.add_argument("formula")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("check", help="check a proof JSON file ('-' for stdin)")
    p.add_argument("proof_file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a run of a formula game")
    p.add_argument("formula")
    p.add_argument("--run", default="", help="labeled moves, e.g. B1.1,T2.1.2")
    p.add_argument("--itp", default="", help="valuation shorthand, e.g. a=1,b=0")
    p.add_argument("--itp-file", default=None, help="interpretation JSON file")
    p.add_argument("--input", default="", help="input terms, e.g. 3,0,1")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("legal-moves", help="list both players' choice moves")
    p.add_argument("formula")
    p.set_defaults(func=cmd_legal_moves)

    p = sub.add_parser(
        "verify", help="extract the strategy and verify it exhaustively"
    )
    p.add_argument("formula")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagonal", help="diagonal counter-interpretation")
    p.add_argument("formula")
    p.add_argument("--policies", default=None, help="scripted policy JSON file")
    p.add_argument("--random", type=int, default=0, help="add N random policies")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("play", help="play in the terminal")
    p.add_argument("formula")
    p.add_argument("--role", choices=["T", "B"], default="B")
    p.add_argument("--no-strategy", action="store_true")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the play session API")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON config file")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormulaError, ProofError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
