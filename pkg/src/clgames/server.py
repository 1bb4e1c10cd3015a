"""HTTP session API for live play against extracted strategies.

Endpoints:
    POST   /session              {formula, human_role, itp?, strategy?}
    GET    /session/{id}
    POST   /session/{id}/move    {move}
    POST   /session/{id}/valuation   {atom: bool, ...}
    DELETE /session/{id}

The machine side plays the strategy extracted from whichever system proves
the formula, whenever that side is the machine's; otherwise the session is
free play and the machine stays silent.  Nothing is mutated on a 4xx.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .formulas import (
    Formula,
    FormulaError,
    Neg,
    atoms,
    elementarize,
    parse,
    substitute_at,
    tautology,
    to_text,
)
from .games import (
    Const,
    Interpretation,
    LabeledMove,
    Player,
    Run,
    choice_moves,
    interpretation_from_json,
    run_status,
    run_to_json,
    winner,
)
from .proofs import System, prove
from .strategies import Agent, env_policy, machine_policy

MACHINE_MOVE_CAP = 100


class ApiError(Exception):
    def __init__(self, status: int, payload: dict):
        super().__init__(payload.get("error", "error"))
        self.status = status
        self.payload = payload


@dataclass
class Session:
    id: str
    root: Formula
    human: Player
    machine_agent: Optional[Agent]
    itp: Optional[Interpretation]
    run: Run = ()
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def machine(self) -> Player:
        return self.human.adversary


class SessionStore:
    def __init__(self, step_cap: int = MACHINE_MOVE_CAP):
        self.step_cap = step_cap
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._serial = 0

    # -- session operations ----------------------------------------------

    def create(self, body: dict) -> dict:
        try:
            root = parse(body["formula"])
        except KeyError:
            raise ApiError(400, {"error": "missing formula"})
        except FormulaError as exc:
            raise ApiError(400, {"error": f"bad formula: {exc}"})
        try:
            human = Player(body.get("human_role", "B"))
        except ValueError:
            raise ApiError(400, {"error": "human_role must be 'T' or 'B'"})
        itp = None
        if body.get("itp"):
            try:
                itp = interpretation_from_json(body["itp"])
            except (FormulaError, AttributeError, TypeError) as exc:
                raise ApiError(400, {"error": f"bad interpretation: {exc}"})
        agent = None
        if body.get("strategy", True):
            try:
                agent = self._strategy_for(root, human.adversary)
            except FormulaError as exc:  # e.g. past the tautology atom cap
                raise ApiError(400, {"error": f"cannot extract a strategy: {exc}"})
        with self._lock:
            self._serial += 1
            sid = f"s{self._serial}"
            session = Session(sid, root, human, agent, itp)
            self._sessions[sid] = session
        with session.lock:
            self._let_machine_play(session)
            return {"id": sid, "state": self._state(session)}

    @staticmethod
    def _strategy_for(root: Formula, machine_side: Player) -> Optional[Agent]:
        if machine_side is Player.T:
            proof = prove(root, System.CL1)
            return machine_policy(proof) if proof else None
        proof = prove(root, System.CL1P)
        return env_policy(proof) if proof else None

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, {"error": f"no session {sid}"})
        return session

    def state(self, sid: str) -> dict:
        session = self.get(sid)
        with session.lock:
            return self._state(session)

    def move(self, sid: str, body: dict) -> dict:
        session = self.get(sid)
        move = body.get("move")
        with session.lock:
            now = run_status(session.root, session.run).limit
            allowed = self._human_moves(session, now)
            if move not in {m["move"] for m in allowed}:
                raise ApiError(
                    400,
                    {
                        "error": f"illegal move {move!r}",
                        "legal": sorted(m["move"] for m in allowed),
                    },
                )
            session.run = session.run + (LabeledMove(session.human, move),)
            self._let_machine_play(session)
            return self._state(session)

    def set_valuation(self, sid: str, body: dict) -> dict:
        session = self.get(sid)
        if not isinstance(body, dict) or not all(
            isinstance(v, bool) for v in body.values()
        ):
            raise ApiError(400, {"error": "valuation must map atoms to booleans"})
        with session.lock:
            session.itp = {name: Const(v) for name, v in body.items()}
            return self._state(session)

    def delete(self, sid: str) -> dict:
        with self._lock:
            if sid not in self._sessions:
                raise ApiError(404, {"error": f"no session {sid}"})
            del self._sessions[sid]
        return {"deleted": sid}

    # -- internals ----------------------------------------------------------

    def _let_machine_play(self, session: Session) -> None:
        agent = session.machine_agent
        if agent is None:
            return
        for _ in range(self.step_cap):
            action = agent.act(session.run)
            if not isinstance(action, str):
                break
            session.run = session.run + (LabeledMove(session.machine, action),)

    def _human_moves(self, session: Session, now: Formula) -> list[dict]:
        want_top = session.human is Player.T
        out = []
        for mv, (spec, i) in sorted(choice_moves(now).items()):
            if spec.top_owned != want_top:
                continue
            out.append(
                {
                    "move": mv,
                    "spec": spec.string_form,
                    "component": i,
                    "result": to_text(substitute_at(now, spec, i)),
                }
            )
        return out

    def _state(self, session: Session) -> dict:
        now = run_status(session.root, session.run).limit
        moves = self._human_moves(session, now)
        finished = not moves
        state = {
            "formula": to_text(session.root),
            "formula_now": to_text(now),
            "run": run_to_json(session.run),
            "human_role": session.human.value,
            "legal_human_moves": moves,
            "finished": finished,
            "strategy": session.machine_agent is not None,
            "winner": None,
            "needs_valuation": False,
        }
        if finished:
            state.update(self._outcome(session, now))
        return state

    def _outcome(self, session: Session, now: Formula) -> dict:
        if session.itp is not None:
            try:
                won_by = winner(session.root, session.run, session.itp, ())
            except FormulaError as exc:
                return {"winner": None, "needs_valuation": True, "note": str(exc)}
            return {"winner": won_by.value, "needs_valuation": False}
        core = elementarize(now)
        if tautology(core):
            return {"winner": Player.T.value, "needs_valuation": False}
        if tautology(Neg(core)):
            return {"winner": Player.B.value, "needs_valuation": False}
        return {"winner": None, "needs_valuation": True, "atoms": list(atoms(core))}


_SESSION_RE = re.compile(r"^/session/([^/]+)$")
_MOVE_RE = re.compile(r"^/session/([^/]+)/move$")
_VALUATION_RE = re.compile(r"^/session/([^/]+)/valuation$")


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if length == 0:
                return {}
            try:
                return json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                raise ApiError(400, {"error": "request body is not JSON"})

        def _send(self, status: int, payload: dict) -> None:
            data = json.dumps(payload).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

        def _dispatch(self, method: str) -> None:
            try:
                payload = self._route(method)
                self._send(200, payload)
            except ApiError as exc:
                self._send(exc.status, exc.payload)
            except Exception as exc:  # don't kill the server thread
                self._send(500, {"error": f"internal error: {exc}"})

        def _route(self, method: str) -> dict:
            path = self.path.split("?", 1)[0]
            if method == "POST" and path == "/session":
                return store.create(self._body())
            m = _MOVE_RE.match(path)
            if method == "POST" and m:
                return store.move(m.group(1), self._body())
            m = _VALUATION_RE.match(path)
            if method == "POST" and m:
                return store.set_valuation(m.group(1), self._body())
            m = _SESSION_RE.match(path)
            if m and method == "GET":
                return store.state(m.group(1))
            if m and method == "DELETE":
                return store.delete(m.group(1))
            raise ApiError(404, {"error": f"no route {method} {path}"})

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

        def do_DELETE(self):
            self._dispatch("DELETE")

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

    return Handler


def make_server(port: int = 0, step_cap: int = MACHINE_MOVE_CAP) -> ThreadingHTTPServer:
    store = SessionStore(step_cap=step_cap)
    return ThreadingHTTPServer(("127.0.0.1", port), make_handler(store))


def serve_forever(port: int, step_cap: int = MACHINE_MOVE_CAP) -> None:
    httpd = make_server(port, step_cap)
    host, bound = httpd.server_address[:2]
    print(f"serving on http://{host}:{bound}")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
