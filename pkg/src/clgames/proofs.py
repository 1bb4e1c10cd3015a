"""Decision procedures for the two dual rule systems, with checkable proofs.

CL1 derives a formula either by rule A -- the formula is stable and every
way the environment could resolve one of its choice occurrences is derivable
-- or by rule B, resolving one machine-owned occurrence.  CL1p is the
mirror image: rule A needs instability and closes over machine-owned
occurrences, rule B resolves environment-owned ones.  Exactly one of the two
systems proves any given formula, which `duality_check` asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .formulas import (
    ChoiceSpec,
    Formula,
    is_stable,
    parse,
    substitute_at,
    surface_choice_occurrences,
    to_text,
)


class ProofError(ValueError):
    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class System(Enum):
    CL1 = "CL1"
    CL1P = "CL1p"


def side_condition(f: Formula, system: System) -> bool:
    """Rule A's gate: stability for CL1, instability for CL1p."""
    if system is System.CL1:
        return is_stable(f)
    return not is_stable(f)


def rule_a_covers(spec: ChoiceSpec, system: System) -> bool:
    """Whether rule A of `system` closes over this occurrence."""
    if system is System.CL1:
        return not spec.top_owned
    return spec.top_owned


def rule_b_covers(spec: ChoiceSpec, system: System) -> bool:
    return not rule_a_covers(spec, system)


def rule_a_premises(f: Formula, system: System) -> list[Formula]:
    """One premise per (covered occurrence, component), occurrences left to
    right, components ascending, duplicates dropped."""
    out: list[Formula] = []
    seen: set[Formula] = set()
    for spec in surface_choice_occurrences(f):
        if not rule_a_covers(spec, system):
            continue
        for i in range(1, spec.arity + 1):
            h = substitute_at(f, spec, i)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def rule_b_options(
    f: Formula, system: System
) -> list[tuple[ChoiceSpec, int, Formula]]:
    """Every (occurrence, component, resulting premise) rule B may use."""
    out = []
    for spec in surface_choice_occurrences(f):
        if not rule_b_covers(spec, system):
            continue
        for i in range(1, spec.arity + 1):
            out.append((spec, i, substitute_at(f, spec, i)))
    return out


@dataclass(frozen=True)
class RuleA:
    premises: tuple[int, ...]


@dataclass(frozen=True)
class RuleB:
    premise: int
    spec: ChoiceSpec
    component: int


Justification = Union[RuleA, RuleB]


@dataclass(frozen=True)
class Step:
    formula: Formula
    rule: Justification


@dataclass(frozen=True)
class Proof:
    system: System
    steps: tuple[Step, ...]

    @property
    def goal(self) -> Formula:
        return self.steps[-1].formula

    def step_for(self, f: Formula) -> Step:
        for step in self.steps:
            if step.formula == f:
                return step
        raise ProofError(f"{to_text(f)} is not a proof formula")

    def to_json(self) -> dict:
        steps = []
        for step in self.steps:
            if isinstance(step.rule, RuleA):
                steps.append(
                    {
                        "formula": to_text(step.formula),
                        "rule": "A",
                        "premises": list(step.rule.premises),
                    }
                )
            else:
                steps.append(
                    {
                        "formula": to_text(step.formula),
                        "rule": "B",
                        "premise": step.rule.premise,
                        "spec": step.rule.spec.string_form,
                        "component": step.rule.component,
                    }
                )
        return {"system": self.system.value, "steps": steps}

    @staticmethod
    def from_json(data: dict) -> "Proof":
        try:
            system = System(data["system"])
        except (KeyError, ValueError):
            raise ProofError(f"unknown system {data.get('system')!r}")
        steps = []
        for idx, raw in enumerate(data.get("steps", [])):
            f = parse(raw["formula"])
            if raw.get("rule") == "A":
                rule: Justification = RuleA(tuple(raw.get("premises", [])))
            elif raw.get("rule") == "B":
                spec = _spec_by_string(f, raw["spec"])
                if spec is None:
                    raise ProofError(
                        f"step {idx}: no surface choice occurrence at {raw['spec']!r}",
                        idx,
                    )
                rule = RuleB(raw["premise"], spec, raw["component"])
            else:
                raise ProofError(f"step {idx}: unknown rule {raw.get('rule')!r}", idx)
            steps.append(Step(f, rule))
        if not steps:
            raise ProofError("empty proof")
        return Proof(system, tuple(steps))


def _spec_by_string(f: Formula, string_form: str) -> Optional[ChoiceSpec]:
    for spec in surface_choice_occurrences(f):
        if spec.string_form == string_form:
            return spec
    return None


def prove(f: Formula, system: System) -> Proof | None:
    """Backward search, memoized on structural formula equality.

    Rule A is tried first, then rule B options in listed order; a stable
    formula whose rule-A premises fail may still close by rule B.  Emits a
    repetition-free step list in dependency order ending at the goal.
    """
    decided: dict[Formula, bool] = {}
    how: dict[Formula, tuple] = {}

    def search(g: Formula) -> bool:
        if g in decided:
            return decided[g]
        ok = False
        if side_condition(g, system):
            premises = rule_a_premises(g, system)
            if all(search(h) for h in premises):
                how[g] = ("A", tuple(premises))
                ok = True
        if not ok:
            for spec, i, h in rule_b_options(g, system):
                if search(h):
                    how[g] = ("B", spec, i, h)
                    ok = True
                    break
        decided[g] = ok
        return ok

    if not search(f):
        return None

    steps: list[Step] = []
    index: dict[Formula, int] = {}

    def emit(g: Formula) -> int:
        if g in index:
            return index[g]
        tag = how[g]
        if tag[0] == "A":
            rule: Justification = RuleA(tuple(emit(h) for h in tag[1]))
        else:
            rule = RuleB(emit(tag[3]), tag[1], tag[2])
        index[g] = len(steps)
        steps.append(Step(g, rule))
        return index[g]

    emit(f)
    return Proof(system, tuple(steps))


def check_proof(proof: Proof) -> None:
    """Validates every step; raises ProofError at the first bad one."""
    if not proof.steps:
        raise ProofError("empty proof")
    seen: set[Formula] = set()
    for idx, step in enumerate(proof.steps):
        if step.formula in seen:
            raise ProofError(
                f"step {idx}: formula repeats an earlier step", idx
            )
        if isinstance(step.rule, RuleA):
            if not side_condition(step.formula, proof.system):
                want = "stable" if proof.system is System.CL1 else "instable"
                raise ProofError(
                    f"step {idx}: rule A needs a {want} formula", idx
                )
            for j in step.rule.premises:
                if not 0 <= j < idx:
                    raise ProofError(
                        f"step {idx}: premise index {j} not an earlier step", idx
                    )
            cited = {proof.steps[j].formula for j in step.rule.premises}
            required = set(rule_a_premises(step.formula, proof.system))
            if cited != required:
                raise ProofError(
                    f"step {idx}: cited premises are not the full premise set",
                    idx,
                )
        else:
            j = step.rule.premise
            if not 0 <= j < idx:
                raise ProofError(
                    f"step {idx}: premise index {j} not an earlier step", idx
                )
            spec = step.rule.spec
            if spec not in surface_choice_occurrences(step.formula):
                raise ProofError(
                    f"step {idx}: spec {spec.string_form!r} is not a surface "
                    "choice occurrence of the conclusion",
                    idx,
                )
            if not rule_b_covers(spec, proof.system):
                raise ProofError(
                    f"step {idx}: occurrence {spec.string_form!r} is not "
                    "rule-B replaceable in this system",
                    idx,
                )
            if not 1 <= step.rule.component <= spec.arity:
                raise ProofError(
                    f"step {idx}: component {step.rule.component} out of range",
                    idx,
                )
            expected = substitute_at(step.formula, spec, step.rule.component)
            if proof.steps[j].formula != expected:
                raise ProofError(
                    f"step {idx}: premise does not match the replacement", idx
                )
        seen.add(step.formula)


def duality_check(f: Formula) -> System:
    """Returns the one system that proves `f`; both or neither is a bug."""
    in_cl1 = prove(f, System.CL1) is not None
    in_cl1p = prove(f, System.CL1P) is not None
    if in_cl1 == in_cl1p:
        both = "both systems" if in_cl1 else "neither system"
        raise RuntimeError(
            f"duality violated: {both} prove {to_text(f)}"
        )
    return System.CL1 if in_cl1 else System.CL1P
