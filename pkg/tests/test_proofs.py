import random

import pytest

from clgames.formulas import (
    choice_component_count,
    parse,
    to_text,
)
from clgames.proofs import (
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
from conftest import (
    ALL_VECTORS,
    PROVABLE_VECTORS,
    UNPROVABLE_VECTORS,
    formula_corpus,
    oracle_tautology,
)

DISTRIB_CH = "((p->q)*(p->r))->(p->(q*r))"
DISTRIB_PAR = "((p->q)*(p->r))->(p->(q&r))"


class TestRuleA:
    def test_consequent_choice_and(self):
        f = parse(DISTRIB_CH)
        assert rule_a_premises(f, System.CL1) == [
            parse("((p->q)*(p->r))->(p->q)"),
            parse("((p->q)*(p->r))->(p->r)"),
        ]

    def test_elementary_formula_has_no_premises(self):
        assert rule_a_premises(parse("p | ~p"), System.CL1) == []

    def test_mirror_system_takes_negative_choice_and(self):
        f = parse(DISTRIB_PAR)
        assert rule_a_premises(f, System.CL1P) == [
            parse("(p->q)->(p->(q&r))"),
            parse("(p->r)->(p->(q&r))"),
        ]

    def test_duplicate_premises_dropped(self):
        assert rule_a_premises(parse("p * p"), System.CL1) == [parse("p")]


class TestRuleB:
    def test_negative_choice_and_options(self):
        f = parse("((p->q)*(p->r))->(p->q)")
        opts = rule_b_options(f, System.CL1)
        assert [(s.string_form, i, to_text(h)) for s, i, h in opts] == [
            ("1.", 1, "(p -> q) -> p -> q"),
            ("1.", 2, "(p -> r) -> p -> q"),
        ]

    def test_root_choice_or(self):
        opts = rule_b_options(parse("p + ~p"), System.CL1)
        assert [(s.string_form, i, to_text(h)) for s, i, h in opts] == [
            ("", 1, "p"),
            ("", 2, "~p"),
        ]

    def test_no_choice_nodes(self):
        assert rule_b_options(parse("p & q"), System.CL1) == []


class TestProve:
    @pytest.mark.parametrize("text", PROVABLE_VECTORS)
    def test_provable_vectors(self, text):
        assert prove(parse(text), System.CL1) is not None

    @pytest.mark.parametrize("text", UNPROVABLE_VECTORS)
    def test_unprovable_vectors(self, text):
        assert prove(parse(text), System.CL1) is None

    def test_emitted_proofs_check(self):
        for text in ALL_VECTORS:
            f = parse(text)
            system = System.CL1 if text in PROVABLE_VECTORS else System.CL1P
            proof = prove(f, system)
            assert proof is not None
            check_proof(proof)
            assert proof.goal == f

    def test_deterministic(self):
        f = parse(DISTRIB_CH)
        assert prove(f, System.CL1) == prove(f, System.CL1)

    def test_replacement_premises_shrink(self):
        # every rule-B step cites a premise with strictly fewer choice components
        for text in ALL_VECTORS:
            system = System.CL1 if text in PROVABLE_VECTORS else System.CL1P
            proof = prove(parse(text), system)
            for step in proof.steps:
                if isinstance(step.rule, RuleB):
                    premise = proof.steps[step.rule.premise].formula
                    assert choice_component_count(premise) < choice_component_count(
                        step.formula
                    )

    def test_no_repeated_formulas_and_goal_last(self):
        proof = prove(parse(DISTRIB_CH), System.CL1)
        formulas = [s.formula for s in proof.steps]
        assert len(set(formulas)) == len(formulas)
        assert proof.goal == parse(DISTRIB_CH)


# the 5-step derivation of the choice-distribution implication, verbatim
DISTRIB_PROOF_JSON = {
    "system": "CL1",
    "steps": [
        {"formula": "(p->q)->(p->q)", "rule": "A", "premises": []},
        {
            "formula": "((p->q)*(p->r))->(p->q)",
            "rule": "B",
            "premise": 0,
            "spec": "1.",
            "component": 1,
        },
        {"formula": "(p->r)->(p->r)", "rule": "A", "premises": []},
        {
            "formula": "((p->q)*(p->r))->(p->r)",
            "rule": "B",
            "premise": 2,
            "spec": "1.",
            "component": 2,
        },
        {
            "formula": "((p->q)*(p->r))->(p->(q*r))",
            "rule": "A",
            "premises": [1, 3],
        },
    ],
}


class TestCheckProof:
    def test_transcribed_derivation_checks(self):
        proof = Proof.from_json(DISTRIB_PROOF_JSON)
        check_proof(proof)

    def test_dropped_premise_citation_fails(self):
        import copy

        tampered = copy.deepcopy(DISTRIB_PROOF_JSON)
        tampered["steps"][4]["premises"] = [1]
        with pytest.raises(ProofError) as err:
            check_proof(Proof.from_json(tampered))
        assert err.value.step == 4

    def test_single_step_axiom(self):
        # stable, no environment-owned choices: an axiom
        proof = Proof(System.CL1, (Step(parse("p | ~p"), RuleA(())),))
        check_proof(proof)

    def test_wrong_side_condition(self):
        bad = Proof(System.CL1, (Step(parse("p"), RuleA(())),))
        with pytest.raises(ProofError):
            check_proof(bad)

    def test_repeated_formula_rejected(self):
        step = Step(parse("p | ~p"), RuleA(()))
        with pytest.raises(ProofError):
            check_proof(Proof(System.CL1, (step, step)))

    def test_wrong_replacement_premise(self):
        import copy

        tampered = copy.deepcopy(DISTRIB_PROOF_JSON)
        tampered["steps"][1]["component"] = 2  # cites step 0 but replaces to (p->r)->...
        with pytest.raises(ProofError):
            check_proof(Proof.from_json(tampered))

    def test_json_round_trip(self):
        proof = prove(parse(DISTRIB_CH), System.CL1)
        assert Proof.from_json(proof.to_json()) == proof


class TestDuality:
    def test_examples(self):
        assert duality_check(parse("p + ~p")) is System.CL1P
        assert duality_check(parse("((~p|~q)&(~r|~s))|((p|r)&(q|s))")) is System.CL1
        assert duality_check(parse(DISTRIB_CH)) is System.CL1

    def test_exactly_one_system_on_randoms(self):
        for f in formula_corpus(seed=201, count=150):
            in_cl1 = prove(f, System.CL1) is not None
            in_cl1p = prove(f, System.CL1P) is not None
            assert in_cl1 != in_cl1p, to_text(f)

    def test_classical_fragment_on_randoms(self):
        for f in formula_corpus(seed=202, count=150, choice_free=True):
            provable = prove(f, System.CL1) is not None
            assert provable == oracle_tautology(f), to_text(f)

    def test_emitted_proofs_check_on_randoms(self):
        for f in formula_corpus(seed=203, count=60):
            system = (
                System.CL1 if prove(f, System.CL1) is not None else System.CL1P
            )
            check_proof(prove(f, system))
