import random

import pytest

from clgames.formulas import (
    Atom,
    BOT,
    ChAnd,
    ChOr,
    FormulaError,
    Imp,
    Neg,
    ParAnd,
    ParseError,
    TOP,
    all_valuations,
    atoms,
    choice_component_count,
    classical_truth,
    elementarize,
    is_elementary,
    is_stable,
    parse,
    substitute_at,
    surface_choice_occurrences,
    tautology,
    to_text,
)
from conftest import (
    formula_corpus,
    oracle_surface_choices,
    oracle_tautology,
)

P, Q, R = Atom("p"), Atom("q"), Atom("r")


class TestParse:
    def test_distribution_shape(self):
        f = parse("((p->q)*(p->r))->(p->(q*r))")
        assert f == Imp(
            ChAnd((Imp(P, Q), Imp(P, R))),
            Imp(P, ChAnd((Q, R))),
        )

    def test_unparenthesized_chain_flattens(self):
        assert parse("p & q & r") == ParAnd((P, Q, R))

    def test_parentheses_force_nesting(self):
        nested = parse("(p & q) & r")
        assert nested == ParAnd((ParAnd((P, Q)), R))
        assert nested != parse("p & q & r")

    def test_precedence(self):
        # choice binds looser than parallel, arrow loosest
        assert parse("p*q->r") == Imp(ChAnd((P, Q)), R)
        assert parse("p & q | r") == parse("(p & q) | r")
        assert parse("p -> q -> r") == Imp(P, Imp(Q, R))

    def test_unicode_aliases(self):
        assert parse("¬p ∨ (q ⊓ r)") == parse("~p | (q * r)")
        assert parse("⊤ → ⊥") == Imp(TOP, BOT)
        assert parse("p ⊔ ¬p") == parse("p + ~p")

    def test_atom_names(self):
        assert parse("ab_1") == Atom("ab_1")
        # bare 1/0 are the trivial games, not atoms
        assert parse("1") == TOP
        assert parse("0") == BOT

    def test_errors_carry_position(self):
        with pytest.raises(ParseError) as err:
            parse("p & ")
        assert err.value.position == 4
        with pytest.raises(ParseError):
            parse("p q")
        with pytest.raises(ParseError):
            parse("(p -> q")
        with pytest.raises(ParseError):
            parse("p -> Q")

    def test_arity_one_nodes_cannot_be_built(self):
        with pytest.raises(FormulaError):
            ChAnd((P,))


class TestPrint:
    def test_choice_or_with_negation(self):
        assert to_text(ChOr((P, Neg(P)))) == "p + ~p"

    def test_precedence_drops_parens(self):
        assert to_text(Imp(P, ChAnd((Q, R)))) == "p -> q * r"

    def test_nesting_is_preserved(self):
        assert to_text(ParAnd((ParAnd((P, Q)), R))) == "(p & q) & r"

    def test_round_trip_random(self):
        for f in formula_corpus(seed=101, count=300, max_connectives=12):
            assert parse(to_text(f)) == f


class TestSurfaceOccurrences:
    def test_nested_occurrence_address(self):
        f = parse("r | (p + q) | ~(p -> (r & (p + q)))")
        occs = surface_choice_occurrences(f)
        assert len(occs) == 2
        assert occs[0].string_form == "2."
        assert occs[1].string_form == "3.2.2."
        assert occs[1].polarity == "negative"
        assert occs[1].kind == "+"

    def test_root_occurrence(self):
        f = parse("p + ~p")
        (occ,) = surface_choice_occurrences(f)
        assert occ.string_form == ""
        assert occ.polarity == "positive"
        assert occ.kind == "+"
        assert occ.arity == 2

    def test_choice_under_choice_is_not_surface(self):
        f = parse("(p * q) + r")
        (occ,) = surface_choice_occurrences(f)
        assert occ.kind == "+"

    def test_move_strings_concatenate(self):
        f = parse("(a+~a)->((~b+b)&1)")
        consequent = surface_choice_occurrences(f)[1]
        assert consequent.string_form == "2.1."
        assert consequent.move(2) == "2.1.2"

    def test_polarity_against_expansion_oracle(self):
        for f in formula_corpus(seed=102, count=200):
            got = [(s.positive, s.kind, s.arity) for s in surface_choice_occurrences(f)]
            assert got == oracle_surface_choices(f)


class TestElementarize:
    def test_choice_and_collapses_to_top(self):
        assert elementarize(parse("q * r")) == TOP

    def test_choice_or_collapses_to_bot(self):
        assert elementarize(parse("p + ~p")) == BOT

    def test_outermost_only(self):
        f = parse("((p->q)*(p->r))->(p->(q*r))")
        assert elementarize(f) == parse("1 -> (p -> 1)")

    def test_result_is_always_elementary(self):
        for f in formula_corpus(seed=103, count=200):
            assert is_elementary(elementarize(f))


class TestStability:
    def test_examples(self):
        assert is_stable(parse("((p->q)*(p->r))->(p->(q*r))"))
        assert not is_stable(parse("((p->q)*(p->r))->(p->(q&r))"))
        assert is_stable(parse("p | ~p"))

    def test_elementary_stability_is_tautology(self):
        for f in formula_corpus(seed=104, count=200, choice_free=True):
            assert is_stable(f) == oracle_tautology(f)

    def test_atom_cap(self):
        big = ParAnd(tuple(Atom(f"a{i}") for i in range(21)))
        with pytest.raises(FormulaError):
            tautology(big)


class TestSubstitute:
    def test_antecedent_component(self):
        f = parse("((p->q)*(p->r))->(p->(q*r))")
        (spec, _) = surface_choice_occurrences(f)[0], None
        assert spec.string_form == "1."
        assert substitute_at(f, spec, 1) == parse("(p->q)->(p->(q*r))")

    def test_inside_parallel(self):
        f = parse("(a+~a)->((~b+b)&1)")
        spec = surface_choice_occurrences(f)[1]
        assert spec.string_form == "2.1."
        assert substitute_at(f, spec, 2) == parse("(a+~a)->(b&1)")

    def test_root(self):
        f = parse("p + ~p")
        (spec,) = surface_choice_occurrences(f)
        assert substitute_at(f, spec, 2) == Neg(P)

    def test_bad_component(self):
        f = parse("p + ~p")
        (spec,) = surface_choice_occurrences(f)
        with pytest.raises(FormulaError):
            substitute_at(f, spec, 3)

    def test_stale_spec_rejected(self):
        f = parse("p + ~p")
        (spec,) = surface_choice_occurrences(f)
        with pytest.raises(FormulaError):
            substitute_at(parse("p & q"), spec, 1)


class TestClassicalTruth:
    def test_tautology_row(self):
        f = parse("1 -> (p -> 1)")
        assert classical_truth(f, {"p": False})
        assert classical_truth(f, {"p": True})

    def test_hand_row(self):
        f = parse("(p->q)->(p->(q&r))")
        assert classical_truth(f, {"p": True, "q": True, "r": False}) is False

    def test_bot(self):
        assert classical_truth(BOT, {}) is False

    def test_rejects_choice_nodes(self):
        with pytest.raises(FormulaError):
            classical_truth(parse("p * q"), {"p": True, "q": True})

    def test_missing_atom(self):
        with pytest.raises(FormulaError):
            classical_truth(parse("p & q"), {"p": True})


class TestHelpers:
    def test_atoms_sorted_unique(self):
        assert atoms(parse("q & p & q & ~p")) == ("p", "q")

    def test_choice_component_count(self):
        assert choice_component_count(parse("p & q")) == 0
        assert choice_component_count(parse("(p*q) + r")) == 4

    def test_all_valuations_order(self):
        rows = list(all_valuations(("a", "b")))
        assert rows[0] == {"a": False, "b": False}
        assert rows[1] == {"a": False, "b": True}
        assert rows[-1] == {"a": True, "b": True}
