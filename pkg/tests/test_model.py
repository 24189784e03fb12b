import random

import pytest

from xconv.errors import UnknownAtom, UnknownWorld
from xconv.fixtures import chatbot_model, preference_model, three_step_chain_model
from xconv.formulas import FALSUM, Atom, Box, Implies, Just, Triangle, neg
from xconv.generate import random_valued_model
from xconv.model import (
    Agent,
    can_justify,
    check_validity_samples,
    evaluate,
    make_model,
    validate_model,
)
from xconv.syntax import parse_formula, parse_prop, parse_term
from xconv.terms import App, Const


def test_fixture_models_validate():
    for m in (three_step_chain_model(), preference_model(), chatbot_model()):
        assert validate_model(m) == []


def test_evaluate_propositional():
    m = three_step_chain_model()
    assert evaluate(m, "w", Atom("a"))
    assert not evaluate(m, "w", FALSUM)
    assert evaluate(m, "w", Implies(FALSUM, Atom("a")))
    assert not evaluate(m, "w", neg(Atom("a")))


def test_evaluate_box_over_successors():
    m = preference_model()
    # the explainer considers v possible from w; a fails at v
    assert not evaluate(m, "w", Box(Agent.EXPLAINER, Atom("a")))
    assert evaluate(m, "w", Box(Agent.EXPLAINER, Atom("b")))
    assert evaluate(m, "v", Box(Agent.EXPLAINER, neg(Atom("a"))))


def test_evaluate_just_is_exact_membership():
    m = three_step_chain_model()
    assert evaluate(m, "w", Just(Const("tA"), Agent.EXPLAINEE, Atom("a")))
    assert not evaluate(m, "w", Just(Const("tA"), Agent.EXPLAINEE, Atom("b")))
    assert not evaluate(m, "w", Just(Const("zz"), Agent.EXPLAINEE, Atom("a")))


def test_evaluate_triangle():
    m = preference_model()
    assert evaluate(m, "w", Triangle(Agent.EXPLAINEE, Atom("a")))
    assert not evaluate(m, "v", Triangle(Agent.EXPLAINEE, Atom("a")))
    assert evaluate(m, "v", Triangle(Agent.EXPLAINEE, parse_prop("a -> b")))


def test_evaluate_unknowns():
    m = three_step_chain_model()
    with pytest.raises(UnknownWorld):
        evaluate(m, "nope", Atom("a"))
    with pytest.raises(UnknownAtom):
        evaluate(m, "w", Atom("zz"))


def test_can_justify_picks_canonical_least_witness():
    m = make_model(
        worlds=["w"],
        relations={1: [("w", "w")], 2: [("w", "w")]},
        evidence={2: {"w": {Const("b"): frozenset({Atom("p")}), Const("a"): frozenset({Atom("p")})}}},
        valuation={"p": ["w"]},
    )
    assert can_justify(m, "w", Agent.EXPLAINEE, Atom("p")) == Const("a")


def test_can_justify_ignores_variable_terms():
    from xconv.terms import Var

    m = make_model(
        worlds=["w"],
        relations={1: [("w", "w")], 2: [("w", "w")]},
        evidence={2: {"w": {Var(Atom("p")): frozenset({Atom("p")})}}},
        valuation={"p": ["w"]},
    )
    assert can_justify(m, "w", Agent.EXPLAINEE, Atom("p")) is None


def test_validate_model_flags_broken_frames():
    m = make_model(
        worlds=["u", "v"],
        relations={1: [("u", "u"), ("v", "v"), ("u", "v")], 2: [("u", "u")]},
        evidence={},
        valuation={"p": ["u"]},
    )
    kinds = {v.kind for v in validate_model(m)}
    assert "reflexivity" in kinds  # agent 2 misses (v,v)


def test_validate_model_flags_jyb_violation():
    # ground evidence for p while p fails at a reachable world
    m = make_model(
        worlds=["u", "v"],
        relations={1: [("u", "u"), ("v", "v"), ("u", "v")], 2: [("u", "u"), ("v", "v")]},
        evidence={1: {"u": {Const("t"): frozenset({Atom("p")})}}},
        valuation={"p": ["u"]},
    )
    kinds = {v.kind for v in validate_model(m)}
    assert "jyb" in kinds


def test_validate_model_allows_variable_evidence_anywhere():
    from xconv.terms import Var

    m = make_model(
        worlds=["u", "v"],
        relations={1: [("u", "u"), ("v", "v"), ("u", "v")], 2: [("u", "u"), ("v", "v")]},
        evidence={1: {"u": {Var(Atom("p")): frozenset({Atom("p")})}}},
        valuation={"p": ["u"]},
    )
    assert validate_model(m) == []


def test_validity_samples_on_fixtures():
    for m in (three_step_chain_model(), preference_model(), chatbot_model()):
        report = check_validity_samples(m)
        assert report.all_valid
        assert report.jyb_checked > 0


def test_application_closure_fails():
    """Evidence is not closed under application: having s:(a->b) and t:a does
    not produce an App(s,t) entry for b unless the model includes one."""
    m = make_model(
        worlds=["w"],
        relations={1: [("w", "w")], 2: [("w", "w")]},
        evidence={
            2: {
                "w": {
                    Const("s"): frozenset({parse_prop("a -> b")}),
                    Const("t"): frozenset({Atom("a")}),
                }
            }
        },
        valuation={"a": ["w"], "b": ["w"]},
    )
    assert validate_model(m) == []
    report = check_validity_samples(m)
    assert report.all_valid
    cex = report.closure_counterexamples
    assert any(
        c.fn == Const("s") and c.arg == Const("t") and c.consequent == Atom("b")
        for c in cex
    )
    assert not evaluate(m, "w", Just(App(Const("s"), Const("t")), Agent.EXPLAINEE, Atom("b")))


def test_random_models_validate():
    rng = random.Random(19)
    for _ in range(50):
        m, _ = random_valued_model(rng)
        assert validate_model(m) == []
        assert check_validity_samples(m).all_valid
