"""Hand-built models for the worked examples used in tests and demos."""

from __future__ import annotations

from .explanation import Explanation
from .model import Agent, Model, make_model
from .syntax import parse_prop, parse_term


def chain_explanation(*names: str) -> Explanation:
    """A linear explanation from the first (hypothesis) to the last (claim)."""
    node = Explanation(parse_prop(names[0]))
    for name in names[1:]:
        node = Explanation(parse_prop(name), (node,))
    return node


def _identity(worlds):
    return [(w, w) for w in worlds]


def _entries(pairs):
    """{term-source: [formula-sources]} -> {Term: frozenset[PropFormula]}"""
    return {
        parse_term(t): frozenset(parse_prop(f) for f in forms)
        for t, forms in pairs.items()
    }


def three_step_chain_model(drop=()) -> Model:
    """Single-world model for the A/B/C chain; ``drop`` removes explainee
    evidence terms to produce the partial-understanding variants."""
    evidence = {
        "tA": ["a"],
        "dAB": ["a -> b"],
        "dBC": ["b -> c"],
    }
    for name in drop:
        del evidence[name]
    return make_model(
        worlds=["w"],
        relations={1: _identity(["w"]), 2: _identity(["w"])},
        evidence={2: {"w": _entries(evidence)}},
        valuation={"a": ["w"], "b": ["w"], "c": ["w"]},
        atoms=["a", "b", "c"],
    )


def detour_chain_model() -> Model:
    """The explainee can bridge a to b only through d; used for the nested
    learning example where a second explanation grounds the first."""
    evidence = {
        "tA": ["a"],
        "dBC": ["b -> c"],
        "dAD": ["a -> d"],
        "dDB": ["d -> b"],
    }
    return make_model(
        worlds=["w"],
        relations={1: _identity(["w"]), 2: _identity(["w"])},
        evidence={2: {"w": _entries(evidence)}},
        valuation={name: ["w"] for name in "abcd"},
        atoms=["a", "b", "c", "d"],
    )


def preference_model() -> Model:
    """Two worlds; the explainer is unsure only whether the explainee can
    justify the hypothesis a, while all deduction steps are certain."""
    worlds = ["w", "v"]
    deductions = {"dab": ["a -> b"], "dac": ["a -> c"], "dcb": ["c -> b"]}
    return make_model(
        worlds=worlds,
        relations={1: _identity(worlds) + [("w", "v")], 2: _identity(worlds)},
        evidence={
            2: {
                "w": _entries({"ta": ["a"], **deductions}),
                "v": _entries(deductions),
            }
        },
        valuation={"a": ["w"], "b": worlds, "c": worlds},
        atoms=["a", "b", "c"],
    )


def chatbot_model() -> Model:
    """The drink-more-water scenario: a chatbot explainer, a user explainee.

    w0 is the actual world.  In w1 the user is medically literate; in w2 the
    user follows the sweating route but not the thirst route.  The chatbot's
    rule base covers three derivations of drink_water.
    """
    worlds = ["w0", "w1", "w2"]
    atoms = ["sick", "fluid_loss", "thirsty", "drink_water", "sweating", "dehydrated"]
    explainer = {
        "h": ["sick"],
        "k1": ["sick -> fluid_loss"],
        "k2": ["fluid_loss -> drink_water"],
        "k3": ["sick -> thirsty"],
        "k4": ["thirsty -> drink_water"],
        "k5": ["sick -> sweating"],
        "k6": ["sweating -> dehydrated"],
        "k7": ["dehydrated -> fluid_loss"],
        # the chatbot's own derived terms for each derivation route
        "k1 . h": ["fluid_loss"],
        "k2 . (k1 . h)": ["drink_water"],
        "k3 . h": ["thirsty"],
        "k4 . (k3 . h)": ["drink_water"],
        "k5 . h": ["sweating"],
        "k6 . (k5 . h)": ["dehydrated"],
        "k7 . (k6 . (k5 . h))": ["fluid_loss"],
        "k2 . (k7 . (k6 . (k5 . h)))": ["drink_water"],
    }
    user_w0 = {
        "t": ["sick"],
        "s": ["sick -> thirsty"],
        "r": ["thirsty -> drink_water"],
        "q": ["sick -> sweating"],
    }
    user_w1 = {
        "t": ["sick"],
        "s": ["sick -> thirsty"],
        "r": ["thirsty -> drink_water"],
        "q": ["sick -> sweating"],
        "m1": ["sick -> fluid_loss"],
        "m2": ["fluid_loss -> drink_water"],
        "m3": ["sweating -> dehydrated"],
        "m4": ["dehydrated -> fluid_loss"],
    }
    user_w2 = {
        "t": ["sick"],
        "q": ["sick -> sweating"],
        "m3": ["sweating -> dehydrated"],
        "m4": ["dehydrated -> fluid_loss"],
    }
    return make_model(
        worlds=worlds,
        relations={
            1: _identity(worlds) + [("w0", "w1"), ("w0", "w2")],
            2: _identity(worlds),
        },
        evidence={
            1: {"w0": _entries(explainer)},
            2: {
                "w0": _entries(user_w0),
                "w1": _entries(user_w1),
                "w2": _entries(user_w2),
            },
        },
        valuation={name: worlds for name in atoms},
        atoms=atoms,
    )


def chatbot_explanations():
    first = chain_explanation("sick", "fluid_loss", "drink_water")
    followup = chain_explanation("sick", "sweating", "dehydrated", "fluid_loss")
    second = chain_explanation("sick", "thirsty", "drink_water")
    return first, followup, second
