import random

import pytest

from xconv.formulas import (
    FALSUM,
    Atom,
    Box,
    Implies,
    Just,
    Triangle,
    atoms_of,
    curried,
    decompose,
    is_propositional,
    neg,
    prop_key,
)
from xconv.generate import random_prop
from xconv.terms import Const


def test_curried_right_nested():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert curried([a, b], c) == Implies(a, Implies(b, c))
    assert curried([], c) == c


def test_decompose_inverts_curried():
    rng = random.Random(7)
    for _ in range(200):
        premises = tuple(random_prop(rng, ["p", "q"], 1) for _ in range(rng.randrange(4)))
        goal = Atom(rng.choice(["p", "q"]))
        assert decompose(curried(premises, goal)) == (premises, goal)


def test_decompose_is_maximal():
    f = Implies(Atom("a"), Implies(Atom("b"), Atom("c")))
    premises, concl = decompose(f)
    assert premises == (Atom("a"), Atom("b"))
    assert concl == Atom("c")


def test_is_propositional():
    assert is_propositional(Implies(Atom("a"), FALSUM))
    assert not is_propositional(Box(1, Atom("a")))
    assert not is_propositional(Implies(Atom("a"), Triangle(2, Atom("a"))))


def test_modal_bodies_must_be_propositional():
    with pytest.raises(TypeError):
        Just(Const("t"), 2, Box(1, Atom("a")))
    with pytest.raises(TypeError):
        Triangle(2, Triangle(2, Atom("a")))


def test_neg():
    assert neg(Atom("a")) == Implies(Atom("a"), FALSUM)


def test_atoms_of():
    f = Box(1, Implies(Atom("a"), Implies(Atom("b"), FALSUM)))
    assert atoms_of(f) == frozenset({"a", "b"})


def test_prop_key_total_order():
    rng = random.Random(11)
    forms = [random_prop(rng, ["p", "q", "r"]) for _ in range(100)] + [FALSUM]
    keys = {prop_key(f) for f in forms}
    assert len(keys) == len(set(forms))
    ordered = sorted(set(forms), key=prop_key)
    assert ordered[0] == FALSUM
    # atoms come before implications
    kinds = [0 if f == FALSUM else (1 if isinstance(f, Atom) else 2) for f in ordered]
    assert kinds == sorted(kinds)
