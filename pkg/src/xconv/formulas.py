"""Formula syntax.

A single AST covers the propositional core (atoms, falsum, implication) and
the modal extensions (belief boxes, evidence assertions, justifiability, and
the two dynamic operators).  Propositional-ness is a property checked with
:func:`is_propositional`; evidence assertions and justifiability claims are
restricted to propositional bodies at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Tuple, Union

if TYPE_CHECKING:
    from .explanation import Explanation, FeedbackRecord
    from .terms import Term


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Falsum:
    def __str__(self):
        return "false"


FALSUM = Falsum()


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"

    def __str__(self):
        from .syntax import format_formula

        return format_formula(self)


@dataclass(frozen=True)
class Box:
    agent: int
    body: "Formula"


@dataclass(frozen=True)
class Just:
    term: "Term"
    agent: int
    body: "Formula"

    def __post_init__(self):
        if not is_propositional(self.body):
            raise TypeError("evidence assertions take propositional bodies only")


@dataclass(frozen=True)
class Triangle:
    agent: int
    body: "Formula"

    def __post_init__(self):
        if not is_propositional(self.body):
            raise TypeError("justifiability claims take propositional bodies only")


@dataclass(frozen=True)
class DynExp:
    """Body holds after the agent hears the explanation."""

    agent: int
    exp: "Explanation"
    body: "Formula"


@dataclass(frozen=True)
class DynFb:
    """Body holds after the agent hears the feedback."""

    agent: int
    fb: "FeedbackRecord"
    body: "Formula"


Formula = Union[Atom, Falsum, Implies, Box, Just, Triangle, DynExp, DynFb]
PropFormula = Union[Atom, Falsum, Implies]


def is_propositional(f: Formula) -> bool:
    if isinstance(f, (Atom, Falsum)):
        return True
    if isinstance(f, Implies):
        return is_propositional(f.antecedent) and is_propositional(f.consequent)
    return False


def neg(f: Formula) -> Implies:
    return Implies(f, FALSUM)


def curried(premises, goal: PropFormula) -> PropFormula:
    """Right-nested implication from a premise list to a goal."""
    result = goal
    for p in reversed(list(premises)):
        result = Implies(p, result)
    return result


def decompose(f: PropFormula) -> Tuple[Tuple[PropFormula, ...], PropFormula]:
    """Maximal right-nested reading: premises and a non-implication conclusion."""
    premises = []
    while isinstance(f, Implies):
        premises.append(f.antecedent)
        f = f.consequent
    return tuple(premises), f


def atoms_of(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Falsum):
        return frozenset()
    if isinstance(f, Implies):
        return atoms_of(f.antecedent) | atoms_of(f.consequent)
    if isinstance(f, (Box, Just, Triangle, DynExp, DynFb)):
        return atoms_of(f.body)
    raise TypeError(f"not a formula: {f!r}")


def prop_key(f: PropFormula):
    """Total-order key on propositional formulas: falsum < atoms < implications."""
    if isinstance(f, Falsum):
        return (0,)
    if isinstance(f, Atom):
        return (1, f.name)
    if isinstance(f, Implies):
        return (2, prop_key(f.antecedent), prop_key(f.consequent))
    raise TypeError(f"not propositional: {f!r}")
