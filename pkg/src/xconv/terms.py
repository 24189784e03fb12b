"""Justification terms: constants, indexed variables, and applications."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .formulas import PropFormula, prop_key


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    """Open assumption: a missing justification of ``goal`` from ``premises``.

    An empty premise tuple encodes an unjustified hypothesis; a non-empty one
    encodes an unjustified deduction step.  The two are distinct terms.
    """

    goal: PropFormula
    premises: Tuple[PropFormula, ...] = ()


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


Term = Union[Const, Var, App]


def is_ground(t: Term) -> bool:
    if isinstance(t, Const):
        return True
    if isinstance(t, Var):
        return False
    return is_ground(t.fn) and is_ground(t.arg)


def contains(t: Term, sub: Term) -> bool:
    if t == sub:
        return True
    if isinstance(t, App):
        return contains(t.fn, sub) or contains(t.arg, sub)
    return False


def substitute(s: Term, x: Var, r: Term) -> Term:
    """Replace every occurrence of the variable ``x`` in ``s`` by ``r``."""
    if s == x:
        return r
    if isinstance(s, App):
        return App(substitute(s.fn, x, r), substitute(s.arg, x, r))
    return s


def apply_chain(fn: Term, args) -> Term:
    """Left-associated application ``fn . a1 . a2 ...``."""
    result = fn
    for a in args:
        result = App(result, a)
    return result


def term_key(t: Term):
    """Canonical total order: constants < variables < applications."""
    if isinstance(t, Const):
        return (0, t.name)
    if isinstance(t, Var):
        return (1, prop_key(t.goal), tuple(prop_key(p) for p in t.premises))
    return (2, term_key(t.fn), term_key(t.arg))
