"""Random models, explanations, and planted conversation instances.

Used by the test suite and the acceptance harness; seeded Random instances
keep runs reproducible.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .explanation import Explanation
from .formulas import Atom, Implies, PropFormula, curried
from .model import Agent, Model, make_model
from .terms import App, Const, Term, Var


def _closure(pairs, worlds):
    rel = set(pairs) | {(w, w) for w in worlds}
    changed = True
    while changed:
        changed = False
        for (u, v) in list(rel):
            for (v2, z) in list(rel):
                if v2 == v and (u, z) not in rel:
                    rel.add((u, z))
                    changed = True
    return rel


def random_prop(rng: random.Random, atoms: List[str], depth: int = 2) -> PropFormula:
    if depth == 0 or rng.random() < 0.5:
        return Atom(rng.choice(atoms))
    return Implies(random_prop(rng, atoms, depth - 1), random_prop(rng, atoms, depth - 1))


def random_term(rng: random.Random, atoms: List[str], depth: int = 2) -> Term:
    roll = rng.random()
    if depth == 0 or roll < 0.55:
        return Const(f"c{rng.randrange(8)}")
    if roll < 0.7:
        premises = tuple(
            random_prop(rng, atoms, 1) for _ in range(rng.randrange(3))
        )
        return Var(random_prop(rng, atoms, 1), premises)
    return App(random_term(rng, atoms, depth - 1), random_term(rng, atoms, depth - 1))


def random_explanation(
    rng: random.Random, atoms: List[str], max_depth: int = 3, max_width: int = 2
) -> Explanation:
    """A tree of distinct atoms; at least one deduction step."""
    pool = list(atoms)
    rng.shuffle(pool)

    def build(depth: int) -> Optional[Explanation]:
        if not pool:
            return None
        claim = Atom(pool.pop())
        if depth <= 1:
            return Explanation(claim)
        n = rng.randrange(0 if depth < max_depth else 1, max_width + 1)
        children = []
        for _ in range(n):
            sub = build(depth - 1)
            if sub is not None:
                children.append(sub)
        if depth == max_depth and not children:
            children.append(Explanation(Atom(pool.pop())))
        return Explanation(claim, tuple(children))

    return build(max_depth)


def random_model_for_explanation(
    rng: random.Random,
    e: Explanation,
    max_worlds: int = 4,
    noise_entries: int = 8,
) -> Tuple[Model, str]:
    """A small model whose explainee randomly justifies parts of ``e``.

    All atoms hold everywhere, so any implication-and-atom formula is true
    and every evidence assignment satisfies the belief constraint.
    """
    atoms = sorted({a for f in e.node_formulas() for a in _atom_names(f)} | {"z0", "z1"})
    n = rng.randrange(1, max_worlds + 1)
    worlds = [f"w{i}" for i in range(n)]
    actual = "w0"
    edges = set()
    for agent in Agent:
        for _ in range(rng.randrange(0, n * 2)):
            edges.add((agent, rng.choice(worlds), rng.choice(worlds)))
    relations = {
        agent: _closure([(u, v) for (a, u, v) in edges if a == agent], worlds)
        for agent in Agent
    }
    evidence: Dict[Agent, Dict[str, Dict[Term, frozenset]]] = {a: {} for a in Agent}

    def add(agent, w, t, f):
        by_term = evidence[agent].setdefault(w, {})
        by_term[t] = by_term.get(t, frozenset()) | {f}

    idx = 0
    for w in worlds:
        for f in e.hypotheses():
            if rng.random() < 0.6:
                add(Agent.EXPLAINEE, w, Const(f"g{idx}"), f)
                idx += 1
        for g in e.derived():
            if rng.random() < 0.6:
                step = curried(e.premises_of(g), g)
                add(Agent.EXPLAINEE, w, Const(f"g{idx}"), step)
                idx += 1
    for _ in range(noise_entries):
        agent = rng.choice(list(Agent))
        w = rng.choice(worlds)
        add(agent, w, random_term(rng, atoms), random_prop(rng, atoms))
    valuation = {name: frozenset(worlds) for name in atoms}
    m = make_model(worlds, relations, evidence, valuation, atoms)
    return m, actual


def random_valued_model(
    rng: random.Random, max_worlds: int = 4, n_entries: int = 8
) -> Tuple[Model, str]:
    """A model with a random valuation; ground evidence is kept only when it
    satisfies the belief constraint at its world."""
    atoms = ["p", "q", "r", "s"]
    n = rng.randrange(1, max_worlds + 1)
    worlds = [f"w{i}" for i in range(n)]
    relations = {}
    for agent in Agent:
        pairs = [
            (rng.choice(worlds), rng.choice(worlds)) for _ in range(rng.randrange(0, n * 2))
        ]
        relations[agent] = _closure(pairs, worlds)
    valuation = {
        name: frozenset(w for w in worlds if rng.random() < 0.6) for name in atoms
    }

    def holds(w, f):
        if isinstance(f, Atom):
            return w in valuation[f.name]
        if isinstance(f, Implies):
            return (not holds(w, f.antecedent)) or holds(w, f.consequent)
        return False

    evidence: Dict[Agent, Dict[str, Dict[Term, frozenset]]] = {a: {} for a in Agent}
    for _ in range(n_entries):
        agent = rng.choice(list(Agent))
        w = rng.choice(worlds)
        t = random_term(rng, atoms)
        f = random_prop(rng, atoms)
        if isinstance(t, (Const, App)) and not all(
            holds(u, f)
            for u in worlds
            if (w, u) in relations[agent]
        ):
            continue
        by_term = evidence[agent].setdefault(w, {})
        by_term[t] = by_term.get(t, frozenset()) | {f}
    m = make_model(worlds, relations, valuation=valuation, atoms=atoms, evidence=evidence)
    return m, worlds[0]


def _atom_names(f: PropFormula):
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Implies):
        return _atom_names(f.antecedent) | _atom_names(f.consequent)
    return set()


def planted_instance(
    rng: random.Random,
) -> Tuple[Model, str, PropFormula, Explanation]:
    """A model guaranteed to satisfy the termination hypothesis: it contains a
    chain explanation for the claim that the explainee understands at the
    actual world and the explainer fully ground-justifies, alongside decoy
    derivations whose steps the explainee cannot follow.
    """
    claim = Atom("goal")
    hypo = Atom("base")
    n_mid = rng.randrange(1, 3)
    planted_atoms = [hypo] + [Atom(f"m{i}") for i in range(n_mid)] + [claim]
    n_decoys = rng.randrange(0, 3)
    decoys = []
    for d in range(n_decoys):
        k = rng.randrange(1, 3)
        decoys.append([hypo] + [Atom(f"d{d}_{i}") for i in range(k)] + [claim])

    n_extra = rng.randrange(0, 3)
    worlds = ["w0"] + [f"u{i}" for i in range(n_extra)]
    actual = "w0"
    relations = {
        Agent.EXPLAINER: _closure([("w0", u) for u in worlds], worlds),
        Agent.EXPLAINEE: _closure([], worlds),
    }
    evidence: Dict[Agent, Dict[str, Dict[Term, frozenset]]] = {a: {} for a in Agent}

    def add(agent, w, t, f):
        by_term = evidence[agent].setdefault(w, {})
        by_term[t] = by_term.get(t, frozenset()) | {f}

    def install_chain(tag: str, chain: List[Atom], known_to_explainee: bool):
        # explainer: rule constants plus the derived-term entries of the chain
        prev: Term = Const("h")
        for i in range(1, len(chain)):
            step = Implies(chain[i - 1], chain[i])
            rule = Const(f"k_{tag}{i}")
            add(Agent.EXPLAINER, actual, rule, step)
            prev = App(rule, prev)
            add(Agent.EXPLAINER, actual, prev, chain[i])
            if known_to_explainee:
                add(Agent.EXPLAINEE, actual, Const(f"e_{tag}{i}"), step)
            # scatter explainee step witnesses over the other worlds
            for u in worlds[1:]:
                if rng.random() < 0.5:
                    add(Agent.EXPLAINEE, u, Const(f"e_{tag}{i}"), step)

    add(Agent.EXPLAINER, actual, Const("h"), hypo)
    for w in worlds:
        if w == actual or rng.random() < 0.7:
            add(Agent.EXPLAINEE, w, Const("e_h"), hypo)
    install_chain("p", planted_atoms, known_to_explainee=True)
    for d, chain in enumerate(decoys):
        install_chain(f"d{d}", chain, known_to_explainee=False)

    atoms = sorted({a.name for a in planted_atoms} | {a.name for c in decoys for a in c})
    valuation = {name: frozenset(worlds) for name in atoms}
    m = make_model(worlds, relations, evidence, valuation, atoms)

    planted = Explanation(planted_atoms[0])
    for a in planted_atoms[1:]:
        planted = Explanation(a, (planted,))
    return m, actual, claim, planted
