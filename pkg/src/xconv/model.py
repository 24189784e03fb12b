"""Multi-agent modular models and static truth evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .errors import UnknownAtom, UnknownWorld
from .formulas import (
    Atom,
    Box,
    DynExp,
    DynFb,
    Falsum,
    Formula,
    Implies,
    Just,
    PropFormula,
    Triangle,
    atoms_of,
    is_propositional,
)
from .terms import App, Term, is_ground, term_key


class Agent(IntEnum):
    EXPLAINER = 1
    EXPLAINEE = 2


# agent -> world -> term -> set of justified propositional formulas
EvidenceMap = Dict[Agent, Dict[str, Dict[Term, FrozenSet[PropFormula]]]]


@dataclass
class Model:
    """A Kripke frame with per-agent evidence functions.

    Treated as an immutable value: update operations return fresh models.
    """

    worlds: FrozenSet[str]
    relations: Dict[Agent, FrozenSet[Tuple[str, str]]]
    evidence: EvidenceMap
    valuation: Dict[str, FrozenSet[str]]
    atoms: FrozenSet[str]

    def successors(self, agent: Agent, w: str) -> FrozenSet[str]:
        return frozenset(v for (u, v) in self.relations[agent] if u == w)

    def evidence_at(self, agent: Agent, w: str) -> Mapping[Term, FrozenSet[PropFormula]]:
        return self.evidence.get(agent, {}).get(w, {})

    def entries(self, agent: Agent, w: str, t: Term) -> FrozenSet[PropFormula]:
        return self.evidence_at(agent, w).get(t, frozenset())

    def ground_witnesses(self, agent: Agent, w: str, p: PropFormula) -> List[Term]:
        """All ground terms justifying ``p`` at ``w``, in canonical order."""
        out = [
            t
            for t, forms in self.evidence_at(agent, w).items()
            if p in forms and is_ground(t)
        ]
        out.sort(key=term_key)
        return out

    def copy_evidence(self) -> EvidenceMap:
        return {
            agent: {w: dict(by_term) for w, by_term in by_world.items()}
            for agent, by_world in self.evidence.items()
        }


def make_model(worlds, relations, evidence, valuation, atoms=None) -> Model:
    """Normalize plain containers into a Model."""
    worlds = frozenset(worlds)
    rels = {Agent(a): frozenset(tuple(p) for p in pairs) for a, pairs in relations.items()}
    for a in Agent:
        rels.setdefault(a, frozenset())
    ev: EvidenceMap = {a: {} for a in Agent}
    for a, by_world in evidence.items():
        a = Agent(a)
        for w, by_term in by_world.items():
            ev[a][w] = {t: frozenset(forms) for t, forms in by_term.items() if forms}
    val = {name: frozenset(ws) for name, ws in valuation.items()}
    if atoms is None:
        atoms = frozenset(val)
    return Model(worlds, rels, ev, val, frozenset(atoms))


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


def validate_model(m: Model) -> List[Violation]:
    """Check all model well-formedness invariants; violations are data."""
    out: List[Violation] = []
    if not m.worlds:
        out.append(Violation("empty-worlds", "model has no worlds"))
    for agent in Agent:
        rel = m.relations.get(agent, frozenset())
        for (u, v) in rel:
            if u not in m.worlds or v not in m.worlds:
                out.append(Violation("dangling-edge", f"R_{agent} edge ({u},{v}) leaves the world set"))
        for w in m.worlds:
            if (w, w) not in rel:
                out.append(Violation("reflexivity", f"R_{agent} missing ({w},{w})"))
        for (u, v) in rel:
            for (v2, z) in rel:
                if v2 == v and (u, z) not in rel:
                    out.append(Violation("transitivity", f"R_{agent} missing ({u},{z})"))
    for name, ws in m.valuation.items():
        if name not in m.atoms:
            out.append(Violation("undeclared-atom", f"valuation mentions {name!r}"))
        for w in ws:
            if w not in m.worlds:
                out.append(Violation("unknown-world", f"valuation of {name!r} mentions {w!r}"))
    for agent in Agent:
        for w, by_term in m.evidence.get(agent, {}).items():
            if w not in m.worlds:
                out.append(Violation("unknown-world", f"evidence of agent {agent} at missing world {w!r}"))
                continue
            for t, forms in by_term.items():
                for f in forms:
                    if not is_propositional(f):
                        out.append(Violation("non-propositional-evidence", f"{f} at ({t}, {w})"))
                        continue
                    if not atoms_of(f) <= m.atoms:
                        out.append(Violation("undeclared-atom", f"evidence formula {f} at ({t}, {w})"))
                        continue
                    if is_ground(t):
                        for u in m.successors(agent, w):
                            if not _holds_prop(m, u, f):
                                out.append(
                                    Violation(
                                        "jyb",
                                        f"agent {int(agent)}: {f} in evidence of {t} at {w} "
                                        f"but false at successor {u}",
                                    )
                                )
    return out


def _holds_prop(m: Model, w: str, f: PropFormula) -> bool:
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Atom):
        return w in m.valuation.get(f.name, frozenset())
    return (not _holds_prop(m, w, f.antecedent)) or _holds_prop(m, w, f.consequent)


def evaluate(m: Model, w: str, f: Formula) -> bool:
    """Truth at a world.  Dynamic operators evaluate the body in the updated
    model; nested dynamic prefixes apply rightmost (innermost) first."""
    if w not in m.worlds:
        raise UnknownWorld(w)
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Atom):
        if f.name not in m.atoms:
            raise UnknownAtom(f.name)
        return w in m.valuation.get(f.name, frozenset())
    if isinstance(f, Implies):
        return (not evaluate(m, w, f.antecedent)) or evaluate(m, w, f.consequent)
    if isinstance(f, Box):
        return all(evaluate(m, u, f.body) for u in m.successors(Agent(f.agent), w))
    if isinstance(f, Just):
        return f.body in m.entries(Agent(f.agent), w, f.term)
    if isinstance(f, Triangle):
        return can_justify(m, w, Agent(f.agent), f.body) is not None
    if isinstance(f, (DynExp, DynFb)):
        from .dynamics import apply_dynamic_prefix

        updated, body = apply_dynamic_prefix(m, w, f)
        return evaluate(updated, w, body)
    raise TypeError(f"not a formula: {f!r}")


def can_justify(m: Model, w: str, agent: Agent, p: PropFormula) -> Optional[Term]:
    """Canonically least ground term justifying ``p`` at ``w``, if any."""
    if w not in m.worlds:
        raise UnknownWorld(w)
    if not atoms_of(p) <= m.atoms:
        raise UnknownAtom((atoms_of(p) - m.atoms).pop())
    witnesses = m.ground_witnesses(agent, w, p)
    return witnesses[0] if witnesses else None


@dataclass(frozen=True)
class ClosureCounterexample:
    agent: Agent
    world: str
    fn: Term
    arg: Term
    antecedent: PropFormula
    consequent: PropFormula


@dataclass
class ValidityReport:
    jyb_checked: int = 0
    jyb_failures: List[str] = field(default_factory=list)
    factivity_checked: int = 0
    factivity_failures: List[str] = field(default_factory=list)
    box_factivity_checked: int = 0
    box_factivity_failures: List[str] = field(default_factory=list)
    closure_counterexamples: List[ClosureCounterexample] = field(default_factory=list)

    @property
    def all_valid(self) -> bool:
        return not (self.jyb_failures or self.factivity_failures or self.box_factivity_failures)


def check_validity_samples(m: Model) -> ValidityReport:
    """Confirm the model-level validities instance by instance.

    Checks every ground evidence entry for the belief and factivity
    consequences, checks box-factivity for the same formulas, and searches the
    model for counterexamples to closure under application (which is allowed
    to fail).
    """
    report = ValidityReport()
    for agent in Agent:
        for w in m.worlds:
            ev = m.evidence_at(agent, w)
            ground = {t: forms for t, forms in ev.items() if is_ground(t)}
            for t, forms in ground.items():
                for f in forms:
                    report.jyb_checked += 1
                    if not evaluate(m, w, Implies(Just(t, agent, f), Box(agent, f))):
                        report.jyb_failures.append(f"agent {int(agent)}, {t}, {w}, {f}")
                    report.factivity_checked += 1
                    if not evaluate(m, w, Implies(Just(t, agent, f), f)):
                        report.factivity_failures.append(f"agent {int(agent)}, {t}, {w}, {f}")
                    report.box_factivity_checked += 1
                    if not evaluate(m, w, Implies(Box(agent, f), f)):
                        report.box_factivity_failures.append(f"agent {int(agent)}, {w}, {f}")
            for s, s_forms in ground.items():
                for t, t_forms in ground.items():
                    for f in s_forms:
                        if not isinstance(f, Implies):
                            continue
                        if f.antecedent in t_forms:
                            if f.consequent not in ev.get(App(s, t), frozenset()):
                                report.closure_counterexamples.append(
                                    ClosureCounterexample(
                                        agent, w, s, t, f.antecedent, f.consequent
                                    )
                                )
    return report
