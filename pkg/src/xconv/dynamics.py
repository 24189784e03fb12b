"""Model updates: learning from explanations, world-set updates, and
learning from feedback, plus evaluation support for the dynamic operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .errors import EmptyUpdate, UnknownWorld, UntruthfulFeedback
from .explanation import Explanation, FeedbackRecord, derive_term
from .formulas import DynExp, DynFb, Formula, PropFormula, curried
from .model import Agent, Model
from .terms import Term, Var, is_ground, substitute

__all__ = [
    "EvidenceAddition",
    "WorldFilter",
    "UpdateTrace",
    "learn_from_explanation",
    "update_by_worlds",
    "learn_from_feedback",
    "eval_dynamic",
    "apply_dynamic_prefix",
    "substitute",
]


@dataclass(frozen=True)
class EvidenceAddition:
    term: Term
    world: str
    formula: PropFormula


@dataclass(frozen=True)
class WorldFilter:
    formula: PropFormula
    case: str
    removed: Tuple[str, ...]


@dataclass
class ExplanationTrace:
    explanation: Explanation
    world: str
    added: Tuple[EvidenceAddition, ...] = ()


@dataclass
class FeedbackTrace:
    steps: Tuple[WorldFilter, ...] = ()

    @property
    def removed_any(self) -> bool:
        return any(step.removed for step in self.steps)


@dataclass
class UpdateTrace:
    """Replayable record of one update step."""

    kind: str  # "explanation" | "feedback"
    explanation: ExplanationTrace | None = None
    feedback: FeedbackTrace | None = None


def learn_from_explanation(
    m: Model, w: str, e: Explanation
) -> Tuple[Model, ExplanationTrace]:
    """The explainee's evidence update after hearing ``e`` at ``w``.

    Derived terms are computed against the incoming model; each derived
    formula is recorded under its derived term, and the claim's derived term
    is substituted for both open-assumption variables of the claim.  The
    explainer's evidence and all relations are untouched.
    """
    derived_nodes = [f for f in e.node_formulas() if not e.subtree(f).is_leaf]
    derived_terms = {f: derive_term(m, w, e, f) for f in derived_nodes}
    added: List[EvidenceAddition] = []
    ev = m.copy_evidence()
    at_w: Dict[Term, FrozenSet[PropFormula]] = dict(ev[Agent.EXPLAINEE].get(w, {}))
    original_at_w = dict(at_w)

    def add(t: Term, f: PropFormula):
        forms = at_w.get(t, frozenset())
        if f not in forms:
            at_w[t] = forms | {f}
            added.append(EvidenceAddition(t, w, f))

    for f, t in derived_terms.items():
        add(t, f)

    r = derived_terms[e.claim]
    targets = (Var(e.claim), Var(e.claim, e.hypothesis_order()))
    for s, forms in original_at_w.items():
        for x in targets:
            s_new = substitute(s, x, r)
            if s_new != s:
                for g in forms:
                    add(s_new, g)

    ev[Agent.EXPLAINEE][w] = at_w
    updated = Model(m.worlds, m.relations, ev, m.valuation, m.atoms)
    return updated, ExplanationTrace(e, w, tuple(added))


def update_by_worlds(m: Model, agent: Agent, x: Set[str]) -> Model:
    """Restrict the model to the world set ``x``.

    The updating agent's relation is intersected with ``x``×``x``; the other
    agent's relation keeps exactly the pairs whose endpoints survive, since
    the world set itself shrinks.
    """
    x = frozenset(x)
    if not x:
        raise EmptyUpdate("update by an empty set of worlds")
    if not x <= m.worlds:
        raise UnknownWorld(sorted(x - m.worlds)[0])
    if x == m.worlds:
        return m
    relations = {
        a: frozenset((u, v) for (u, v) in rel if u in x and v in x)
        for a, rel in m.relations.items()
    }
    evidence = {
        a: {w: dict(by_term) for w, by_term in by_world.items() if w in x}
        for a, by_world in m.evidence.items()
    }
    valuation = {name: ws & x for name, ws in m.valuation.items()}
    return Model(x, relations, evidence, valuation, m.atoms)


def learn_from_feedback(
    m: Model,
    fb: FeedbackRecord,
    actual: Optional[str] = None,
    order: Optional[List[PropFormula]] = None,
) -> Tuple[Model, FeedbackTrace]:
    """The explainer's world-set updates after hearing feedback.

    Per explanation node one of four cases applies (hypothesis/derived ×
    bit 1/0, the derived-0 case only when every premise carries bit 1); nodes
    matching no case are ignored.  When ``actual`` is given, any update that
    would exclude it is rejected as untruthful.  ``order`` overrides the
    default post-order node processing (the result is order-independent).
    """
    from .model import can_justify

    e = fb.exp
    if order is None:
        order = list(_post_order(e))
    steps: List[WorldFilter] = []
    current = m
    for f in order:
        sub = e.subtree(f)
        bit = fb.value(f)
        if sub.is_leaf:
            target: PropFormula = f
            case = "hyp-1" if bit == 1 else "hyp-0"
            applies = True
        else:
            target = curried(e.premises_of(f), f)
            if bit == 1:
                case = "ded-1"
                applies = True
            else:
                case = "ded-0"
                applies = all(fb.value(p) == 1 for p in e.premises_of(f))
        if not applies:
            continue
        want = bit == 1
        u = frozenset(
            w
            for w in current.worlds
            if (can_justify(current, w, Agent.EXPLAINEE, target) is not None) == want
        )
        if actual is not None and actual not in u:
            raise UntruthfulFeedback(f, actual)
        removed = tuple(sorted(current.worlds - u))
        current = update_by_worlds(current, Agent.EXPLAINER, u)
        steps.append(WorldFilter(f, case, removed))
    return current, FeedbackTrace(tuple(steps))


def _post_order(e: Explanation):
    for sub in e.premises:
        yield from _post_order(sub)
    yield e.claim


def apply_dynamic_prefix(m: Model, w: str, f: Formula) -> Tuple[Model, Formula]:
    """Peel the maximal prefix of dynamic operators off ``f`` and apply the
    updates rightmost (innermost) first, matching the temporal reading of
    nested announcement chains."""
    ops = []
    body = f
    while isinstance(body, (DynExp, DynFb)):
        ops.append(body)
        body = body.body
    current = m
    for op in reversed(ops):
        if isinstance(op, DynExp):
            if Agent(op.agent) is not Agent.EXPLAINEE:
                raise ValueError("only the explainee hears explanations")
            current, _ = learn_from_explanation(current, w, op.exp)
        else:
            if Agent(op.agent) is not Agent.EXPLAINER:
                raise ValueError("only the explainer hears feedback")
            current, _ = learn_from_feedback(current, op.fb)
    return current, body


def eval_dynamic(m: Model, w: str, f: Formula) -> bool:
    """Evaluate a formula that may carry dynamic operators."""
    from .model import evaluate

    return evaluate(m, w, f)
