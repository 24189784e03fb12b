"""Explainer-side reasoning: availability, candidate enumeration,
uncertainty sets, preferences, why-sets, and most-preferred explanations."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .errors import DuplicateNodeFormula
from .explanation import Explanation, FeedbackRecord, derive_term, explanation_key
from .formulas import Box, PropFormula, Triangle, curried, decompose, neg
from .model import Agent, Model, can_justify, evaluate
from .terms import is_ground

MAX_NODES_ENV = "XCONV_MAX_NODES"


@dataclass(frozen=True)
class SearchBounds:
    max_depth: int = 6
    max_nodes: int = 24

    def __post_init__(self):
        if self.max_depth < 1 or self.max_nodes < 1:
            raise ValueError("search bounds must be at least 1")

    @classmethod
    def from_env(cls, max_depth: int = 6, max_nodes: int = 24) -> "SearchBounds":
        override = os.environ.get(MAX_NODES_ENV)
        if override:
            max_nodes = int(override)
        return cls(max_depth, max_nodes)


def is_available(m: Model, w: str, e: Explanation) -> bool:
    """Whether the explainer fully ground-justifies ``e`` and does not believe
    the explainee certainly cannot justify some part of it."""
    for p in e.hypotheses():
        if can_justify(m, w, Agent.EXPLAINER, p) is None:
            return False
    for q in e.derived():
        s = derive_term(m, w, e, q, Agent.EXPLAINER)
        if not is_ground(s) or q not in m.entries(Agent.EXPLAINER, w, s):
            return False
    for p in e.hypotheses():
        if evaluate(m, w, Box(Agent.EXPLAINER, neg(Triangle(Agent.EXPLAINEE, p)))):
            return False
    for q in e.derived():
        step = curried(e.premises_of(q), q)
        if evaluate(m, w, Box(Agent.EXPLAINER, neg(Triangle(Agent.EXPLAINEE, step)))):
            return False
    return True


@dataclass(frozen=True)
class EnumerationResult:
    explanations: FrozenSet[Explanation]
    complete: bool

    def __iter__(self):
        return iter(self.explanations)

    def __len__(self):
        return len(self.explanations)

    def __contains__(self, e):
        return e in self.explanations


def _rules(m: Model, w: str) -> Set[Tuple[Tuple[PropFormula, ...], PropFormula]]:
    """Inference steps the explainer ground-justifies at ``w``: each ground
    evidence formula read as a maximal right-nested implication."""
    rules = set()
    for t, forms in m.evidence_at(Agent.EXPLAINER, w).items():
        if not is_ground(t):
            continue
        for f in forms:
            premises, concl = decompose(f)
            if premises:
                rules.add((premises, concl))
    return rules


def enumerate_available(
    m: Model,
    w: str,
    hyps: FrozenSet[PropFormula],
    claim: PropFormula,
    b: SearchBounds,
) -> EnumerationResult:
    """All available explanations for ``claim`` within the bounds.

    Backward chaining over the explainer's ground rule entries, terminating at
    formulas with ground explainer witnesses.  With a non-empty ``hyps`` the
    hypothesis set must match exactly; an empty ``hyps`` leaves it free.  The
    completeness flag reports whether the bounds truncated the search.
    """
    hyps = frozenset(hyps)
    rules = _rules(m, w)
    terminals = {
        f
        for t, forms in m.evidence_at(Agent.EXPLAINER, w).items()
        if is_ground(t)
        for f in forms
    }
    truncated = [False]

    def trees(goal: PropFormula, depth_left: int, allow_leaf: bool) -> List[Explanation]:
        out: List[Explanation] = []
        if allow_leaf and goal in terminals:
            out.append(Explanation(goal))
        matching = [r for r in rules if r[1] == goal]
        if matching and depth_left <= 1:
            truncated[0] = True
            return out
        for premises, _ in matching:
            options = [trees(p, depth_left - 1, True) for p in premises]
            if any(not opts for opts in options):
                continue
            for combo in itertools.product(*options):
                try:
                    candidate = Explanation(goal, tuple(combo))
                except DuplicateNodeFormula:
                    continue
                if candidate.size() > b.max_nodes:
                    truncated[0] = True
                    continue
                out.append(candidate)
        return out

    candidates = trees(claim, b.max_depth, allow_leaf=False)
    found = frozenset(
        e
        for e in candidates
        if (not hyps or e.hypotheses() == hyps) and is_available(m, w, e)
    )
    return EnumerationResult(found, not truncated[0])


def uncertainty_set(m: Model, w: str, e: Explanation) -> FrozenSet[PropFormula]:
    """Parts of ``e`` the explainer is not certain the explainee can justify."""
    out = set()
    for f in e.hypotheses():
        if not evaluate(m, w, Box(Agent.EXPLAINER, Triangle(Agent.EXPLAINEE, f))):
            out.add(f)
    for f in e.derived():
        step = curried(e.premises_of(f), f)
        if not evaluate(m, w, Box(Agent.EXPLAINER, Triangle(Agent.EXPLAINEE, step))):
            out.add(f)
    return frozenset(out)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _preference_score(m: Model, w: str, e: Explanation) -> Tuple[int, int]:
    return (len(uncertainty_set(m, w, e)), len(e.derived()))


def prefer(m: Model, w: str, e1: Explanation, e2: Explanation) -> Ordering:
    """GREATER when ``e1`` is strictly preferred: fewer uncertain parts first,
    then fewer deduction steps."""
    s1 = _preference_score(m, w, e1)
    s2 = _preference_score(m, w, e2)
    if s1 < s2:
        return Ordering.GREATER
    if s1 > s2:
        return Ordering.LESS
    return Ordering.EQUAL


def why_set(fb: FeedbackRecord) -> FrozenSet[PropFormula]:
    """Formulas deserving further explanation: bit 0 and either a hypothesis
    or a derived node whose premises all carry bit 1."""
    e = fb.exp
    out = set()
    for f in e.node_formulas():
        if fb.value(f) != 0:
            continue
        sub = e.subtree(f)
        if sub.is_leaf or all(fb.value(p) == 1 for p in e.premises_of(f)):
            out.add(f)
    return frozenset(out)


def most_preferred(
    m0: Model,
    w: str,
    question: PropFormula,
    rounds: List[Tuple[Explanation, FeedbackRecord]],
    b: SearchBounds,
) -> Tuple[FrozenSet[Explanation], Model]:
    """Maxima of the candidate set under the preference pre-order, evaluated
    in the model obtained by replaying the conversation history.

    Candidates are the available explanations for the initial question plus,
    after the latest feedback, the available follow-ups for its why-set.
    Returns the maxima together with the replayed model.
    """
    from .dynamics import learn_from_explanation, learn_from_feedback

    m = m0
    for e, fb in rounds:
        m, _ = learn_from_explanation(m, w, e)
        m, _ = learn_from_feedback(m, fb)

    candidates: Set[Explanation] = set(enumerate_available(m, w, frozenset(), question, b))
    if rounds:
        last_exp, last_fb = rounds[-1]
        for g in why_set(last_fb):
            follow = enumerate_available(
                m, w, frozenset(last_exp.premises_of(g)), g, b
            )
            candidates.update(follow.explanations)
    if not candidates:
        return frozenset(), m

    scored = {e: _preference_score(m, w, e) for e in candidates}
    best = min(scored.values())
    return frozenset(e for e, s in scored.items() if s == best), m
