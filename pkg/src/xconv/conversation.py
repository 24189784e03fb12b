"""The explainer-explainee conversation loop and its transcript."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Protocol, Tuple

from .dynamics import (
    ExplanationTrace,
    FeedbackTrace,
    learn_from_explanation,
    learn_from_feedback,
)
from .errors import FeedbackShapeError, TraceMismatch, UntruthfulFeedback
from .explanation import (
    Explanation,
    FeedbackRecord,
    compute_feedback,
    derive_term,
    explanation_key,
)
from .formulas import PropFormula
from .model import Agent, Model, can_justify
from .selection import SearchBounds, most_preferred
from .terms import Term, is_ground


class Status(str, Enum):
    JUSTIFIED = "JustifiedByExplainee"
    EXHAUSTED = "ExplainerExhausted"
    BOUNDS_REACHED = "BoundsReached"
    UNTRUTHFUL = "UntruthfulFeedbackDetected"


@dataclass
class ConversationHistory:
    question: PropFormula
    rounds: List[Tuple[Explanation, FeedbackRecord]] = field(default_factory=list)

    def prefix(self, k: int) -> "ConversationHistory":
        return ConversationHistory(self.question, list(self.rounds[:k]))


@dataclass
class RoundRecord:
    explanation: Explanation
    feedback: FeedbackRecord
    explanation_trace: ExplanationTrace
    feedback_trace: FeedbackTrace


@dataclass
class Transcript:
    question: PropFormula
    world: str
    rounds: List[RoundRecord]
    status: Status
    final_term: Optional[Term] = None

    @property
    def history(self) -> ConversationHistory:
        return ConversationHistory(
            self.question, [(r.explanation, r.feedback) for r in self.rounds]
        )


class ExplaineeDriver(Protocol):
    def feedback_for(self, model: Model, world: str, e: Explanation) -> FeedbackRecord: ...


class SimulatedExplainee:
    """Answers with the model-resident explainee's truthful feedback."""

    def feedback_for(self, model: Model, world: str, e: Explanation) -> FeedbackRecord:
        return compute_feedback(model, world, e)


class ScriptedExplainee:
    """Replays a fixed list of feedback bit trees (for tests and replays)."""

    def __init__(self, bit_trees):
        self.bit_trees = list(bit_trees)
        self._next = 0

    def feedback_for(self, model: Model, world: str, e: Explanation) -> FeedbackRecord:
        tree = self.bit_trees[self._next]
        self._next += 1
        return FeedbackRecord.from_bit_tree(e, tree)


class ConversationEngine:
    """Stepwise conversation state machine.

    Drives one conversation: selection of the next explanation, the
    explainee's learning on announcement, and the explainer's learning on
    feedback.  `run_conversation` wraps it with a driver; the session API uses
    it directly.
    """

    def __init__(
        self,
        m0: Model,
        actual: str,
        claim: PropFormula,
        bounds: Optional[SearchBounds] = None,
        max_rounds: int = 10,
    ):
        self.m0 = m0
        self.model = m0
        self.actual = actual
        self.claim = claim
        self.bounds = bounds or SearchBounds.from_env()
        self.max_rounds = max_rounds
        self.history = ConversationHistory(claim)
        self.rounds: List[RoundRecord] = []
        self.status: Optional[Status] = None
        self.final_term: Optional[Term] = None
        self.pending: Optional[Explanation] = None
        self._pending_trace: Optional[ExplanationTrace] = None
        self._stale: set = set()

    def next_explanation(self) -> Optional[Explanation]:
        """Select and announce the next explanation; the explainee learns from
        it immediately.  Returns None when the conversation is over."""
        if self.status is not None:
            return None
        if self.pending is not None:
            return self.pending
        if len(self.rounds) >= self.max_rounds:
            self.status = Status.BOUNDS_REACHED
            return None
        candidates, _ = most_preferred(
            self.m0, self.actual, self.claim, self.history.rounds, self.bounds
        )
        candidates = [e for e in candidates if e not in self._stale]
        if not candidates:
            self.status = Status.EXHAUSTED
            return None
        choice = min(candidates, key=lambda e: (len(e.derived()), explanation_key(e)))
        self.model, trace = learn_from_explanation(self.model, self.actual, choice)
        self.pending = choice
        self._pending_trace = trace
        return choice

    def submit_feedback(self, fb: FeedbackRecord) -> Status | None:
        """Process feedback on the pending explanation; returns the terminal
        status if the conversation ended, else None."""
        if self.pending is None:
            raise FeedbackShapeError("no explanation is pending feedback")
        if fb.exp != self.pending:
            raise FeedbackShapeError("feedback does not match the pending explanation")
        try:
            self.model, fb_trace = learn_from_feedback(self.model, fb, self.actual)
        except UntruthfulFeedback:
            self.status = Status.UNTRUTHFUL
            self.rounds.append(
                RoundRecord(self.pending, fb, self._pending_trace, FeedbackTrace())
            )
            self.history.rounds.append((self.pending, fb))
            self.pending = None
            return self.status

        self.rounds.append(RoundRecord(self.pending, fb, self._pending_trace, fb_trace))
        self.history.rounds.append((self.pending, fb))
        if not fb_trace.removed_any:
            self._stale.add(self.pending)

        if fb.all_ones:
            if self.pending.claim == self.claim:
                term = derive_term(self.model, self.actual, self.pending, self.claim)
            else:
                term = can_justify(self.model, self.actual, Agent.EXPLAINEE, self.claim)
            if term is not None and is_ground(term):
                self.status = Status.JUSTIFIED
                self.final_term = term
        self.pending = None
        return self.status

    def transcript(self) -> Transcript:
        status = self.status if self.status is not None else Status.BOUNDS_REACHED
        return Transcript(self.claim, self.actual, list(self.rounds), status, self.final_term)


def run_conversation(
    m: Model,
    actual: str,
    claim: PropFormula,
    b: Optional[SearchBounds] = None,
    driver: Optional[ExplaineeDriver] = None,
    max_rounds: int = 10,
) -> Transcript:
    """Run the full loop with the given explainee driver (simulated by
    default) until a terminal status or the round limit."""
    driver = driver or SimulatedExplainee()
    engine = ConversationEngine(m, actual, claim, b, max_rounds)
    while engine.status is None:
        e = engine.next_explanation()
        if e is None:
            break
        fb = driver.feedback_for(engine.model, actual, e)
        engine.submit_feedback(fb)
    return engine.transcript()


def replay(m0: Model, t: Transcript) -> Model:
    """Re-apply all recorded updates to the base model, verifying the traces."""
    m = m0
    for i, record in enumerate(t.rounds):
        m, exp_trace = learn_from_explanation(m, t.world, record.explanation)
        if exp_trace.added != record.explanation_trace.added:
            raise TraceMismatch("explanation update diverged from the recorded trace")
        rejected = t.status is Status.UNTRUTHFUL and i == len(t.rounds) - 1
        if not rejected:
            m, fb_trace = learn_from_feedback(m, record.feedback)
            if fb_trace.steps != record.feedback_trace.steps:
                raise TraceMismatch("feedback update diverged from the recorded trace")
    return m
