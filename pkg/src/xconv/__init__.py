"""Conversational explanation engine over multi-agent justification-logic models."""

from .conversation import (
    ConversationEngine,
    ConversationHistory,
    SimulatedExplainee,
    Status,
    Transcript,
    replay,
    run_conversation,
)
from .explanation import (
    Explanation,
    FeedbackRecord,
    compute_feedback,
    derive_term,
    understands,
    understands_oracle,
)
from .formulas import Atom, Box, DynExp, DynFb, Falsum, Implies, Just, Triangle, curried
from .model import Agent, Model, can_justify, check_validity_samples, evaluate, make_model, validate_model
from .selection import (
    SearchBounds,
    enumerate_available,
    is_available,
    most_preferred,
    prefer,
    uncertainty_set,
    why_set,
)
from .dynamics import learn_from_explanation, learn_from_feedback, substitute, update_by_worlds
from .syntax import format_formula, format_term, parse_formula, parse_prop, parse_term
from .terms import App, Const, Term, Var, is_ground

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
