import random

import pytest

from xconv.conversation import (
    ConversationEngine,
    ScriptedExplainee,
    SimulatedExplainee,
    Status,
    replay,
    run_conversation,
)
from xconv.errors import FeedbackShapeError, TraceMismatch
from xconv.explanation import FeedbackRecord
from xconv.fixtures import chatbot_explanations, chatbot_model, three_step_chain_model
from xconv.formulas import Atom
from xconv.generate import planted_instance
from xconv.model import make_model
from xconv.syntax import format_term


def test_chatbot_conversation_end_to_end():
    m = chatbot_model()
    t = run_conversation(m, "w0", Atom("drink_water"))
    first, _, second = chatbot_explanations()
    assert [r.explanation for r in t.rounds] == [first, second]
    assert [
        [r.feedback.value(f) for f in r.explanation.node_formulas()] for r in t.rounds
    ] == [[0, 0, 1], [1, 1, 1]]
    assert t.status is Status.JUSTIFIED
    assert format_term(t.final_term) == "r . (s . t)"


def test_replay_reproduces_live_model():
    m = chatbot_model()
    engine = ConversationEngine(m, "w0", Atom("drink_water"))
    driver = SimulatedExplainee()
    while engine.status is None:
        e = engine.next_explanation()
        if e is None:
            break
        engine.submit_feedback(driver.feedback_for(engine.model, "w0", e))
    assert replay(m, engine.transcript()) == engine.model


def test_replay_detects_tampering():
    m = chatbot_model()
    t = run_conversation(m, "w0", Atom("drink_water"))
    t.rounds[0].explanation_trace.added = ()
    with pytest.raises(TraceMismatch):
        replay(m, t)


def test_exhausted_when_no_rules_exist():
    m = three_step_chain_model()  # the explainer has no evidence at all
    t = run_conversation(m, "w", Atom("c"))
    assert t.status is Status.EXHAUSTED
    assert t.rounds == []


def test_scripted_untruthful_feedback_terminates():
    m = chatbot_model()
    t = run_conversation(
        m, "w0", Atom("drink_water"), driver=ScriptedExplainee([[1, [[1, [[1, []]]]]]])
    )
    assert t.status is Status.UNTRUTHFUL
    assert len(t.rounds) == 1
    assert t.final_term is None


def test_replay_skips_rejected_final_feedback():
    m = chatbot_model()
    t = run_conversation(
        m, "w0", Atom("drink_water"), driver=ScriptedExplainee([[1, [[1, [[1, []]]]]]])
    )
    replayed = replay(m, t)
    assert "w0" in replayed.worlds


def test_feedback_must_match_pending():
    m = chatbot_model()
    engine = ConversationEngine(m, "w0", Atom("drink_water"))
    with pytest.raises(FeedbackShapeError):
        engine.submit_feedback(
            FeedbackRecord.from_bit_tree(chatbot_explanations()[1], [1, [[1, [[1, [[1, []]]]]]]])
        )
    e = engine.next_explanation()
    with pytest.raises(FeedbackShapeError):
        engine.submit_feedback(
            FeedbackRecord.from_bit_tree(chatbot_explanations()[1], [1, [[1, [[1, [[1, []]]]]]]])
        )
    engine.submit_feedback(FeedbackRecord.from_bit_tree(e, [0, [[0, [[1, []]]]]]))
    assert engine.pending is None


def test_round_limit_reached():
    m = chatbot_model()
    t = run_conversation(m, "w0", Atom("drink_water"), max_rounds=1)
    assert t.status is Status.BOUNDS_REACHED
    assert len(t.rounds) == 1


def test_planted_instances_reach_justification():
    rng = random.Random(47)
    for _ in range(40):
        m, w, claim, planted = planted_instance(rng)
        t = run_conversation(m, w, claim, max_rounds=10)
        assert t.status is Status.JUSTIFIED, (t.status, len(t.rounds))
        assert t.final_term is not None
        assert replay(m, t) is not None
