"""Acceptance gate: one test per release criterion, each printing a
PASS/FAIL line.  Run with ``pytest tests/test_acceptance.py -v -s``."""

import random
import time

from xconv.conversation import Status, run_conversation
from xconv.documents import (
    canonical_json,
    explanation_from_doc,
    explanation_to_doc,
    transcript_from_doc,
    transcript_to_doc,
)
from xconv.dynamics import learn_from_explanation, learn_from_feedback
from xconv.explanation import compute_feedback, derive_term, understands, understands_oracle
from xconv.fixtures import (
    chain_explanation,
    chatbot_explanations,
    chatbot_model,
    detour_chain_model,
    preference_model,
    three_step_chain_model,
)
from xconv.formulas import Atom, Box, DynExp, Just, Triangle, curried, neg
from xconv.generate import (
    planted_instance,
    random_explanation,
    random_model_for_explanation,
    random_prop,
    random_term,
)
from xconv.model import Agent, check_validity_samples, evaluate, validate_model
from xconv.selection import Ordering, SearchBounds, enumerate_available, prefer
from xconv.syntax import format_formula, format_term, parse_prop, parse_term
from xconv.terms import contains, is_ground

ATOMS = ["a", "b", "c", "d", "e", "f", "g", "h"]


def _report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_three_step_chain_derived_terms():
    start = time.monotonic()
    e = chain_explanation("a", "b", "c")
    full = derive_term(three_step_chain_model(), "w", e, Atom("c"))
    no_hyp = derive_term(three_step_chain_model(drop=("tA",)), "w", e, Atom("c"))
    no_step = derive_term(three_step_chain_model(drop=("dAB",)), "w", e, Atom("c"))
    ok = (
        full == parse_term("dBC . (dAB . tA)")
        and no_hyp == parse_term("dBC . (dAB . x{a})")
        and no_step == parse_term("dBC . x{b | a}")
        and time.monotonic() - start < 1.0
    )
    _report("chain derived terms: full / open hypothesis / open step", ok)


def test_nested_learning_closes_open_term():
    start = time.monotonic()
    m = detour_chain_model()
    e = chain_explanation("a", "b", "c")
    e2 = chain_explanation("a", "d", "b")
    query = DynExp(
        2, e2, DynExp(2, e, Just(parse_term("dBC . (dDB . (dAD . tA))"), 2, Atom("c")))
    )
    ok = evaluate(m, "w", query) and time.monotonic() - start < 1.0
    _report("second explanation substitutes into the first (nested updates)", ok)


def test_preference_prefers_shorter_equally_uncertain():
    m = preference_model()
    short = chain_explanation("a", "b")
    long = chain_explanation("a", "c", "b")
    ok = prefer(m, "w", short, long) is Ordering.GREATER
    _report("preference: shorter of two equally uncertain explanations", ok)


def test_chatbot_conversation_end_to_end():
    start = time.monotonic()
    m = chatbot_model()
    t = run_conversation(m, "w0", Atom("drink_water"))
    first, _, second = chatbot_explanations()
    bits = [
        [r.feedback.value(f) for f in r.explanation.node_formulas()] for r in t.rounds
    ]
    ok = (
        [r.explanation for r in t.rounds] == [first, second]
        and bits == [[0, 0, 1], [1, 1, 1]]
        and t.status is Status.JUSTIFIED
        and format_term(t.final_term) == "r . (s . t)"
        and time.monotonic() - start < 1.0
    )
    _report("chatbot conversation: 1/0/0 then 1/1/1, justified by r . (s . t)", ok)


def test_understanding_equivalence_bulk():
    start = time.monotonic()
    rng = random.Random(101)
    bad = 0
    for _ in range(1000):
        e = random_explanation(rng, ATOMS)
        m, w = random_model_for_explanation(rng, e)
        if understands(m, w, e) != understands_oracle(m, w, e):
            bad += 1
    elapsed = time.monotonic() - start
    _report(
        "understanding == per-node witness oracle on 1000 random cases",
        bad == 0 and elapsed < 30.0,
        f"{bad} discrepancies, {elapsed:.1f}s",
    )


def test_persistence_of_unrelated_evidence():
    start = time.monotonic()
    rng = random.Random(103)
    bad = 0
    for _ in range(500):
        e = random_explanation(rng, ATOMS)
        m, w = random_model_for_explanation(rng, e)
        derived = [derive_term(m, w, e, f) for f in e.derived()]
        m2, _ = learn_from_explanation(m, w, e)
        for s, forms in m.evidence_at(Agent.EXPLAINEE, w).items():
            if not is_ground(s) or any(contains(s, d) for d in derived):
                continue
            after = m2.entries(Agent.EXPLAINEE, w, s)
            if forms != after:
                bad += 1
    elapsed = time.monotonic() - start
    _report(
        "evidence persistence for ground terms avoiding derived terms (500 cases)",
        bad == 0 and elapsed < 30.0,
        f"{bad} discrepancies, {elapsed:.1f}s",
    )


def test_updates_preserve_wellformedness():
    rng = random.Random(107)
    violations = 0
    for _ in range(300):
        e = random_explanation(rng, ATOMS)
        m, w = random_model_for_explanation(rng, e)
        m1, _ = learn_from_explanation(m, w, e)
        violations += len(validate_model(m1))
        fb = compute_feedback(m1, w, e)
        m2, _ = learn_from_feedback(m1, fb, actual=w)
        violations += len(validate_model(m2))
    _report(
        "every explanation/feedback update output is a well-formed model",
        violations == 0,
        f"{violations} violations over 300 update pairs",
    )


def test_feedback_belief_consequences():
    rng = random.Random(109)
    bad = 0
    for _ in range(500):
        e = random_explanation(rng, ATOMS)
        m, w = random_model_for_explanation(rng, e)
        m1, _ = learn_from_explanation(m, w, e)
        fb = compute_feedback(m1, w, e)
        m2, _ = learn_from_feedback(m1, fb, actual=w)
        for f in e.node_formulas():
            sub = e.subtree(f)
            bit = fb.value(f)
            if sub.is_leaf:
                target = f
            else:
                target = curried(e.premises_of(f), f)
                if bit == 0 and not all(fb.value(p) == 1 for p in e.premises_of(f)):
                    continue
            want = Triangle(2, target) if bit == 1 else neg(Triangle(2, target))
            if not evaluate(m2, w, Box(1, want)):
                bad += 1
    _report(
        "per-node belief consequences after feedback (500 records)",
        bad == 0,
        f"{bad} discrepancies",
    )


def test_planted_conversations_terminate_justified():
    start = time.monotonic()
    rng = random.Random(113)
    bounds = SearchBounds()
    failures = []
    for i in range(200):
        m, w, claim, _ = planted_instance(rng)
        n_candidates = len(enumerate_available(m, w, frozenset(), claim, bounds))
        t = run_conversation(m, w, claim, bounds, max_rounds=n_candidates + 1)
        if t.status is not Status.JUSTIFIED:
            failures.append((i, t.status, len(t.rounds)))
    elapsed = time.monotonic() - start
    _report(
        "200 planted conversations terminate justified within candidates+1 rounds",
        not failures and elapsed < 60.0,
        f"{len(failures)} failures, {elapsed:.1f}s",
    )


def test_logic_validities_and_closure_failure():
    ok = True
    for m in (three_step_chain_model(), detour_chain_model(), preference_model(), chatbot_model()):
        report = check_validity_samples(m)
        ok = ok and report.all_valid and report.jyb_checked > 0
    # evidence deliberately not closed under application
    closure = check_validity_samples(chatbot_model())
    ok = ok and len(closure.closure_counterexamples) > 0
    _report(
        "belief/factivity instance checks valid; application closure fails",
        ok,
        f"{len(closure.closure_counterexamples)} closure counterexamples found",
    )


def test_feedback_update_order_invariance():
    rng = random.Random(127)
    bad = 0
    for _ in range(200):
        e = random_explanation(rng, ATOMS)
        m, w = random_model_for_explanation(rng, e)
        m1, _ = learn_from_explanation(m, w, e)
        fb = compute_feedback(m1, w, e)
        order_a = list(e.node_formulas())
        order_b = list(e.node_formulas())
        rng.shuffle(order_a)
        rng.shuffle(order_b)
        a, _ = learn_from_feedback(m1, fb, order=order_a)
        b, _ = learn_from_feedback(m1, fb, order=order_b)
        if a != b:
            bad += 1
    _report(
        "feedback updates are order-independent (200 shuffled pairs)",
        bad == 0,
        f"{bad} discrepancies",
    )


def test_round_trips_bulk():
    rng = random.Random(131)
    bad = 0
    for _ in range(400):
        f = random_prop(rng, ATOMS)
        if parse_prop(format_formula(f)) != f:
            bad += 1
    for _ in range(300):
        t = random_term(rng, ATOMS)
        if parse_term(format_term(t)) != t:
            bad += 1
    for _ in range(250):
        e = random_explanation(rng, ATOMS)
        if explanation_from_doc(explanation_to_doc(e)) != e:
            bad += 1
    transcripts = 0
    for _ in range(60):
        m, w, claim, _ = planted_instance(rng)
        t = run_conversation(m, w, claim)
        doc = transcript_to_doc(t, m)
        if transcript_to_doc(transcript_from_doc(doc), m) != doc:
            bad += 1
        if canonical_json(doc) != canonical_json(transcript_to_doc(transcript_from_doc(doc), m)):
            bad += 1
        transcripts += 1
    _report(
        "print/parse round trips on 1010 formulas/terms/explanations/transcripts",
        bad == 0,
        f"{bad} mismatches",
    )
