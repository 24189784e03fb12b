"""Structured document formats: models, explanations, feedback, transcripts.

All documents are JSON with a version field.  Digests are computed over
canonical serializations (sorted keys, no insignificant whitespace).
"""

from __future__ import annotations

import hashlib
import json
from typing import Dict, List, Optional, Tuple

from .conversation import RoundRecord, Status, Transcript
from .dynamics import (
    EvidenceAddition,
    ExplanationTrace,
    FeedbackTrace,
    WorldFilter,
)
from .errors import DocumentError
from .explanation import Explanation, FeedbackRecord
from .model import Agent, Model, make_model, validate_model
from .syntax import format_formula, format_term, parse_prop, parse_term

MODEL_VERSION = 1
TRANSCRIPT_VERSION = 1


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _closure(pairs, worlds):
    """Reflexive-transitive closure over the given world set."""
    rel = {tuple(p) for p in pairs}
    rel |= {(w, w) for w in worlds}
    changed = True
    while changed:
        changed = False
        for (u, v) in list(rel):
            for (v2, z) in list(rel):
                if v2 == v and (u, z) not in rel:
                    rel.add((u, z))
                    changed = True
    return rel


def model_to_doc(m: Model) -> dict:
    evidence = []
    for agent in Agent:
        for w in sorted(m.evidence.get(agent, {})):
            for t, forms in m.evidence[agent][w].items():
                for f in forms:
                    evidence.append(
                        {
                            "agent": int(agent),
                            "term": format_term(t),
                            "world": w,
                            "formula": format_formula(f),
                        }
                    )
    evidence.sort(key=lambda e: (e["agent"], e["term"], e["world"], e["formula"]))
    return {
        "version": MODEL_VERSION,
        "atoms": sorted(m.atoms),
        "worlds": sorted(m.worlds),
        "relations": {
            str(int(a)): sorted([u, v] for (u, v) in m.relations.get(a, frozenset()))
            for a in Agent
        },
        "evidence": evidence,
        "valuation": {name: sorted(ws) for name, ws in sorted(m.valuation.items())},
    }


def model_from_doc(doc: dict, strict: bool = False, validate: bool = True) -> Model:
    """Build and validate a model from its document form.

    Relation edge lists are completed to their reflexive-transitive closure by
    default; with ``strict`` a non-closed input is rejected instead.
    """
    try:
        version = doc.get("version", MODEL_VERSION)
        if version != MODEL_VERSION:
            raise DocumentError(f"unsupported model document version {version}")
        worlds = list(doc["worlds"])
        atoms = list(doc["atoms"])
        relations = {}
        for key, pairs in doc.get("relations", {}).items():
            agent = Agent(int(key))
            closed = _closure(pairs, worlds)
            if strict and closed != {tuple(p) for p in pairs}:
                raise DocumentError(
                    f"relation R_{int(agent)} is not reflexive-transitive closed"
                )
            relations[agent] = closed
        for agent in Agent:
            relations.setdefault(agent, _closure([], worlds))
        evidence: Dict[Agent, Dict[str, Dict]] = {a: {} for a in Agent}
        for i, entry in enumerate(doc.get("evidence", [])):
            try:
                agent = Agent(int(entry["agent"]))
                term = parse_term(entry["term"])
                world = entry["world"]
                formula = parse_prop(entry["formula"])
            except Exception as exc:
                raise DocumentError(f"evidence entry {i}: {exc}") from exc
            by_term = evidence[agent].setdefault(world, {})
            by_term[term] = by_term.get(term, frozenset()) | {formula}
        valuation = {name: ws for name, ws in doc.get("valuation", {}).items()}
        m = make_model(worlds, relations, evidence, valuation, atoms)
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed model document: {exc}") from exc
    if validate:
        violations = validate_model(m)
        if violations:
            lines = "; ".join(f"{v.kind}: {v.detail}" for v in violations)
            raise DocumentError(f"model violates well-formedness: {lines}")
    return m


def load_model(path: str, strict: bool = False, validate: bool = True) -> Model:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: {exc}") from exc
    return model_from_doc(doc, strict=strict, validate=validate)


def model_digest(m: Model) -> str:
    return hashlib.sha256(canonical_json(model_to_doc(m)).encode()).hexdigest()


def explanation_to_doc(e: Explanation) -> dict:
    return {
        "claim": format_formula(e.claim),
        "premises": [explanation_to_doc(sub) for sub in e.premises],
    }


def explanation_from_doc(doc: dict) -> Explanation:
    try:
        claim = parse_prop(doc["claim"])
        premises = tuple(explanation_from_doc(sub) for sub in doc.get("premises", []))
    except DocumentError:
        raise
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed explanation document: {exc}") from exc
    return Explanation(claim, premises)


def load_explanation(path: str) -> Explanation:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: {exc}") from exc
    return explanation_from_doc(doc)


def feedback_to_doc(fb: FeedbackRecord) -> dict:
    def build(node: Explanation) -> dict:
        return {
            "value": fb.value(node.claim),
            "premises": [build(sub) for sub in node.premises],
        }

    return build(fb.exp)


def doc_to_bit_tree(doc) -> list:
    if not isinstance(doc, dict):
        raise DocumentError("feedback nodes must be objects with value/premises")
    return [doc.get("value"), [doc_to_bit_tree(sub) for sub in doc.get("premises", [])]]


def feedback_from_doc(exp: Explanation, doc: dict) -> FeedbackRecord:
    return FeedbackRecord.from_bit_tree(exp, doc_to_bit_tree(doc))


def transcript_to_doc(t: Transcript, base_model: Model) -> dict:
    rounds = []
    for r in t.rounds:
        rounds.append(
            {
                "explanation": explanation_to_doc(r.explanation),
                "feedback": feedback_to_doc(r.feedback),
                "explanation_trace": [
                    {
                        "term": format_term(a.term),
                        "world": a.world,
                        "formula": format_formula(a.formula),
                    }
                    for a in r.explanation_trace.added
                ],
                "feedback_trace": [
                    {
                        "formula": format_formula(s.formula),
                        "case": s.case,
                        "removed": list(s.removed),
                    }
                    for s in r.feedback_trace.steps
                ],
            }
        )
    return {
        "version": TRANSCRIPT_VERSION,
        "model_digest": model_digest(base_model),
        "world": t.world,
        "claim": format_formula(t.question),
        "status": t.status.value,
        "final_term": format_term(t.final_term) if t.final_term is not None else None,
        "rounds": rounds,
    }


def transcript_from_doc(doc: dict) -> Transcript:
    try:
        version = doc.get("version", TRANSCRIPT_VERSION)
        if version != TRANSCRIPT_VERSION:
            raise DocumentError(f"unsupported transcript version {version}")
        claim = parse_prop(doc["claim"])
        rounds = []
        for rd in doc["rounds"]:
            exp = explanation_from_doc(rd["explanation"])
            fb = feedback_from_doc(exp, rd["feedback"])
            added = tuple(
                EvidenceAddition(parse_term(a["term"]), a["world"], parse_prop(a["formula"]))
                for a in rd.get("explanation_trace", [])
            )
            steps = tuple(
                WorldFilter(parse_prop(s["formula"]), s["case"], tuple(s["removed"]))
                for s in rd.get("feedback_trace", [])
            )
            rounds.append(
                RoundRecord(exp, fb, ExplanationTrace(exp, doc["world"], added), FeedbackTrace(steps))
            )
        final_term = doc.get("final_term")
        return Transcript(
            question=claim,
            world=doc["world"],
            rounds=rounds,
            status=Status(doc["status"]),
            final_term=parse_term(final_term) if final_term else None,
        )
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed transcript document: {exc}") from exc


def verify_transcript_model(doc: dict, m0: Model) -> None:
    if doc.get("model_digest") != model_digest(m0):
        raise DocumentError("transcript digest does not match the base model")
