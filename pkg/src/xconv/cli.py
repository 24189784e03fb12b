"""Command-line interface.

Exit codes: 0 success, 1 domain failure (validation violations, unjustified
conversations), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .conversation import SimulatedExplainee, Status, run_conversation
from .documents import (
    DocumentError,
    explanation_to_doc,
    feedback_to_doc,
    load_explanation,
    load_model,
    transcript_to_doc,
)
from .errors import ParseError, XconvError
from .explanation import Explanation, FeedbackRecord, compute_feedback, derive_term
from .model import validate_model
from .selection import SearchBounds, enumerate_available
from .syntax import format_formula, format_term, parse_formula, parse_prop


def _bounds(args) -> SearchBounds:
    return SearchBounds.from_env(args.max_depth, args.max_nodes)


def _tree_lines(e: Explanation, bits=None, indent: int = 0) -> List[str]:
    mark = ""
    if bits is not None:
        mark = f"  [{bits.value(e.claim)}]"
    kind = "hypothesis" if e.is_leaf else "derived"
    lines = [f"{'  ' * indent}{format_formula(e.claim)}  ({kind}){mark}"]
    for sub in e.premises:
        lines.extend(_tree_lines(sub, bits, indent + 1))
    return lines


def cmd_validate(args) -> int:
    model = load_model(args.model, strict=args.strict, validate=False)
    violations = validate_model(model)
    for v in violations:
        print(f"{v.kind}: {v.detail}")
    return 1 if violations else 0


def cmd_eval(args) -> int:
    model = load_model(args.model, strict=args.strict)
    formula = parse_formula(args.formula)
    from .model import evaluate

    print("true" if evaluate(model, args.world, formula) else "false")
    return 0


def cmd_derive(args) -> int:
    model = load_model(args.model, strict=args.strict)
    exp = load_explanation(args.explanation)
    node = parse_prop(args.node) if args.node else exp.claim
    term = derive_term(model, args.world, exp, node)
    print(format_term(term))
    return 0


def cmd_feedback(args) -> int:
    model = load_model(args.model, strict=args.strict)
    exp = load_explanation(args.explanation)
    fb = compute_feedback(model, args.world, exp)
    print(json.dumps(feedback_to_doc(fb), indent=2))
    return 0


def cmd_enumerate(args) -> int:
    model = load_model(args.model, strict=args.strict)
    claim = parse_prop(args.claim)
    hyps = frozenset(parse_prop(h) for h in args.hyps.split(",")) if args.hyps else frozenset()
    result = enumerate_available(model, args.world, hyps, claim, _bounds(args))
    doc = {
        "complete": result.complete,
        "explanations": [explanation_to_doc(e) for e in sorted(result, key=str)],
    }
    print(json.dumps(doc, indent=2))
    return 0


class _InteractiveExplainee:
    """Reads feedback bits from stdin, one preorder-listed line per round."""

    def feedback_for(self, model, world, e: Explanation) -> FeedbackRecord:
        nodes = list(e.node_formulas())
        print("\n".join(_tree_lines(e)), file=sys.stderr)
        while True:
            print(
                f"enter {len(nodes)} bits (preorder: "
                + " ".join(format_formula(f) for f in nodes)
                + "):",
                file=sys.stderr,
            )
            line = sys.stdin.readline()
            if not line:
                raise EOFError("no feedback on stdin")
            parts = line.split()
            try:
                bits = [int(p) for p in parts]
                if len(bits) != len(nodes):
                    raise ValueError(f"expected {len(nodes)} bits")
                return FeedbackRecord(e, tuple(zip(nodes, bits)))
            except (ValueError, XconvError) as exc:
                print(f"invalid feedback: {exc}", file=sys.stderr)


def cmd_converse(args) -> int:
    model = load_model(args.model, strict=args.strict)
    claim = parse_prop(args.claim)
    driver = _InteractiveExplainee() if args.interactive else SimulatedExplainee()
    transcript = run_conversation(
        model, args.world, claim, _bounds(args), driver, args.max_rounds
    )
    if args.json:
        print(json.dumps(transcript_to_doc(transcript, model), indent=2))
    else:
        print(f"question: why {format_formula(claim)}?")
        for i, r in enumerate(transcript.rounds, start=1):
            print(f"round {i}:")
            print("\n".join(_tree_lines(r.explanation, r.feedback, indent=1)))
        print(f"status: {transcript.status.value}")
        if transcript.final_term is not None:
            print(f"justification: {format_term(transcript.final_term)}")
    return 0 if transcript.status is Status.JUSTIFIED else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import build_app

    app = build_app(model_path=args.model, cors_origin=args.cors_origin)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xconv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_model(p, world=True):
        p.add_argument("model", help="model document (JSON)")
        p.add_argument("--strict", action="store_true", help="reject non-closed relations")
        if world:
            p.add_argument("--world", required=True)

    p = sub.add_parser("validate", help="check model well-formedness")
    with_model(p, world=False)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("eval", help="evaluate a formula at a world")
    with_model(p)
    p.add_argument("--formula", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("derive", help="derived term of an explanation node")
    with_model(p)
    p.add_argument("--explanation", required=True)
    p.add_argument("--node", help="formula of the node (default: the claim)")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("feedback", help="the explainee's feedback on an explanation")
    with_model(p)
    p.add_argument("--explanation", required=True)
    p.set_defaults(fn=cmd_feedback)

    def with_bounds(p):
        p.add_argument("--max-depth", type=int, default=6)
        p.add_argument("--max-nodes", type=int, default=24)

    p = sub.add_parser("enumerate", help="available explanations for a claim")
    with_model(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--hyps", help="comma-separated hypothesis formulas")
    with_bounds(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("converse", help="run the explanation conversation")
    with_model(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--max-rounds", type=int, default=10)
    p.add_argument("--interactive", action="store_true")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--pretty", action="store_true")
    with_bounds(p)
    p.set_defaults(fn=cmd_converse)

    p = sub.add_parser("serve", help="start the session API")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--model", help="default model document for new sessions")
    p.add_argument("--cors-origin", help="allowed browser origin")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except XconvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
