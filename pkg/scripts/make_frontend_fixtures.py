"""Regenerate the browser client's driver-equivalence fixtures.

Each fixture holds a model document, a question, the simulated explainee's
per-round feedback, and the engine's canonical transcript string. The client
test replays the feedback through the HTTP API and compares transcripts
byte for byte.

Usage: python3 scripts/make_frontend_fixtures.py
"""

import json
import pathlib
import random

from xconv.conversation import run_conversation
from xconv.documents import canonical_json, feedback_to_doc, model_to_doc, transcript_to_doc
from xconv.fixtures import chatbot_model
from xconv.generate import planted_instance
from xconv.syntax import format_formula, parse_prop

OUT = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures.json"


def fixture(name, m, world, claim):
    t = run_conversation(m, world, claim)
    return {
        "name": name,
        "model": model_to_doc(m),
        "world": world,
        "claim": format_formula(claim),
        "rounds": [feedback_to_doc(r.feedback) for r in t.rounds],
        "status": t.status.value,
        "transcript": canonical_json(transcript_to_doc(t, m)),
    }


def main():
    fixtures = [fixture("chatbot", chatbot_model(), "w0", parse_prop("drink_water"))]
    rng = random.Random(2024)
    for i in range(20):
        m, w, claim, _ = planted_instance(rng)
        fixtures.append(fixture(f"planted-{i}", m, w, claim))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixtures, indent=1) + "\n")
    print(f"wrote {len(fixtures)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
