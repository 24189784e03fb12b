"""Explanation trees, derived terms, understanding, and feedback bits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from .errors import DuplicateNodeFormula, FeedbackShapeError, NodeNotDerived
from .formulas import PropFormula, curried, prop_key
from .model import Agent, Model, can_justify
from .terms import Term, Var, apply_chain, is_ground


@dataclass(frozen=True)
class Explanation:
    """A finite tree of propositional formulas.

    Leaves are hypotheses, internal nodes are derived formulas, the root is
    the claim.  Every formula occurs at most once in the tree, so premise
    lookup by formula is well-defined.
    """

    claim: PropFormula
    premises: Tuple["Explanation", ...] = ()

    def __post_init__(self):
        seen = set()
        for f in self.node_formulas():
            if f in seen:
                raise DuplicateNodeFormula(f"formula occurs twice in explanation: {f}")
            seen.add(f)

    @property
    def is_leaf(self) -> bool:
        return not self.premises

    def node_formulas(self) -> Iterator[PropFormula]:
        """All node formulas, root first, children left to right."""
        yield self.claim
        for sub in self.premises:
            yield from sub.node_formulas()

    def subtree(self, f: PropFormula) -> Optional["Explanation"]:
        if f == self.claim:
            return self
        for sub in self.premises:
            found = sub.subtree(f)
            if found is not None:
                return found
        return None

    def premises_of(self, f: PropFormula) -> Tuple[PropFormula, ...]:
        node = self.subtree(f)
        if node is None:
            raise KeyError(f"formula not in explanation: {f}")
        return tuple(sub.claim for sub in node.premises)

    def hypotheses(self) -> FrozenSet[PropFormula]:
        if self.is_leaf:
            return frozenset([self.claim])
        return frozenset().union(*(sub.hypotheses() for sub in self.premises))

    def derived(self) -> FrozenSet[PropFormula]:
        if self.is_leaf:
            return frozenset()
        return frozenset([self.claim]).union(*(sub.derived() for sub in self.premises))

    def hypothesis_order(self) -> Tuple[PropFormula, ...]:
        """Hypotheses in left-to-right leaf order."""
        if self.is_leaf:
            return (self.claim,)
        out: Tuple[PropFormula, ...] = ()
        for sub in self.premises:
            out += sub.hypothesis_order()
        return out

    def size(self) -> int:
        return 1 + sum(sub.size() for sub in self.premises)

    def depth(self) -> int:
        if self.is_leaf:
            return 1
        return 1 + max(sub.depth() for sub in self.premises)


def explanation_key(e: Explanation):
    """Structural total order on explanations."""
    return (prop_key(e.claim), tuple(explanation_key(sub) for sub in e.premises))


def derive_term(
    m: Model, w: str, e: Explanation, node: PropFormula, agent: Agent = Agent.EXPLAINEE
) -> Term:
    """The agent's derived term of ``node`` with respect to ``e``.

    Ground witnesses are chosen by the canonical term order, which makes the
    construction deterministic even where several derived terms exist.
    """
    sub = e.subtree(node)
    if sub is None or sub.is_leaf:
        raise NodeNotDerived(f"not a derived node of the explanation: {node}")
    premise_formulas = tuple(child.claim for child in sub.premises)
    step = curried(premise_formulas, node)
    d = can_justify(m, w, agent, step)
    if d is None:
        return Var(node, premise_formulas)
    args = []
    for child in sub.premises:
        if child.is_leaf:
            witness = can_justify(m, w, agent, child.claim)
            args.append(witness if witness is not None else Var(child.claim))
        else:
            args.append(derive_term(m, w, e, child.claim, agent))
    return apply_chain(d, args)


def understands(m: Model, w: str, e: Explanation) -> bool:
    """Whether the explainee's derived term of the claim is ground."""
    return is_ground(derive_term(m, w, e, e.claim))


def understands_oracle(m: Model, w: str, e: Explanation) -> bool:
    """Direct evidence check: every hypothesis and every deduction step has a
    ground witness.  Independent of the derived-term construction."""
    for f in e.hypotheses():
        if can_justify(m, w, Agent.EXPLAINEE, f) is None:
            return False
    for g in e.derived():
        if can_justify(m, w, Agent.EXPLAINEE, curried(e.premises_of(g), g)) is None:
            return False
    return True


@dataclass(frozen=True)
class FeedbackRecord:
    """A bit tree isomorphic to an explanation.

    Bit 1 on a hypothesis: the explainee can justify it.  Bit 1 on a derived
    node: the explainee understands the subexplanation rooted there.  A 0
    propagates to every node on the path to the root.
    """

    exp: Explanation
    bits: Tuple[Tuple[PropFormula, int], ...]

    def __post_init__(self):
        by_formula = dict(self.bits)
        nodes = list(self.exp.node_formulas())
        if set(by_formula) != set(nodes) or len(self.bits) != len(nodes):
            raise FeedbackShapeError("feedback bits do not cover the explanation nodes")
        if any(b not in (0, 1) for _, b in self.bits):
            raise FeedbackShapeError("feedback values must be 0 or 1")
        _check_monotone(self.exp, by_formula, ())

    def value(self, f: PropFormula) -> int:
        for formula, bit in self.bits:
            if formula == f:
                return bit
        raise KeyError(f"formula not in feedback: {f}")

    @property
    def all_ones(self) -> bool:
        return all(b == 1 for _, b in self.bits)

    def bit_tree(self):
        """Nested [bit, children] structure in the explanation's shape."""

        def build(node: Explanation):
            return [self.value(node.claim), [build(sub) for sub in node.premises]]

        return build(self.exp)

    @classmethod
    def from_bit_tree(cls, exp: Explanation, tree) -> "FeedbackRecord":
        bits = []

        def walk(node: Explanation, t, path):
            if not isinstance(t, (list, tuple)) or len(t) != 2:
                raise FeedbackShapeError("malformed bits node", path)
            bit, children = t
            if bit not in (0, 1):
                raise FeedbackShapeError(f"bit must be 0 or 1, got {bit!r}", path)
            if len(children) != len(node.premises):
                raise FeedbackShapeError(
                    f"expected {len(node.premises)} children, got {len(children)}", path
                )
            bits.append((node.claim, bit))
            for i, (sub, ct) in enumerate(zip(node.premises, children)):
                walk(sub, ct, path + (i,))

        walk(exp, tree, ())
        return cls(exp, tuple(bits))


def _check_monotone(node: Explanation, by_formula: Dict[PropFormula, int], path):
    bit = by_formula[node.claim]
    for i, sub in enumerate(node.premises):
        if by_formula[sub.claim] == 0 and bit == 1:
            raise FeedbackShapeError(
                "a zero below a one violates feedback monotonicity", path + (i,)
            )
        _check_monotone(sub, by_formula, path + (i,))


def compute_feedback(m: Model, w: str, e: Explanation) -> FeedbackRecord:
    """The explainee's truthful feedback on ``e`` at ``w``."""
    bits = []
    for f in e.node_formulas():
        sub = e.subtree(f)
        if sub.is_leaf:
            bit = 1 if can_justify(m, w, Agent.EXPLAINEE, f) is not None else 0
        else:
            bit = 1 if is_ground(derive_term(m, w, e, f)) else 0
        bits.append((f, bit))
    return FeedbackRecord(e, tuple(bits))
