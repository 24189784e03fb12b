"""Exception types shared across the engine."""


class XconvError(Exception):
    """Base class for all engine errors."""


class UnknownWorld(XconvError):
    def __init__(self, world):
        super().__init__(f"unknown world: {world!r}")
        self.world = world


class UnknownAtom(XconvError):
    def __init__(self, name):
        super().__init__(f"undeclared atom: {name!r}")
        self.name = name


class NodeNotDerived(XconvError):
    """Raised when a derived term is requested for a non-derived node."""


class DuplicateNodeFormula(XconvError):
    """An explanation tree contains the same formula at two nodes."""


class EmptyUpdate(XconvError):
    """A world-set update would leave the model without worlds."""


class UntruthfulFeedback(XconvError):
    """A feedback update would remove the actual world."""

    def __init__(self, formula, world):
        super().__init__(
            f"feedback update on {formula} would exclude the actual world {world!r}"
        )
        self.formula = formula
        self.world = world


class FeedbackShapeError(XconvError):
    """Feedback bits do not fit the explanation (shape or monotonicity)."""

    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = tuple(path)


class TraceMismatch(XconvError):
    """Replaying a transcript diverged from its recorded trace."""


class ParseError(XconvError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class DocumentError(XconvError):
    """A structured document failed to load."""
