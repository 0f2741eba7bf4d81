"""Exception hierarchy for framecast."""


class FramecastError(Exception):
    """Base class for every error raised by this package."""


class NoConvergence(FramecastError, ArithmeticError):
    """A Jacobi iteration exhausted its sweep budget."""


class AllZeroInput(FramecastError, ValueError):
    pass


class NotPositiveDefinite(FramecastError, ValueError):
    pass


class NotAFrame(FramecastError, ValueError):
    """The vectors do not span the space they are supposed to be a frame for."""


class IllConditioned(FramecastError, ArithmeticError):
    pass


class SpanMismatch(FramecastError, ValueError):
    pass


class ShapeMismatch(FramecastError, ValueError):
    pass


class DimensionMismatch(FramecastError, ValueError):
    pass


class PartitionInvalid(FramecastError, ValueError):
    pass


class DirectSumViolated(FramecastError, ValueError):
    pass


class DuplicateLambda(FramecastError, ValueError):
    pass


class BadInterval(FramecastError, ValueError):
    pass


class InadmissibleSpec(FramecastError, ValueError):
    """A spiral specification violates one of its admissibility inequalities.

    ``inequality`` holds the violated condition as text, e.g. ``"R*c < 1/2"``.
    """

    def __init__(self, inequality, detail=""):
        self.inequality = inequality
        msg = f"inadmissible spiral spec: requires {inequality}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
