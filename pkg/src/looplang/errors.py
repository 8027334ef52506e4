"""Exception hierarchy shared across the package."""


class LoopError(ValueError):
    """Base class for all library errors."""


class SpecError(LoopError):
    """A loaded file or built-in spec failed validation.

    ``path`` is a JSON-pointer-like location of the offending value.
    """

    def __init__(self, message, path=""):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class EmptyWordInSemigroupMode(LoopError):
    pass


class NotAMonoid(LoopError):
    pass


class NotAGroup(LoopError):
    pass


class NotRightCancellative(LoopError):
    pass


class OracleLacksDivision(LoopError):
    pass


class PreconditionViolated(LoopError):
    pass


class AlphabetMismatch(LoopError):
    pass


class SizeLimitExceeded(LoopError):
    pass


class NotEnoughElements(LoopError):
    pass


class NoIdentityWord(LoopError):
    pass


class NotALoopProblem(LoopError):
    pass


class BallTooSmall(LoopError):
    pass


class Unsupported(LoopError):
    pass
