"""Exception hierarchy shared by all modules."""


class ZZMError(Exception):
    """Base class for every error raised by this package."""

    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class PolynomialSyntaxError(ZZMError):
    code = "syntax"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

    def to_dict(self):
        d = super().to_dict()
        d["position"] = self.position
        return d


class DegenerateError(ZZMError):
    """Constant polynomial, parallel frequencies, singular lattice, ..."""

    code = "degenerate"


class PatchTooSmallError(ZZMError):
    code = "patch"


class LatticeError(ZZMError):
    code = "lattice"


class PreconditionError(ZZMError):
    code = "precondition"


class InvariantViolation(ZZMError):
    """A mathematical identity that must hold failed; indicates a bug or bad input."""

    code = "invariant"

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}

    def to_dict(self):
        d = super().to_dict()
        d["details"] = self.details
        return d


class CapExceededError(ZZMError):
    code = "cap"
