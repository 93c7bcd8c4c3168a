"""Exception hierarchy shared by the library and the CLI (exit codes live in main.py)."""


class SixVertexError(Exception):
    """Root of every error raised by the toolkit."""


class ValidationError(SixVertexError):
    """Bad input: malformed literal, arity mismatch, failed precondition."""


class ParseError(ValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonPlanarError(ValidationError):
    def __init__(self, message, faces=None):
        self.faces = faces
        super().__init__(message)


class NotInClass(ValidationError):
    """A signature lies outside the class an evaluator requires."""


class SingularMatrix(ValidationError):
    pass


class CapExceeded(ValidationError):
    def __init__(self, what, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotTractable(ValidationError):
    pass


class LatticeRankError(ValidationError):
    pass


class InvariantViolation(SixVertexError):
    """An internal cross-check failed; always a bug, never bad input."""
