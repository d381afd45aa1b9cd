"""
Exception hierarchy for the algebra engines.

Every error raised by the engines derives from ``AlgebraError`` which is a
``ValueError``, so callers that only care about bad input can keep catching
``ValueError``.
"""

from typing import Any, Optional


class AlgebraError(ValueError):
    """Base class for all engine errors"""


class UnknownGeneratorError(AlgebraError):
    def __init__(self, generator_id: str, context: str = ""):
        self.generator_id = generator_id
        suffix = f" in {context}" if context else ""
        super().__init__(f"Unknown generator '{generator_id}'{suffix}")


class DegreeError(AlgebraError):
    """Raised when a value has the wrong degree"""


class DifferentialError(AlgebraError):
    """d² ≠ 0 on a generator"""

    def __init__(self, generator_id: str, residue: Any):
        self.generator_id = generator_id
        self.residue = residue
        super().__init__(f"d(d({generator_id})) = {residue} is not zero")


class NotMinimalError(AlgebraError):
    """Raised when an operation needs a minimal algebra"""


class NotCocycleError(AlgebraError):
    """Raised when an attaching value is not a cocycle"""


class ComplexError(AlgebraError):
    """d∘d ≠ 0 inside a complex window"""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"d^{degree + 1} ∘ d^{degree} is not the zero matrix")


class NonNilpotentError(AlgebraError):
    def __init__(self, generator_id: str, bound: int):
        self.generator_id = generator_id
        self.bound = bound
        super().__init__(
            f"Operator is not nilpotent on the orbit of '{generator_id}' "
            f"(still non-zero after {bound} steps)"
        )


class NotAutomorphismError(AlgebraError):
    """Raised when a self-map is not invertible"""


class WindowError(AlgebraError):
    """Window overflow or a request that cannot be certified"""


class HypothesisError(AlgebraError):
    """A theorem hypothesis does not hold for the given input"""


class NotSimplyConnectedError(AlgebraError):
    def __init__(self, message: Optional[str] = None):
        super().__init__(message or "Algebra is not simply connected")
