"""Typed failures raised by the analysis pipeline.

Every error carries a short stable ``code`` used in reports, so callers can
tell *which* structural requirement an input violated without parsing
messages.  All of these mean "input rejected" rather than "internal bug".
"""

from __future__ import annotations


class AnalysisError(Exception):
    """Base class for input-rejection failures."""

    code = "analysis"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class NotHeckeError(AnalysisError):
    """No single label q satisfies (c - q)(c + 1) = 0."""

    code = "NotHecke"


class LabelAmbiguousError(AnalysisError):
    """c = -id, so every label fits vacuously; rejected."""

    code = "LabelAmbiguous"


class BadLabelError(AnalysisError):
    """Label q is 0 or a nontrivial root of unity (over Q: q = -1)."""

    code = "BadLabel"


class NotInvariantError(AnalysisError):
    """Matrix does not map the given subspace into itself."""

    code = "NotInvariant"


class NotScalarError(AnalysisError):
    """Matrix preserves the subspace but is not a scalar on it."""

    code = "NotScalar"


class NotFrobeniusShapeError(AnalysisError):
    """Top graded component of the quadratic dual is not one-dimensional."""

    code = "NotFrobeniusShape"


class DegenerateFormError(AnalysisError):
    code = "DegenerateForm"

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"DegenerateForm({degree})")


class NotMultiplicativeError(AnalysisError):
    """Candidate Nakayama map fails to be an algebra automorphism."""

    code = "NotMultiplicative"


class NotExactError(AnalysisError):
    code = "NotExact"

    def __init__(self, internal_degree: int, position: int):
        self.internal_degree = internal_degree
        self.position = position
        super().__init__(f"NotExact(t={internal_degree}, m={position})")


class NotASRegularError(AnalysisError):
    code = "NotASRegular"

    def __init__(self, position: int, internal_degree: int):
        self.position = position
        self.internal_degree = internal_degree
        super().__init__(
            f"NotASRegular(position={position}, internal_degree={internal_degree})"
        )


class ParseError(AnalysisError):
    code = "ParseError"

    def __init__(self, reason: str, where: str = ""):
        self.reason = reason
        self.where = where
        loc = f" at {where}" if where else ""
        super().__init__(f"ParseError{loc}: {reason}")


class DimensionMismatchError(ParseError):
    code = "DimensionMismatch"

    def __init__(self, reason: str):
        AnalysisError.__init__(self, f"DimensionMismatch: {reason}")
        self.reason = reason
        self.where = ""


class BadScalarError(ParseError):
    code = "BadScalar"

    def __init__(self, token: object):
        AnalysisError.__init__(self, f"BadScalar({token!r})")
        self.reason = f"bad scalar {token!r}"
        self.where = ""
        self.token = token


class BadFamilyParamsError(AnalysisError):
    code = "BadFamilyParams"
