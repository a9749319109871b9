from __future__ import annotations


class CrossigError(Exception):
    """Base class; `payload` is a JSON-ready dict for machine-readable reports."""

    code = "error"

    def __init__(self, message: str = "", **payload):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.payload = payload

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": self.message}
        out.update(self.payload)
        return out


class MalformedTable(CrossigError):
    code = "MalformedTable"


class AxiomViolation(CrossigError):
    code = "AxiomViolation"

    def __init__(self, axiom: str, witness, message: str = ""):
        super().__init__(message or f"axiom {axiom} fails at {list(witness)}", axiom=axiom, witness=list(witness))
        self.axiom = axiom
        self.witness = tuple(witness)


class NotAPath(CrossigError):
    code = "NotAPath"


class NotComposable(CrossigError):
    code = "NotComposable"


class ClosureBoundExceeded(CrossigError):
    code = "ClosureBoundExceeded"


class MalformedComposition(CrossigError):
    code = "MalformedComposition"


class NoRestriction(CrossigError):
    code = "NoRestriction"


class NoFactorization(CrossigError):
    code = "NoFactorization"


class NoTranspose(CrossigError):
    code = "NoTranspose"


class NonUniqueTranspose(CrossigError):
    code = "NonUniqueTranspose"


class NotAssociative(CrossigError):
    code = "NotAssociative"


class NotRegular(CrossigError):
    code = "NotRegular"


class UnknownFixture(CrossigError):
    code = "UnknownFixture"


class SizeBound(CrossigError):
    code = "SizeBound"


class InvalidInput(CrossigError):
    code = "InvalidInput"
