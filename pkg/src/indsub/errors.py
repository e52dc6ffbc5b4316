"""Exception hierarchy shared by every module.

Pipeline failures carry the stage that raised them plus a free-form
``details`` mapping so that reports can say *where* a run stopped.
"""


class IndsubError(Exception):
    def __init__(self, message="", *, stage=None, details=None):
        super().__init__(message)
        self.stage = stage
        self.details = dict(details or {})

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            msg = f"[{self.stage}] {msg}"
        return msg


class ParseError(IndsubError, ValueError):
    pass


class InvalidInput(IndsubError, ValueError):
    pass


class UnknownName(InvalidInput):
    pass


class HypothesisNotMet(IndsubError):
    pass


class NotFound(IndsubError):
    pass


class BudgetExhausted(IndsubError):
    pass


class Disconnected(IndsubError):
    pass


class LiftConflict(IndsubError):
    pass


class StructureViolation(IndsubError):
    pass


class TrialsExhausted(IndsubError):
    def __init__(self, message="", *, best_score=None, trials=0, **kw):
        super().__init__(message, **kw)
        self.best_score = best_score
        self.trials = trials


class RoundsExhausted(IndsubError):
    def __init__(self, message="", *, assignment=None, violated=(), **kw):
        super().__init__(message, **kw)
        self.assignment = assignment
        self.violated = tuple(violated)


class AttemptsExhausted(IndsubError):
    pass


class ConstructionFailed(IndsubError):
    pass


class EarlySuccess(IndsubError):
    """Raised by a lemma whose contradiction branch produced a certificate."""

    def __init__(self, certificate, message="induced subdivision found early", **kw):
        super().__init__(message, **kw)
        self.certificate = certificate
