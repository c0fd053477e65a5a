"""Exception hierarchy shared by all modules."""


class CrossboundError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CrossboundError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ConvergenceError(CrossboundError, ArithmeticError):
    """Root finder or minimality check failed."""


class CertificateViolation(CrossboundError):
    """A computed certificate contradicts its exact oracle (implementation fault)."""


class BudgetExceeded(CrossboundError):
    def __init__(self, size, cap):
        super().__init__(f"family size {size} exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class InvalidFamilyError(CrossboundError, ValueError):
    pass


class IdenticalCurveError(CrossboundError, ValueError):
    pass


class TopologyError(CrossboundError):
    pass


class InfeasibleKError(CrossboundError, ValueError):
    """No integer k with |k - xq| <= 2 inside the admissible range."""


class PlanError(CrossboundError, ValueError):
    """Parameter chain produced values outside the admissible range."""


class InfeasiblePlanError(CrossboundError):
    pass
