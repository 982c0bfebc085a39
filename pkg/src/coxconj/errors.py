"""Exception types shared across the package."""


class CoxConjError(Exception):
    pass


class NonSpherical(CoxConjError):
    """A subset was required to generate a finite parabolic but does not."""


class NotAffine(CoxConjError):
    pass


class NotNormalizing(CoxConjError):
    pass


class NotARoot(CoxConjError):
    pass


class PreconditionViolated(CoxConjError):
    pass


class NotCyclicallyReduced(CoxConjError):
    pass


class InfiniteOrder(CoxConjError):
    pass


class FiniteOrder(CoxConjError):
    pass


class NotFullClosure(CoxConjError):
    """Parabolic closure of the input is a proper parabolic subgroup."""


class NotStandard(CoxConjError):
    pass


class VerificationFailed(CoxConjError):
    """An internally guaranteed identity failed; indicates a bug."""


class NotStable(CoxConjError):
    pass


class BudgetTooSmall(CoxConjError):
    pass


class TooLarge(CoxConjError):
    pass


class SearchBudgetExceeded(CoxConjError):
    pass


class InternalMismatch(CoxConjError):
    pass


class UnsupportedShape(CoxConjError):
    pass
