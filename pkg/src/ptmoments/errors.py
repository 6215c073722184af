"""Exception types shared across the package."""


class UnresolvedMomentsError(LookupError):
    """A moment source cannot supply one or more required moment keys.

    Carries the list of missing keys so callers (and the CLI) can report
    exactly which moments a data table lacks.
    """

    def __init__(self, missing):
        self.missing = list(missing)
        names = ", ".join(str(m) for m in self.missing)
        super().__init__(f"unresolved moment keys: {names}")


class MomentDataError(ValueError):
    """Input state data or a moment table fails validation."""


class TruncationError(ValueError):
    """A requested exponent is not representable in the truncated Fock space."""


class ExponentLimitError(ValueError):
    """A per-mode operator exponent exceeds the configured maximum."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""


class NumericError(ArithmeticError):
    """A numeric result is not trustworthy (non-finite or residual too large)."""
