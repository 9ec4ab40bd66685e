"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit status 2)."""


class NotContinuousError(InputError):
    """A map was required to be a morphism of closure spaces but is not."""

    def __init__(self, what: str, witness: int | None = None):
        self.witness = witness
        detail = f"{what} is not continuous"
        if witness is not None:
            detail += f" (preimage of closed mask {witness:#b} is not closed)"
        super().__init__(detail)


class CapExceeded(InputError):
    """A size cap on exhaustive enumeration was exceeded."""


class UndecidedAtBound(RuntimeError):
    """An enumeration-based decision could not be made within its bound."""


class PreconditionError(InputError):
    """A named precondition clause failed."""

    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(f"precondition failed: {clause}")


class EscalationContradiction(AssertionError):
    """The escalation step produced a set violating its own guarantee."""
