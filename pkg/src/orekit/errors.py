"""Exception hierarchy shared by all orekit modules."""


class OrekitError(Exception):
    """Base class for every error raised by orekit."""


class ZeroDenominator(OrekitError, ZeroDivisionError):
    pass


class NotAUnit(OrekitError, ZeroDivisionError):
    pass


class DegreeCapExceeded(OrekitError, OverflowError):
    pass


class ShapeMismatch(OrekitError, ValueError):
    pass


class ContextMismatch(OrekitError, ValueError):
    pass


class DivisionByZeroPoly(OrekitError, ZeroDivisionError):
    pass


class UnsupportedCoefficients(OrekitError, TypeError):
    pass


class ZeroInput(OrekitError, ValueError):
    pass


class NotQuantized(OrekitError, ValueError):
    pass


class NonzeroDelta(OrekitError, ValueError):
    pass


class IncompatibleEntrywisePart(OrekitError, ValueError):
    pass


class InnerSolveFailed(OrekitError):
    pass


class UnsupportedForm(OrekitError):
    pass


class ValidationError(OrekitError):
    """A construction-time invariant failed; ``invariant`` names it."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        self.detail = detail
        msg = f"invariant {invariant!r} violated"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ConfigError(OrekitError):
    """Malformed or inconsistent scenario file; ``field`` locates the problem."""

    def __init__(self, message, field=None, invariant=None):
        self.field = field
        self.invariant = invariant
        prefix = f"{field}: " if field else ""
        super().__init__(prefix + message)


class LevelOverflow(OrekitError, OverflowError):
    pass
