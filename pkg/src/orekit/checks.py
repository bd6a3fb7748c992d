from dataclasses import dataclass
from typing import Any

from .errors import ValidationError


@dataclass(frozen=True)
class Check:
    """Outcome of a verification routine.

    ``invariant`` names the first violated property and ``witness`` holds the
    offending input; both are None on success.
    """

    ok: bool
    invariant: str | None = None
    witness: Any = None
    checked: int = 0

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, checked=0):
        return cls(True, checked=checked)

    @classmethod
    def failed(cls, invariant, witness=None, checked=0):
        return cls(False, invariant, witness, checked)

    def require(self):
        if not self.ok:
            raise ValidationError(self.invariant, repr(self.witness))
        return self
