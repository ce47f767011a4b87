"""Outcome records shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    VERIFIED = "verified"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class PreconditionError(ValueError):
    """Raised when a check is invoked outside its hypotheses."""


@dataclass(frozen=True)
class Verdict:
    """Result of a decision procedure or sampled check.

    ``structural`` is True when the answer comes from an exact argument about
    the model family rather than from sampling.  A violated verdict always
    names the clause it refutes and carries a witness that re-fails it.
    """

    status: Status
    message: str = ""
    witness: tuple[tuple[str, Any], ...] = ()
    bound: int | None = None
    structural: bool = False
    clause: str | None = None
    checked: int = 0
    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def get(self, name: str) -> Any:
        for key, value in self.witness:
            if key == name:
                return value
        raise KeyError(name)

    @classmethod
    def ok(cls, message: str = "", *, structural: bool = False, checked: int = 0,
           bound: int | None = None, **extra: Any) -> Verdict:
        return cls(Status.VERIFIED, message, (), bound, structural, None, checked, extra)

    @classmethod
    def fail(cls, clause: str, message: str, *, structural: bool = False,
             checked: int = 0, bound: int | None = None, **witness: Any) -> Verdict:
        return cls(Status.VIOLATED, message, tuple(witness.items()), bound,
                   structural, clause, checked)

    @classmethod
    def unknown(cls, clause: str, message: str, *, bound: int | None = None,
                checked: int = 0, **witness: Any) -> Verdict:
        return cls(Status.INCONCLUSIVE, message, tuple(witness.items()), bound,
                   False, clause, checked)

    def to_dict(self, encode) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status.value, "message": self.message}
        if self.clause is not None:
            out["clause"] = self.clause
        if self.witness:
            out["witness"] = {k: encode(v) for k, v in self.witness}
        if self.bound is not None:
            out["bound"] = self.bound
        out["structural"] = self.structural
        out["checked"] = self.checked
        return out
