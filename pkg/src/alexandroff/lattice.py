"""The contract every concrete l-group / l-ring model satisfies.

Elements are plain immutable values; the model object carries the operations.
Derived operations (positive part, negative part, absolute value, ordering
helpers) are implemented once here in terms of the primitives.
"""

from __future__ import annotations

import abc
import random
from typing import Any

from .rational import Rat


class ModelError(ValueError):
    """Malformed model specification or an element from a foreign model."""


class GroupModel(abc.ABC):
    kind: str = "abstract"
    #: the model family is known to be Archimedean
    archimedean: bool = True
    #: order, lattice and ring operations act coordinatewise on a set of points
    pointwise: bool = False

    @abc.abstractmethod
    def zero(self) -> Any: ...

    @abc.abstractmethod
    def add(self, x: Any, y: Any) -> Any: ...

    @abc.abstractmethod
    def neg(self, x: Any) -> Any: ...

    @abc.abstractmethod
    def scale(self, q: Rat, x: Any) -> Any:
        """Scalar multiple ``q * x`` (divisibility: total for every rational)."""

    @abc.abstractmethod
    def leq(self, x: Any, y: Any) -> bool: ...

    @abc.abstractmethod
    def join(self, x: Any, y: Any) -> Any: ...

    @abc.abstractmethod
    def meet(self, x: Any, y: Any) -> Any: ...

    @abc.abstractmethod
    def contains(self, x: Any) -> bool:
        """Whether ``x`` is an element of this model."""

    @abc.abstractmethod
    def sample(self, rng: random.Random, magnitude: int = 32) -> Any: ...

    @abc.abstractmethod
    def probes(self) -> list[Any]:
        """Deterministic, structured elements tried before random samples."""

    @abc.abstractmethod
    def format(self, x: Any) -> Any:
        """JSON-compatible encoding of an element."""

    @abc.abstractmethod
    def parse(self, data: Any) -> Any: ...

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind}

    # -- derived -----------------------------------------------------------

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    def is_zero(self, x: Any) -> bool:
        return x == self.zero()

    def is_positive(self, x: Any) -> bool:
        return self.leq(self.zero(), x)

    def lt(self, x: Any, y: Any) -> bool:
        return x != y and self.leq(x, y)

    def pos_part(self, x: Any) -> Any:
        return self.join(x, self.zero())

    def neg_part(self, x: Any) -> Any:
        return self.join(self.neg(x), self.zero())

    def abs(self, x: Any) -> Any:
        return self.join(x, self.neg(x))

    def multiple(self, n: int, x: Any) -> Any:
        return self.scale(Rat(n), x)

    def check(self, x: Any) -> None:
        if not self.contains(x):
            raise ModelError(f"{x!r} is not an element of the {self.kind} model")

    def sample_positive(self, rng: random.Random, magnitude: int = 32) -> Any:
        return self.abs(self.sample(rng, magnitude))

    def positive_probes(self) -> list[Any]:
        return [p for p in self.probes() if self.is_positive(p)]


class RingModel(GroupModel):
    """An l-group carrying an associative multiplication.

    ``mult_scale`` is the constant ``c`` in the scaled products used by the
    function models, ``(xy)(t) = c x(t) y(t)``.
    """

    mult_scale: Rat = Rat(1)

    @abc.abstractmethod
    def multiply(self, x: Any, y: Any) -> Any: ...

    @abc.abstractmethod
    def ring_identity(self) -> Any | None: ...

    def square(self, x: Any) -> Any:
        return self.multiply(x, x)

