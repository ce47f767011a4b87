"""Independent cross-check for unitizations of finite pointwise models.

When ``tau`` is meet with a strictly positive cap ``e`` on a finite carrier,
the map ``(g, q) -> (g(t) + (q/c) e(t) for t in carrier; q at infinity)`` is
an order isomorphism of the unitization onto Q^(carrier + 1) with the
coordinatewise order.  Lattice operations can therefore be computed
coordinatewise and pulled back.  Nothing here calls the truncation or the
unitization formulas.
"""

from __future__ import annotations

from typing import Callable

from .lattice import ModelError
from .models import _CoordRing
from .rational import Rat
from .truncation import cap_vector
from .unitization import UnitizationContext, Unitized

_ZERO = Rat(0)


class GridOracle:
    def __init__(self, ctx: UnitizationContext):
        model = ctx.model
        cap = cap_vector(model, ctx.tau)
        if not isinstance(model, _CoordRing) or cap is None or min(cap) <= 0:
            raise ModelError("the oracle needs a strictly positive cap on a finite pointwise model")
        self.model = model
        self.cap = cap
        self.c = ctx.scale_c

    def lift(self, u: Unitized) -> tuple[Rat, ...]:
        k = u.q / self.c
        return tuple(a + k * e for a, e in zip(self.model.coords(u.g), self.cap)) + (u.q,)

    def lower(self, f: tuple[Rat, ...]) -> Unitized:
        q = f[-1]
        k = q / self.c
        return Unitized(self.model.from_coords(a - k * e for a, e in zip(f[:-1], self.cap)), q)

    def _pointwise(self, op: Callable[..., Rat], *us: Unitized) -> Unitized:
        return self.lower(tuple(op(*vals) for vals in zip(*(self.lift(u) for u in us))))

    def is_positive(self, u: Unitized) -> bool:
        return all(v >= 0 for v in self.lift(u))

    def pos_part(self, u: Unitized) -> Unitized:
        return self._pointwise(lambda a: max(a, _ZERO), u)

    def abs(self, u: Unitized) -> Unitized:
        return self._pointwise(abs, u)

    def join(self, u: Unitized, v: Unitized) -> Unitized:
        return self._pointwise(max, u, v)

    def meet(self, u: Unitized, v: Unitized) -> Unitized:
        return self._pointwise(min, u, v)
