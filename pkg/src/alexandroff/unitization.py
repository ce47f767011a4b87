"""The Alexandroff unitization ``G + Q`` of an l-group with a truncation.

Elements are pairs ``(g, q)`` standing for ``g + q``.  The order has positive
cone::

    G+  u  { g + q : q > 0 and (c/q) g^- in tau(G+) }

with ``c = 1`` for the plain construction and ``c > 0`` for the scaled one.
The scaled cone is the image of the plain cone under ``(g, q) -> (g, c q)``,
so every lattice formula below is the plain formula conjugated by that map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from . import truncation as trunc
from .lattice import GroupModel, ModelError, RingModel
from .rational import Rat, format_rat, parse_rat, rat, sample_positive_rat, sample_rat
from .truncation import TruncationSpec
from .verdict import PreconditionError

_ZERO = Rat(0)
_ONE = Rat(1)

#: debug faults understood by the lattice formulas (self-test sensitivity)
FAULTS = ("flip_pos_part_sign",)


@dataclass(frozen=True)
class Unitized:
    g: Any
    q: Rat


@dataclass(frozen=True)
class UnitizationContext:
    model: GroupModel
    tau: TruncationSpec
    scale_c: Rat = _ONE
    fault: str | None = None

    def __post_init__(self):
        c = rat(self.scale_c)
        if c <= 0:
            raise ModelError(f"unitization scale must be positive, got {format_rat(c)}")
        object.__setattr__(self, "scale_c", c)
        if self.fault is not None and self.fault not in FAULTS:
            raise ValueError(f"unknown fault {self.fault!r}")
        trunc.validate(self.model, self.tau)

    @classmethod
    def checked(cls, model: GroupModel, tau: TruncationSpec, scale_c: Any = 1,
                seed: int = 0, samples: int = 200) -> UnitizationContext:
        """Build a context after confirming that ``tau`` is a truncation."""
        verdict = trunc.check_axioms(model, tau, seed=seed, samples=samples)
        if not verdict.verified:
            raise PreconditionError(f"not a verified truncation: {verdict.message}")
        return cls(model, tau, rat(scale_c))

    @property
    def is_ring(self) -> bool:
        return isinstance(self.model, RingModel)


def _t(ctx: UnitizationContext, x: Any) -> Any:
    # every caller passes a positive multiple of a positive or negative part
    return trunc.apply_positive(ctx.model, ctx.tau, x)


# -- group structure ---------------------------------------------------------------


def one(ctx: UnitizationContext) -> Unitized:
    return Unitized(ctx.model.zero(), _ONE)


def zero(ctx: UnitizationContext) -> Unitized:
    return Unitized(ctx.model.zero(), _ZERO)


def embed(ctx: UnitizationContext, x: Any) -> Unitized:
    return Unitized(x, _ZERO)


def add(ctx: UnitizationContext, u: Unitized, v: Unitized) -> Unitized:
    return Unitized(ctx.model.add(u.g, v.g), u.q + v.q)


def neg(ctx: UnitizationContext, u: Unitized) -> Unitized:
    return Unitized(ctx.model.neg(u.g), -u.q)


def sub(ctx: UnitizationContext, u: Unitized, v: Unitized) -> Unitized:
    return Unitized(ctx.model.sub(u.g, v.g), u.q - v.q)


def scale(ctx: UnitizationContext, r: Rat, u: Unitized) -> Unitized:
    return Unitized(ctx.model.scale(r, u.g), r * u.q)


def is_zero(ctx: UnitizationContext, u: Unitized) -> bool:
    return u.q == 0 and ctx.model.is_zero(u.g)


# -- order -----------------------------------------------------------------------


def is_positive(ctx: UnitizationContext, u: Unitized) -> bool:
    m = ctx.model
    if u.q == 0:
        return m.is_positive(u.g)
    if u.q < 0:
        return False
    w = m.scale(ctx.scale_c / u.q, m.neg_part(u.g))
    return _t(ctx, w) == w


def leq(ctx: UnitizationContext, u: Unitized, v: Unitized) -> bool:
    return is_positive(ctx, sub(ctx, v, u))


def pos_part_u(ctx: UnitizationContext, u: Unitized) -> Unitized:
    m, c, p = ctx.model, ctx.scale_c, u.q
    sign = -1 if ctx.fault == "flip_pos_part_sign" else 1
    if p == 0:
        return Unitized(m.pos_part(u.g), _ZERO)
    if p > 0:
        cut = _t(ctx, m.scale(c / p, m.neg_part(u.g)))
        return Unitized(m.sub(m.pos_part(u.g), m.scale(sign * p / c, cut)), p)
    cut = _t(ctx, m.scale(-c / p, m.pos_part(u.g)))
    return Unitized(m.add(m.pos_part(u.g), m.scale(p / c, cut)), _ZERO)


def neg_part_u(ctx: UnitizationContext, u: Unitized) -> Unitized:
    return pos_part_u(ctx, neg(ctx, u))


def abs_u(ctx: UnitizationContext, u: Unitized) -> Unitized:
    """``|g + q| = |g| - 2(|q|/c) tau((c/|q|) w) + |q|``.

    ``w`` is ``g^-`` for ``q > 0`` and ``g^+`` for ``q < 0``.
    """
    m, c, p = ctx.model, ctx.scale_c, u.q
    if p == 0:
        return Unitized(m.abs(u.g), _ZERO)
    a = abs(p)
    w = m.neg_part(u.g) if p > 0 else m.pos_part(u.g)
    cut = _t(ctx, m.scale(c / a, w))
    return Unitized(m.sub(m.abs(u.g), m.scale(2 * a / c, cut)), a)


def join_u(ctx: UnitizationContext, u: Unitized, v: Unitized) -> Unitized:
    return add(ctx, u, pos_part_u(ctx, sub(ctx, v, u)))


def meet_u(ctx: UnitizationContext, u: Unitized, v: Unitized) -> Unitized:
    return neg(ctx, join_u(ctx, neg(ctx, u), neg(ctx, v)))


# -- ring structure ------------------------------------------------------------------


def multiply_u(ctx: UnitizationContext, u: Unitized, v: Unitized) -> Unitized:
    """``(x + p)(y + q) = xy + q x + p y + pq``."""
    m = ctx.model
    if not isinstance(m, RingModel):
        raise ModelError(f"the {m.kind} model has no multiplication")
    g = m.add(m.add(m.multiply(u.g, v.g), m.scale(v.q, u.g)), m.scale(u.q, v.g))
    return Unitized(g, u.q * v.q)


# -- sampling -------------------------------------------------------------------------


def sample_unitized(ctx: UnitizationContext, rng: random.Random,
                    magnitude: int = 32) -> Unitized:
    q = _ZERO if rng.random() < 0.25 else sample_rat(rng, magnitude)
    return Unitized(ctx.model.sample(rng, magnitude), q)


def sample_positive_unitized(ctx: UnitizationContext, rng: random.Random,
                             magnitude: int = 32) -> Unitized:
    """A positive element, often on the boundary of the cone.

    For ``q > 0`` the G-part is ``a - (q/c) tau(h)`` with ``a, h >= 0``; its
    negative part is below ``(q/c) tau(h)``, which keeps ``(c/q) g^-`` inside
    the (downward closed) range of the truncation.
    """
    m = ctx.model
    r = rng.random()
    if r < 0.2:
        return Unitized(m.sample_positive(rng, magnitude), _ZERO)
    if r < 0.35:
        return pos_part_u(ctx, sample_unitized(ctx, rng, magnitude))
    p = sample_positive_rat(rng, magnitude)
    a = m.zero() if rng.random() < 0.35 else m.sample_positive(rng, magnitude)
    h = m.sample_positive(rng, magnitude)
    if m.is_zero(h):
        return Unitized(a, p)
    return Unitized(m.sub(a, m.scale(p / ctx.scale_c, _t(ctx, h))), p)


# -- serialization --------------------------------------------------------------------


def encode_unitized(model: GroupModel, u: Unitized) -> dict[str, Any]:
    return {"g": model.format(u.g), "q": format_rat(u.q)}


def decode_unitized(model: GroupModel, data: Any) -> Unitized:
    if not isinstance(data, dict) or set(data) != {"g", "q"}:
        raise ModelError("unitized element must be an object with fields g and q")
    if not isinstance(data["q"], str):
        raise ModelError("rational part must be a string")
    return Unitized(model.parse(data["g"]), parse_rat(data["q"]))
