"""Orthomorphisms of the Archimedean function models as multipliers.

On the grid, scalar and finitely supported models every orthomorphism the
constructions need acts as ``y -> w y`` for an eventually constant rational
function ``w``.  A ``Multiplier`` stores ``w`` as a default value plus a
finite map of exceptions.  On finite carriers every point is listed and the
default is always 0, so equal multipliers have equal representations.

``J`` sends ``x`` to the multiplier ``y -> x y``, which is ``c x`` pointwise
for a model with product scale ``c``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from . import truncation as trunc
from . import unitization as uz
from .lattice import GroupModel, ModelError
from .models import FinSuppFn, FinSuppModel, GridModel, ScalarModel
from .rational import Rat, format_rat, parse_rat, rat, sample_rat
from .truncation import TruncationSpec
from .unitization import UnitizationContext, Unitized
from .verdict import PreconditionError, Verdict

_ZERO = Rat(0)
_ONE = Rat(1)

SUPPORTED = (GridModel, ScalarModel, FinSuppModel)


@dataclass(frozen=True)
class Multiplier:
    """The pointwise function ``w``: ``values`` at listed keys, ``default`` elsewhere."""

    default: Rat
    values: tuple[tuple[Any, Rat], ...] = ()

    def at(self, key: Any) -> Rat:
        for k, v in self.values:
            if k == key:
                return v
        return self.default


def _require(R: GroupModel) -> GroupModel:
    if not isinstance(R, SUPPORTED):
        raise ModelError(f"orthomorphisms are not represented on the {R.kind} model")
    return R


def _keys(R: GroupModel) -> tuple[Any, ...] | None:
    """Carrier keys of a finite model, None for finitely supported sequences."""
    if isinstance(R, GridModel):
        return R.carrier
    if isinstance(R, ScalarModel):
        return (0,)
    return None


def _normal(R: GroupModel, default: Rat, mapping: dict[Any, Rat]) -> Multiplier:
    keys = _keys(R)
    if keys is not None:
        return Multiplier(_ZERO, tuple((k, mapping[k]) for k in keys if mapping[k] != 0))
    return Multiplier(default, tuple((k, v) for k, v in sorted(mapping.items()) if v != default))


def _lift(R: GroupModel, f: Callable[..., Rat], *ws: Multiplier) -> Multiplier:
    keys = _keys(R)
    if keys is None:
        keys = sorted({k for w in ws for k, _ in w.values})
    return _normal(R, f(*(w.default for w in ws)), {k: f(*(w.at(k) for w in ws)) for k in keys})


# -- the multiplier algebra ----------------------------------------------------------


def multiplier(R: GroupModel, mapping: dict[Any, Any], default: Any = 0) -> Multiplier:
    R = _require(R)
    keys = _keys(R)
    d = rat(default)
    if keys is not None:
        if d != 0:
            raise ModelError("multipliers on a finite carrier have default 0")
        unknown = set(mapping) - set(keys)
        if unknown:
            raise ModelError(f"keys {sorted(map(str, unknown))} are not carrier points")
        return _normal(R, d, {k: rat(mapping.get(k, 0)) for k in keys})
    if any(not isinstance(k, int) or isinstance(k, bool) or k < 0 for k in mapping):
        raise ModelError("finsupp multiplier keys must be natural numbers")
    return _normal(R, d, {k: rat(v) for k, v in mapping.items()})


def identity_multiplier(R: GroupModel) -> Multiplier:
    keys = _keys(_require(R))
    if keys is None:
        return Multiplier(_ONE)
    return _normal(R, _ZERO, {k: _ONE for k in keys})


def zero_multiplier(R: GroupModel) -> Multiplier:
    _require(R)
    return Multiplier(_ZERO)


def m_add(R: GroupModel, v: Multiplier, w: Multiplier) -> Multiplier:
    return _lift(R, lambda a, b: a + b, v, w)


def m_neg(R: GroupModel, w: Multiplier) -> Multiplier:
    return _lift(R, lambda a: -a, w)


def m_scale(R: GroupModel, q: Any, w: Multiplier) -> Multiplier:
    q = rat(q)
    return _lift(R, lambda a: q * a, w)


def m_join(R: GroupModel, v: Multiplier, w: Multiplier) -> Multiplier:
    return _lift(R, max, v, w)


def m_meet(R: GroupModel, v: Multiplier, w: Multiplier) -> Multiplier:
    return _lift(R, min, v, w)


def m_compose(R: GroupModel, v: Multiplier, w: Multiplier) -> Multiplier:
    """``v o w``, the pointwise product."""
    return _lift(R, lambda a, b: a * b, v, w)


def m_leq(R: GroupModel, v: Multiplier, w: Multiplier) -> bool:
    d = m_add(R, w, m_neg(R, v))
    return d.default >= 0 and all(val >= 0 for _, val in d.values)


def m_apply(R: GroupModel, w: Multiplier, y: Any) -> Any:
    """The orthomorphism ``y -> w y`` (no product scale)."""
    R = _require(R)
    R.check(y)
    if isinstance(R, FinSuppModel):
        return FinSuppFn.of({k: w.at(k) * v for k, v in y.support})
    keys = _keys(R)
    return R.from_coords(w.at(k) * v for k, v in zip(keys, R.coords(y)))


def zeta(R: GroupModel, w: Multiplier) -> Multiplier:
    """The truncation ``w -> id ^ w`` on multipliers."""
    return m_meet(R, identity_multiplier(R), w)


def decompose_orthomorphism(R: GroupModel, w: Multiplier) -> tuple[Multiplier, Multiplier]:
    """``w = w+ - w-`` with both parts disjointness preserving positive maps."""
    return _lift(R, lambda a: max(a, _ZERO), w), _lift(R, lambda a: max(-a, _ZERO), w)


# -- the embedding J --------------------------------------------------------------------


def embed_J(R: GroupModel, x: Any) -> Multiplier:
    R = _require(R)
    R.check(x)
    c = R.mult_scale
    if isinstance(R, FinSuppModel):
        return _normal(R, _ZERO, {k: c * v for k, v in x.support})
    return _normal(R, _ZERO, {k: c * v for k, v in zip(_keys(R), R.coords(x))})


def preimage_J(R: GroupModel, w: Multiplier) -> Any | None:
    """The ``x`` with ``J x = w``, or None when ``w`` is not in ``J(R)``."""
    R = _require(R)
    c = R.mult_scale
    if isinstance(R, FinSuppModel):
        if w.default != 0:
            return None
        return FinSuppFn.of({k: v / c for k, v in w.values})
    return R.from_coords(w.at(k) / c for k in _keys(R))


def stone_check(R: GroupModel, seed: int = 0, samples: int = 1000) -> Verdict:
    """``id ^ J x`` lies in ``J(R)`` for every ``x >= 0``.

    Structural on every supported model: unital models contain the identity,
    and on sequences ``min(1, c x)`` keeps the support of ``x``.  The sampled
    loop cross-checks the argument.
    """
    if not isinstance(R, SUPPORTED):
        raise PreconditionError(f"the {R.kind} model is not a supported reduced Archimedean f-ring")
    rng = random.Random(seed)
    checked = 0
    for x in trunc.positive_candidates(R, rng, samples):
        checked += 1
        if preimage_J(R, zeta(R, embed_J(R, x))) is None:
            return Verdict.fail("stone", "id ^ J x is not in J(R)", checked=checked, x=x)
    msg = ("unital, hence Stone" if R.ring_identity() is not None
           else "min(1, c x) has the support of x")
    return Verdict.ok(msg, structural=True, checked=checked)


def stone_function(R: GroupModel) -> TruncationSpec:
    """``x -> J^-1(id ^ J x)``, which is ``min(x, 1/c)`` pointwise."""
    if not isinstance(R, SUPPORTED):
        raise PreconditionError(f"the {R.kind} model is not a Stone f-ring")
    verdict = stone_check(R, samples=0)
    if not verdict.verified:
        raise PreconditionError(f"the {R.kind} model is not a Stone f-ring")
    return trunc.const_cap(1 / R.mult_scale)


# -- truncation homomorphisms ------------------------------------------------------------


def is_truncation_homomorphism(h: Callable[[Any], Any], src: GroupModel,
                               tau_src: TruncationSpec, tau_dst: Callable[[Any], Any],
                               seed: int = 0, samples: int = 1000,
                               candidates: Iterable[Any] = ()) -> Verdict:
    """``tau_dst(h x) = h(tau_src x)`` on ``candidates``, probes and samples ``x >= 0``."""
    rng = random.Random(seed)
    checked = 0
    for x in trunc.positive_candidates(src, rng, samples, candidates):
        checked += 1
        if tau_dst(h(x)) != h(trunc.apply(src, tau_src, x)):
            return Verdict.fail("truncation_hom", "tau2(h x) != h(tau1 x)",
                                checked=checked, x=x)
    return Verdict.ok("truncations commute with h", checked=checked)


def _midpoint_candidates(R: GroupModel, tau: TruncationSpec) -> list[Any]:
    # halfway between the cap and 1/c is where a wrong cap shows first
    if tau.kind != trunc.CONST_CAP:
        e = trunc.cap_element(R, tau)
        return [] if e is None else [e]
    mid = (tau.value + 1 / R.mult_scale) / 2
    if isinstance(R, FinSuppModel):
        return [R.block(mid)]
    return [R.const(mid)]


def j_preserves_truncation(R: GroupModel, tau: TruncationSpec, seed: int = 0,
                           samples: int = 1000) -> Verdict:
    """Whether ``J : (R, tau) -> (Orth R, id ^ .)`` is a truncation homomorphism."""
    R = _require(R)
    return is_truncation_homomorphism(lambda x: embed_J(R, x), R, tau,
                                      lambda w: zeta(R, w), seed, samples,
                                      _midpoint_candidates(R, tau))


def j_homomorphism_check(R: GroupModel, seed: int = 0, samples: int = 1000) -> Verdict:
    """``J`` preserves sums, joins, meets and products and is injective."""
    R = _require(R)
    rng = random.Random(seed)
    checked = 0
    probes = R.probes()
    for i in range(len(probes) + samples):
        x = probes[i] if i < len(probes) else R.sample(rng)
        y = R.sample(rng)
        jx, jy = embed_J(R, x), embed_J(R, y)
        checked += 1
        checks = (
            ("add", embed_J(R, R.add(x, y)) == m_add(R, jx, jy)),
            ("join", embed_J(R, R.join(x, y)) == m_join(R, jx, jy)),
            ("meet", embed_J(R, R.meet(x, y)) == m_meet(R, jx, jy)),
            ("multiply", embed_J(R, R.multiply(x, y)) == m_compose(R, jx, jy)),
            ("apply", m_apply(R, jx, y) == R.multiply(x, y)),
            ("injective", (jx == jy) == (x == y)),
            ("inverse", preimage_J(R, jx) == x),
        )
        for name, ok in checks:
            if not ok:
                return Verdict.fail(f"J_{name}", f"J fails to preserve {name}",
                                    checked=checked, x=x, y=y)
    return Verdict.ok("J is an injective lattice and ring homomorphism", checked=checked)


def decomposition_check(R: GroupModel, seed: int = 0, samples: int = 1000) -> Verdict:
    """``w = w+ - w-`` and both parts keep disjoint pairs disjoint."""
    R = _require(R)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        w = embed_J(R, R.sample(rng))
        if rng.random() < 0.5:
            w = m_add(R, w, m_scale(R, rng.randint(-2, 2), identity_multiplier(R)))
        d = R.sample(rng)
        x, y = R.pos_part(d), R.neg_part(d)
        wp, wm = decompose_orthomorphism(R, w)
        checked += 1
        if m_add(R, wp, m_neg(R, wm)) != w:
            return Verdict.fail("decompose", "w != w+ - w-", checked=checked, w=w)
        for part in (wp, wm):
            if not m_leq(R, zero_multiplier(R), part) or \
                    not R.is_zero(R.meet(m_apply(R, part, x), y)):
                return Verdict.fail("p_endomorphism", "part is not a p-endomorphism",
                                    checked=checked, w=part, x=x, y=y)
    return Verdict.ok("both parts are p-endomorphisms", checked=checked)


# -- the unital extension --------------------------------------------------------------------


def _require_stone(ctx: UnitizationContext) -> None:
    R = _require(ctx.model)
    if ctx.scale_c != 1:
        raise PreconditionError("the extension is defined for the unscaled unitization")
    if not trunc.truncations_equal(R, ctx.tau, stone_function(R)).verified:
        raise PreconditionError("the truncation is not the Stone function")


def _extend(R: GroupModel, u: Unitized) -> Multiplier:
    return m_add(R, embed_J(R, u.g), m_scale(R, u.q, identity_multiplier(R)))


def extend_J_tau(ctx: UnitizationContext, u: Unitized) -> Multiplier:
    """``x + p -> J x + p id``.

    One-to-one when ``R`` has no identity; otherwise it vanishes on ``Q(1 - e)``.
    """
    _require_stone(ctx)
    return _extend(ctx.model, u)


def _kernel_direction(R: GroupModel) -> Unitized | None:
    """``1 - e`` when ``R`` has an identity ``e``, which is then the unit of the Stone function."""
    e = R.ring_identity()
    return None if e is None else Unitized(R.neg(e), _ONE)


def _in_kernel_line(R: GroupModel, k: Unitized | None, d: Unitized) -> bool:
    if k is None:
        return False
    return R.scale(d.q, k.g) == d.g


def extension_check(ctx: UnitizationContext, seed: int = 0, samples: int = 1000) -> Verdict:
    """The extension is unital, positive and a lattice homomorphism.

    Without a unit for the truncation it is also injective.  With an identity
    ``e`` the polar of ``R`` is ``Q(1 - e)`` and that line is exactly what the
    extension collapses, so injectivity is checked modulo it.
    """
    _require_stone(ctx)
    R = ctx.model
    kernel = _kernel_direction(R)
    if kernel is not None and _extend(R, kernel) != zero_multiplier(R):
        return Verdict.fail("kernel", "1 - e is not sent to 0", u=kernel)
    ext = lambda u: _extend(R, u)
    if ext(uz.one(ctx)) != identity_multiplier(R):
        return Verdict.fail("unital", "1 is not sent to id", u=uz.one(ctx))
    rng = random.Random(seed)
    checked = 0
    zero = zero_multiplier(R)
    for _ in range(samples):
        u, v = uz.sample_unitized(ctx, rng), uz.sample_unitized(ctx, rng)
        p = uz.sample_positive_unitized(ctx, rng)
        eu, ev = ext(u), ext(v)
        checked += 1
        if rng.random() < 0.25 and kernel is not None:
            v = uz.add(ctx, u, uz.scale(ctx, sample_rat(rng), kernel))
            ev = ext(v)
        if (eu == ev) != (u == v or _in_kernel_line(R, kernel, uz.sub(ctx, v, u))):
            return Verdict.fail("injective", "images coincide off the kernel line",
                                checked=checked, u=u, v=v)
        if ext(uz.join_u(ctx, u, v)) != m_join(R, eu, ev):
            return Verdict.fail("join", "joins are not preserved", checked=checked, u=u, v=v)
        if ext(uz.meet_u(ctx, u, v)) != m_meet(R, eu, ev):
            return Verdict.fail("meet", "meets are not preserved", checked=checked, u=u, v=v)
        if not m_leq(R, zero, ext(p)):
            return Verdict.fail("positive", "a positive element has a non-positive image",
                                checked=checked, u=p)
    return Verdict.ok("unital injective lattice homomorphism", checked=checked)


# -- serialization ------------------------------------------------------------------------------


def encode_multiplier(w: Multiplier) -> dict[str, Any]:
    return {"default": format_rat(w.default),
            "values": {str(k): format_rat(v) for k, v in w.values}}


def decode_multiplier(R: GroupModel, data: Any) -> Multiplier:
    R = _require(R)
    if not isinstance(data, dict) or set(data) != {"default", "values"} \
            or not isinstance(data["values"], dict):
        raise ModelError("multiplier must be an object with fields default and values")
    try:
        default = parse_rat(data["default"])
        raw = {k: parse_rat(v) for k, v in data["values"].items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise ModelError(f"malformed multiplier: {exc}") from None
    if isinstance(R, FinSuppModel):
        if not all(k.isdigit() for k in raw):
            raise ModelError("finsupp multiplier keys must be natural numbers")
        raw = {int(k): v for k, v in raw.items()}
    elif isinstance(R, ScalarModel):
        if set(raw) - {"0"}:
            raise ModelError("scalar multiplier has the single key 0")
        raw = {0: v for v in raw.values()}
    return multiplier(R, raw, default)
