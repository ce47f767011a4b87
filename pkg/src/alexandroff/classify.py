"""Ring-theoretic predicates and the classification of unitized l-rings.

The unitization ``tau R`` (optionally scaled by ``c``) is an l-ring exactly
when ``R`` is a reduced f-ring whose truncation range equals
``{x : x^2 <= c x}``.  The predicates here are universally quantified, so each
verdict says whether it was obtained from an exact argument about the model
family (``structural``) or from seeded sampling.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterator

from . import truncation as trunc
from . import unitization as uz
from .lattice import GroupModel, ModelError, RingModel
from .models import FinSuppModel, LexModel, ZeroMulModel, _CoordRing
from .rational import Rat, rat, sample_positive_rat
from .truncation import TruncationSpec
from .unitization import UnitizationContext, Unitized
from .verdict import PreconditionError, Verdict

DEFAULT_SAMPLES = 1000
DEFAULT_CONE_SAMPLES = 10_000
DEFAULT_BOUND = 64

IS_L_RING = "IsLRing"
NOT_L_RING = "NotLRing"


def _require_ring(R: GroupModel) -> RingModel:
    if not isinstance(R, RingModel):
        raise ModelError(f"the {R.kind} model is a group model without multiplication")
    return R


def _elements(R: GroupModel, rng: random.Random, samples: int) -> Iterator[Any]:
    yield from R.probes()
    for _ in range(samples):
        yield R.sample(rng)


def _disjoint_pairs(R: GroupModel, rng: random.Random, samples: int) -> Iterator[tuple[Any, Any]]:
    """Pairs ``(a, b)`` with ``a ^ b = 0``, built from positive/negative parts."""
    for d in _elements(R, rng, samples):
        s, t = sample_positive_rat(rng, 8), sample_positive_rat(rng, 8)
        yield R.scale(s, R.pos_part(d)), R.scale(t, R.neg_part(d))


def _exact_for_pointwise(R: GroupModel) -> bool:
    # pointwise products c x(t) y(t) with c > 0; ZeroMul is pointwise but has product 0
    return R.pointwise and not isinstance(R, ZeroMulModel)


# -- elementwise predicates ---------------------------------------------------------


def is_idempotent_dominated(R: RingModel, x: Any, c: Any = 1) -> bool:
    """``x^2 <= c x``."""
    R = _require_ring(R)
    return R.leq(R.multiply(x, x), R.scale(rat(c), x))


def is_range_mismatch(R: RingModel, tau: TruncationSpec, x: Any, c: Any = 1) -> bool:
    """``x`` lies in exactly one of ``tau(R+)`` and ``{x : x^2 <= c x}``."""
    in_rng = R.is_positive(x) and trunc.in_range(R, tau, x)
    return in_rng != is_idempotent_dominated(R, x, c)


def is_weak_unit(R: GroupModel, e: Any, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Verdict:
    """``e > 0`` and ``|x| ^ e = 0`` forces ``x = 0``."""
    if not R.lt(R.zero(), e):
        return Verdict.fail("positive", "not strictly positive", structural=True, x=e)
    if isinstance(R, _CoordRing):
        for i, v in enumerate(R.coords(e)):
            if v == 0:
                return Verdict.fail("weak_unit", "vanishes at a carrier point",
                                    structural=True, x=R.indicator(i))
        return Verdict.ok("strictly positive on a finite carrier", structural=True)
    rng = random.Random(seed)
    checked = 0
    for x in _elements(R, rng, samples):
        checked += 1
        if R.is_zero(R.meet(R.abs(x), e)) and not R.is_zero(x):
            return Verdict.fail("weak_unit", "|x| ^ e = 0 with x != 0", checked=checked, x=x)
    return Verdict.ok("sampled", checked=checked)


# -- ring predicates ------------------------------------------------------------------


def range_equals_idempotent_set(R: RingModel, tau: TruncationSpec, c: Any = 1,
                                seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Decide ``tau(R+) = {x in R : x^2 <= c x}``.

    For caps on the scaled function models the right-hand side is the order
    interval ``[0, c/s]`` (``s`` the product scale), so the sets agree iff the
    cap is the constant ``c/s``.  The witness of a difference moves halfway
    from the cap towards ``c/s`` on the offending coordinates.
    """
    R = _require_ring(R)
    c = rat(c)
    if isinstance(R, ZeroMulModel):
        e = trunc.cap_element(R, tau)
        if e is not None:
            # every x >= 0 has x^2 = 0 <= c x, but the range stops at e
            return Verdict.fail("range", "range is an interval, criterion set is the whole cone",
                                structural=True, x=R.scale(Rat(2), e))
    vec = trunc.cap_vector(R, tau)
    if vec is not None and not isinstance(R, ZeroMulModel):
        k = c / R.mult_scale
        if all(v == k for v in vec):
            return Verdict.ok(f"cap equals c/s = {k}", structural=True)
        above = any(v > k for v in vec)
        w = [(v + k) / 2 if (v > k if above else v != k) else min(v, k) for v in vec]
        return Verdict.fail("range", "cap differs from c/s", structural=True,
                            x=R.from_coords(w))
    if isinstance(R, FinSuppModel) and tau.kind == trunc.CONST_CAP:
        k = c / R.mult_scale
        if tau.value == k:
            return Verdict.ok(f"cap equals c/s = {k}", structural=True)
        return Verdict.fail("range", "cap differs from c/s", structural=True,
                            x=R.indicator(0, (tau.value + k) / 2))

    rng = random.Random(seed)
    checked = 0
    extra = [x for x, _ in tau.table]
    for x in itertools.chain(extra, _elements(R, rng, samples)):
        for cand in (x, R.abs(x)):
            checked += 1
            if is_range_mismatch(R, tau, cand, c):
                return Verdict.fail("range", "sets differ", checked=checked, x=cand)
    return Verdict.ok("sampled", checked=checked)


def is_reduced(R: RingModel, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Verdict:
    R = _require_ring(R)
    if isinstance(R, ZeroMulModel):
        x = R.from_coords((1, 0))
        return Verdict.fail("reduced", "every square vanishes", structural=True, x=x)
    structural = _exact_for_pointwise(R)
    rng = random.Random(seed)
    checked = 0
    for x in _elements(R, rng, samples):
        checked += 1
        if not R.is_zero(x) and R.is_zero(R.multiply(x, x)):
            return Verdict.fail("reduced", "nonzero x with x^2 = 0", checked=checked, x=x)
    msg = "c x(t)^2 = 0 forces x(t) = 0" if structural else "no nilpotent sampled"
    return Verdict.ok(msg, structural=structural, checked=checked)


def is_almost_f_ring(R: RingModel, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Verdict:
    """``x+ x- = 0`` for sampled ``x``, and ``xy = 0`` for sampled disjoint pairs."""
    R = _require_ring(R)
    rng = random.Random(seed)
    checked = 0
    for x in _elements(R, rng, samples):
        checked += 1
        if not R.is_zero(R.multiply(R.pos_part(x), R.neg_part(x))):
            return Verdict.fail("almost_f", "x+ x- != 0", checked=checked, x=x)
    for a, b in _disjoint_pairs(R, rng, samples):
        checked += 1
        if not R.is_zero(R.multiply(a, b)):
            return Verdict.fail("almost_f_pair", "x ^ y = 0 but xy != 0",
                                checked=checked, x=a, y=b)
    return Verdict.ok("disjoint elements multiply to zero", structural=R.pointwise,
                      checked=checked)


def is_f_ring(R: RingModel, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Verdict:
    """``x ^ y = 0`` and ``z >= 0`` imply ``(xz) ^ y = (zx) ^ y = 0``."""
    R = _require_ring(R)
    rng = random.Random(seed)
    checked = 0
    zs = R.positive_probes()
    for i, (x, y) in enumerate(_disjoint_pairs(R, rng, samples)):
        z = zs[i] if i < len(zs) else R.sample_positive(rng)
        checked += 1
        if not (R.is_zero(R.meet(R.multiply(x, z), y)) and
                R.is_zero(R.meet(R.multiply(z, x), y))):
            return Verdict.fail("f_ring", "(xz) ^ y or (zx) ^ y is nonzero",
                                checked=checked, x=x, y=y, z=z)
    return Verdict.ok("multiplication by positives preserves disjointness",
                      structural=R.pointwise, checked=checked)


def find_infinitesimal(R: RingModel, bound: int = DEFAULT_BOUND, seed: int = 0,
                       samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Look for ``x != 0`` with ``n |x| <= e`` for all ``n <= bound``.

    A verified verdict means no nonzero infinitesimal exists (structurally)
    or none was found.  A survivor is only bounded evidence and is reported
    as inconclusive.
    """
    R = _require_ring(R)
    e = R.ring_identity()
    if e is None:
        raise PreconditionError(f"the {R.kind} model has no ring identity")
    if isinstance(R, _CoordRing) and _exact_for_pointwise(R):
        return Verdict.ok("no nonzero infinitesimals: n |x(t)| <= e(t) for all n forces x(t) = 0",
                          structural=True, bound=bound)
    rng = random.Random(seed)
    checked = 0
    for x in _elements(R, rng, samples):
        if R.is_zero(x):
            continue
        checked += 1
        ax = R.abs(x)
        if all(R.leq(R.multiple(n, ax), e) for n in range(1, bound + 1)):
            return Verdict.unknown("infinitesimal", f"n |x| <= e for all n <= {bound}",
                                   bound=bound, checked=checked, x=x)
    return Verdict.ok("none found", checked=checked, bound=bound)


def _hypotheses(R: RingModel, seed: int, samples: int) -> None:
    red = is_reduced(R, seed, samples)
    if not red.verified:
        raise PreconditionError(f"the {R.kind} model is not reduced")
    fr = is_f_ring(R, seed, samples)
    if not fr.verified:
        raise PreconditionError(f"the {R.kind} model is not an f-ring")


def lemma_semi_check(R: RingModel, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                     y_pool: int = 24) -> Verdict:
    """For ``x >= 0`` in a reduced f-ring: ``x^2 <= x`` iff ``xy <= y`` for all
    ``y >= 0`` iff ``yx <= y`` for all ``y >= 0``, with ``y`` ranging over a
    sampled pool."""
    R = _require_ring(R)
    _hypotheses(R, seed, min(samples, 200))
    rng = random.Random(seed)
    ys = R.positive_probes() + [R.sample_positive(rng) for _ in range(y_pool)]
    checked = 0
    for x in trunc.positive_candidates(R, rng, samples):
        for cand in (x, R.scale(Rat(1, rng.randint(2, 8)), x)):
            checked += 1
            i = R.leq(R.multiply(cand, cand), cand)
            bad_left = next((y for y in ys if not R.leq(R.multiply(cand, y), y)), None)
            bad_right = next((y for y in ys if not R.leq(R.multiply(y, cand), y)), None)
            if not (i == (bad_left is None) == (bad_right is None)):
                return Verdict.fail("semi", "the three conditions disagree", checked=checked,
                                    x=cand, y=bad_left if bad_left is not None else bad_right)
    return Verdict.ok("conditions agree", checked=checked)


def semi_conditions(R: RingModel, x: Any, ys: list[Any]) -> tuple[bool, bool, bool]:
    R = _require_ring(R)
    return (R.leq(R.multiply(x, x), x),
            all(R.leq(R.multiply(x, y), y) for y in ys),
            all(R.leq(R.multiply(y, x), y) for y in ys))


def reduced_commutation_check(R: RingModel, seed: int = 0,
                              samples: int = DEFAULT_SAMPLES) -> Verdict:
    """``yz = 0`` implies ``zy = 0`` for positive ``y, z`` in a reduced ring."""
    R = _require_ring(R)
    if not is_reduced(R, seed, min(samples, 200)).verified:
        raise PreconditionError(f"the {R.kind} model is not reduced")
    rng = random.Random(seed)
    checked = 0
    pairs = itertools.chain(
        _disjoint_pairs(R, rng, samples),
        ((R.sample_positive(rng), R.sample_positive(rng)) for _ in range(samples)))
    for y, z in pairs:
        if R.is_zero(R.multiply(y, z)):
            checked += 1
            if not R.is_zero(R.multiply(z, y)):
                return Verdict.fail("commute", "yz = 0 but zy != 0", checked=checked, y=y, z=z)
    return Verdict.ok("annihilating pairs commute", checked=checked)


# -- cone closure ----------------------------------------------------------------------


def cone_escape(ctx: UnitizationContext, u: Unitized, v: Unitized) -> bool:
    """``u, v >= 0`` but ``uv`` is not positive."""
    return (uz.is_positive(ctx, u) and uz.is_positive(ctx, v)
            and not uz.is_positive(ctx, uz.multiply_u(ctx, u, v)))


def find_cone_escape(ctx: UnitizationContext, seed: int = 0,
                     samples: int = DEFAULT_CONE_SAMPLES,
                     candidates: list[tuple[Unitized, Unitized]] = ()) -> Verdict:
    """Sample positive pairs in the unitization and test their products."""
    if not ctx.is_ring:
        raise ModelError(f"the {ctx.model.kind} model has no multiplication")
    rng = random.Random(seed)
    checked = 0
    pairs = itertools.chain(
        candidates,
        ((uz.sample_positive_unitized(ctx, rng), uz.sample_positive_unitized(ctx, rng))
         for _ in range(samples)))
    for u, v in pairs:
        checked += 1
        if cone_escape(ctx, u, v):
            return Verdict.fail("cone", "product of positives is not positive",
                                checked=checked, u=u, v=v, product=uz.multiply_u(ctx, u, v))
    return Verdict.ok("positive cone closed on all sampled pairs", checked=checked)


# -- classification -------------------------------------------------------------------------


@dataclass(frozen=True)
class RangeMismatch:
    x: Any
    in_range: bool
    dominated: bool


@dataclass(frozen=True)
class ConeEscape:
    u: Unitized
    v: Unitized
    product: Unitized


@dataclass(frozen=True)
class Classification:
    outcome: str
    witness: RangeMismatch | ConeEscape | None
    evidence: dict[str, Verdict] = field(default_factory=dict)
    scale_c: Rat = Rat(1)
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    cone_samples: int = DEFAULT_CONE_SAMPLES

    @property
    def is_l_ring(self) -> bool:
        return self.outcome == IS_L_RING

    @property
    def structural_flags(self) -> dict[str, bool]:
        return {k: v.structural for k, v in self.evidence.items()}


def classify_unitization(R: RingModel, tau: TruncationSpec, c: Any = 1, seed: int = 0,
                         samples: int = DEFAULT_SAMPLES,
                         cone_samples: int = DEFAULT_CONE_SAMPLES,
                         check_truncation: bool = True) -> Classification:
    """Decide whether the (scaled) unitization of ``R`` is an l-ring."""
    R = _require_ring(R)
    c = rat(c)
    if check_truncation:
        axioms = trunc.check_axioms(R, tau, seed=seed, samples=min(samples, 200))
        if not axioms.verified:
            raise PreconditionError(f"not a verified truncation: {axioms.message}")
    ctx = UnitizationContext(R, tau, c)
    evidence = {
        "reduced": is_reduced(R, seed, samples),
        "f_ring": is_f_ring(R, seed, samples),
        "range": range_equals_idempotent_set(R, tau, c, seed, samples),
    }
    meta = dict(scale_c=c, seed=seed, samples=samples, cone_samples=cone_samples)
    rng_v = evidence["range"]
    if rng_v.violated:
        x = rng_v.get("x")
        in_rng = R.is_positive(x) and trunc.in_range(R, tau, x)
        return Classification(NOT_L_RING, RangeMismatch(x, in_rng, not in_rng),
                              evidence, **meta)

    cone = find_cone_escape(ctx, seed, cone_samples)
    evidence["cone"] = cone
    if cone.violated:
        return Classification(NOT_L_RING,
                              ConeEscape(cone.get("u"), cone.get("v"), cone.get("product")),
                              evidence, **meta)
    if all(evidence[k].verified for k in ("reduced", "f_ring", "range")):
        return Classification(IS_L_RING, None, evidence, **meta)
    return Classification(NOT_L_RING, None, evidence, **meta)


def replay_classification(R: RingModel, tau: TruncationSpec, c: Any,
                          witness: RangeMismatch | ConeEscape) -> bool:
    """True if the witness still refutes the l-ring property."""
    if isinstance(witness, RangeMismatch):
        return is_range_mismatch(R, tau, witness.x, c)
    ctx = UnitizationContext(R, tau, rat(c))
    return cone_escape(ctx, witness.u, witness.v)


# -- Archimedean property -------------------------------------------------------------------


def _small_lex(model: LexModel, radius: int = 2) -> list[Any]:
    vals = range(-radius, radius + 1)
    pts = sorted(itertools.product(vals, vals), key=lambda ab: (abs(ab[0]) + abs(ab[1]), ab))
    return [model.vec(a, b) for a, b in pts]


def _bounded_multiples(leq, mul, zero, x, y, bound: int) -> bool:
    """``0 <= n x <= y`` for all ``n <= bound``."""
    return all(leq(zero, mul(n, x)) and leq(mul(n, x), y) for n in range(1, bound + 1))


def archimedean_witness(target: GroupModel | UnitizationContext, bound: int = DEFAULT_BOUND,
                        seed: int = 0) -> Verdict:
    """Verified when the (unitized) group is Archimedean; otherwise a pair
    ``x > 0, y`` with ``n x <= y`` for all ``n <= bound`` plus a certificate that
    the inequality holds for every ``n``."""
    if isinstance(target, UnitizationContext):
        ctx, model = target, target.model
    else:
        ctx, model = None, target
    if model.archimedean:
        msg = ("pointwise model over a finite or finitely supported carrier"
               if ctx is None else "Archimedean base group; the unitization inherits it")
        return Verdict.ok(msg, structural=True, bound=bound)
    if not isinstance(model, LexModel):
        return Verdict.unknown("archimedean", "no search available for this model", bound=bound)

    small = _small_lex(model)
    if ctx is None:
        leq, mul, zero = model.leq, model.multiple, model.zero()
        xs = [x for x in small if model.lt(zero, x)]
        ys = small
    else:
        leq = lambda u, v: uz.leq(ctx, u, v)
        mul = lambda n, u: uz.scale(ctx, Rat(n), u)
        zero = uz.zero(ctx)
        lifted = [Unitized(g, Rat(q)) for q in (0, 1) for g in small]
        xs = [u for u in lifted if leq(zero, u) and not uz.is_zero(ctx, u)]
        ys = lifted
    for x in xs:
        for y in ys:
            if _bounded_multiples(leq, mul, zero, x, y, bound):
                gx, gy = (x.g, y.g) if ctx is not None else (x, y)
                qx = x.q if ctx is not None else 0
                qy = y.q if ctx is not None else 0
                certified = qx == 0 and qy == 0 and gx.a == 0 and gx.b > 0 and gy.a > 0
                if not certified:
                    continue
                return Verdict.fail("archimedean", "n x <= y for every n: x = (0, b) with b > 0 "
                                    "is infinitely small against y = (a, .) with a > 0",
                                    structural=True, bound=bound, x=x, y=y)
    return Verdict.unknown("archimedean", "no certified witness among small pairs", bound=bound)


def replay_archimedean(target: GroupModel | UnitizationContext, verdict: Verdict) -> bool:
    x, y = verdict.get("x"), verdict.get("y")
    if isinstance(target, UnitizationContext):
        ctx = target
        return (not uz.is_zero(ctx, x)) and _bounded_multiples(
            lambda u, v: uz.leq(ctx, u, v), lambda n, u: uz.scale(ctx, Rat(n), u),
            uz.zero(ctx), x, y, verdict.bound or 1)
    return (not target.is_zero(x)) and _bounded_multiples(
        target.leq, target.multiple, target.zero(), x, y, verdict.bound or 1)

