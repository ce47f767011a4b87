"""Canned reproductions of the worked examples.

Each reproduction runs its checks and returns a ``Reproduction`` holding the
named results and the list of expectations; ``reproduced`` is True iff all
expectations hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import classify as cls
from . import orthorep as orth
from . import truncation as trunc
from . import unitization as uz
from .lattice import GroupModel
from .models import FinSuppModel, GridModel, LexModel, ScalarModel, ZeroMulModel
from .rational import Rat, format_rat
from .unitization import UnitizationContext, Unitized


@dataclass
class Reproduction:
    name: str
    model: GroupModel
    summary: str
    results: dict[str, Any] = field(default_factory=dict)
    expectations: dict[str, bool] = field(default_factory=dict)

    @property
    def reproduced(self) -> bool:
        return all(self.expectations.values())


def circle_point(t: Rat) -> tuple[Rat, Rat]:
    """Rational point ``(cos r, sin r)`` for ``t = tan(r/2)``."""
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


# parameters t = tan(r/2) around the minimizer of sin 2r + cos r + sin r (t ~ -0.648)
EXP_GRID_T = tuple(Rat(*p) for p in ((-1, 1), (-2, 3), (-13, 20), (-5, 8), (-3, 5), (-2, 5), (0, 1)))


def exp_scaled(seed: int, samples: int, bound: int) -> Reproduction:
    R = ScalarModel(2)
    tau = trunc.meet_cap(Rat(1))
    rep = Reproduction("exp-scaled", R, "one-point analogue: Q with product 2xy and cap 1")
    ctx = UnitizationContext(R, tau)
    u, v = Unitized(Rat(-1), Rat(1)), Unitized(Rat(1), Rat(1))
    product = uz.multiply_u(ctx, u, v)
    cl = cls.classify_unitization(R, tau, seed=seed, samples=samples)
    rep.results.update(
        axioms=trunc.check_axioms(R, tau, seed=seed, samples=samples, bound=bound),
        classification=cl,
        escape=cls.ConeEscape(u, v, product),
        product_negative_part=R.neg_part(product.g),
    )
    rep.expectations.update(
        truncation_verified=rep.results["axioms"].verified,
        not_l_ring=not cl.is_l_ring,
        factors_positive=uz.is_positive(ctx, u) and uz.is_positive(ctx, v),
        product_is_minus_2_plus_1=product == Unitized(Rat(-2), Rat(1)),
        product_not_positive=cls.cone_escape(ctx, u, v),
    )
    return rep


def exp_grid(seed: int, samples: int, bound: int) -> Reproduction:
    labels = [format_rat(t) for t in EXP_GRID_T]
    R = GridModel(labels, 2)
    tau = trunc.const_cap(Rat(1))
    rep = Reproduction("exp-grid", R, "cos and sin sampled at rational circle points, "
                       "product 2xy, cap 1")
    ctx = UnitizationContext(R, tau)
    pts = [circle_point(t) for t in EXP_GRID_T]
    x = R.from_coords(p[0] for p in pts)
    y = R.from_coords(p[1] for p in pts)
    u, v = Unitized(x, Rat(1)), Unitized(y, Rat(1))
    product = uz.multiply_u(ctx, u, v)
    neg = R.neg_part(product.g)
    worst = max(R.coords(neg))
    rep.results.update(
        x=x, y=y, product=product, product_negative_part=neg, max_negative_part=worst,
        classification=cls.classify_unitization(R, tau, seed=seed, samples=samples),
    )
    rep.expectations.update(
        factors_positive=uz.is_positive(ctx, u) and uz.is_positive(ctx, v),
        product_rational_part_1=product.q == 1,
        negative_part_exceeds_cap=worst > 1,
        negative_part_below_5_4=worst <= Rat(5, 4),
        product_not_positive=cls.cone_escape(ctx, u, v),
        not_l_ring=not rep.results["classification"].is_l_ring,
    )
    return rep


def cap2(seed: int, samples: int, bound: int) -> Reproduction:
    R = ScalarModel(1)
    tau = trunc.meet_cap(Rat(2))
    rep = Reproduction("cap2", R, "Q with the usual product and the truncation 2 ^ x")
    cl = cls.classify_unitization(R, tau, seed=seed, samples=samples)
    rep.results.update(
        axioms=trunc.check_axioms(R, tau, seed=seed, samples=samples, bound=bound),
        classification=cl,
        two_in_range=trunc.in_range(R, tau, Rat(2)),
        two_dominated=cls.is_idempotent_dominated(R, Rat(2)),
    )
    rep.expectations.update(
        truncation_verified=rep.results["axioms"].verified,
        not_l_ring=not cl.is_l_ring,
        range_mismatch=isinstance(cl.witness, cls.RangeMismatch),
        witness_replays=cl.witness is not None and cls.replay_classification(R, tau, 1, cl.witness),
        two_is_mismatch=cls.is_range_mismatch(R, tau, Rat(2)),
    )
    return rep


def zeromul(seed: int, samples: int, bound: int) -> Reproduction:
    R = ZeroMulModel()
    tau = trunc.meet_cap(R.from_coords((1, 1)))
    rep = Reproduction("zeromul", R, "Q^2 with zero product and cap (1, 1)")
    cl = cls.classify_unitization(R, tau, seed=seed, samples=samples)
    red = cls.is_reduced(R, seed, samples)
    rep.results.update(reduced=red, classification=cl)
    rep.expectations.update(
        not_reduced=red.violated and R.is_zero(R.square(red.get("x"))),
        not_l_ring=not cl.is_l_ring,
        witness_2_2=isinstance(cl.witness, cls.RangeMismatch)
        and cl.witness.x == R.from_coords((2, 2)),
    )
    return rep


def lexplane(seed: int, samples: int, bound: int) -> Reproduction:
    G = LexModel()
    tau = trunc.meet_cap(G.vec(0, 1))
    rep = Reproduction("lexplane", G, "lexicographic plane with the truncation (0, 1) ^ x")
    ctx = UnitizationContext(G, tau)
    in_g = cls.archimedean_witness(G, bound, seed)
    in_tg = cls.archimedean_witness(ctx, bound, seed)
    rep.results.update(
        axioms=trunc.check_axioms(G, tau, seed=seed, samples=samples, bound=bound),
        witness_G=in_g, witness_tauG=in_tg,
        wrong_cap=trunc.check_axioms(G, trunc.meet_cap(G.vec(1, 0)), seed=seed,
                                     samples=samples, bound=bound),
    )
    rep.expectations.update(
        truncation_verified=rep.results["axioms"].verified,
        witness_in_G=in_g.violated and cls.replay_archimedean(G, in_g),
        witness_in_tauG=in_tg.violated and cls.replay_archimedean(ctx, in_tg),
        infinitely_large_cap_fails_tau3=rep.results["wrong_cap"].clause == "tau3",
    )
    return rep


def stone_finsupp(seed: int, samples: int, bound: int) -> Reproduction:
    R = FinSuppModel(1)
    rep = Reproduction("stone-finsupp", R, "finitely supported sequences, a Stone f-ring "
                       "without identity")
    stone = orth.stone_check(R, seed, samples)
    tau = orth.stone_function(R)
    cl = cls.classify_unitization(R, tau, seed=seed, samples=samples)
    rep.results.update(stone=stone, stone_function=tau, classification=cl)
    rep.expectations.update(
        stone_verified=stone.verified,
        no_identity=R.ring_identity() is None,
        stone_function_is_cap_1=tau == trunc.const_cap(1),
        l_ring=cl.is_l_ring,
    )
    return rep


EXAMPLES: dict[str, Callable[[int, int, int], Reproduction]] = {
    "exp-scaled": exp_scaled,
    "exp-grid": exp_grid,
    "cap2": cap2,
    "zeromul": zeromul,
    "lexplane": lexplane,
    "stone-finsupp": stone_finsupp,
}


def run_example(name: str, seed: int = 0, samples: int = cls.DEFAULT_SAMPLES,
                bound: int = cls.DEFAULT_BOUND) -> Reproduction:
    try:
        fn = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return fn(seed, samples, bound)
