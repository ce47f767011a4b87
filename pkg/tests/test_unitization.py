import random

import pytest

from alexandroff import truncation as trunc
from alexandroff import unitization as uz
from alexandroff.lattice import ModelError
from alexandroff.models import GridModel, LexModel, ScalarModel
from alexandroff.oracle import GridOracle
from alexandroff.rational import Rat
from alexandroff.unitization import UnitizationContext, Unitized
from alexandroff.verdict import PreconditionError


@pytest.fixture
def G():
    return GridModel(["s", "t"])


@pytest.fixture
def ctx(G):
    return UnitizationContext(G, trunc.meet_cap(G.const(1)))


def U(G, coords, q):
    return Unitized(G.from_coords(coords), Rat(q))


def test_is_positive_examples(G, ctx):
    assert uz.is_positive(ctx, U(G, [Rat(-1, 2), -1], 1))
    assert not uz.is_positive(ctx, U(G, [-2, 0], 1))
    assert not uz.is_positive(ctx, U(G, [0, 0], -1))
    assert uz.is_positive(ctx, U(G, [3, 0], 0))


def test_pos_part_examples(G, ctx):
    assert uz.pos_part_u(ctx, U(G, [2, 2], -1)) == U(G, [1, 1], 0)
    x = G.from_coords([-1, 3])
    assert uz.pos_part_u(ctx, Unitized(x, Rat(0))) == Unitized(G.pos_part(x), Rat(0))
    assert uz.pos_part_u(ctx, U(G, [-1, 3], 2)) == U(G, [-1, 3], 2)


def test_abs_examples(G, ctx):
    assert uz.abs_u(ctx, U(G, [0, 0], -3)) == U(G, [0, 0], 3)
    # pointwise |2 - 1| = 1 and |-1| = 1 at infinity give G-part 1 - 1 = 0
    u = U(G, [2, 2], -1)
    assert uz.abs_u(ctx, u) == U(G, [0, 0], 1) == GridOracle(ctx).abs(u)
    x = G.from_coords([-1, 3])
    assert uz.abs_u(ctx, Unitized(x, Rat(0))) == Unitized(G.abs(x), Rat(0))


def test_join_meet_examples(G, ctx):
    u = U(G, [-1, 3], Rat(1, 2))
    assert uz.join_u(ctx, u, u) == u == uz.meet_u(ctx, u, u)
    x = G.from_coords([3, Rat(1, 2)])
    assert uz.meet_u(ctx, uz.one(ctx), uz.embed(ctx, x)) == U(G, [1, Rat(1, 2)], 0)


def test_multiply_examples():
    R = ScalarModel(2)
    ctx = UnitizationContext(R, trunc.meet_cap(Rat(1)))
    u, v = Unitized(Rat(-1), Rat(1)), Unitized(Rat(1), Rat(1))
    assert uz.is_positive(ctx, u) and uz.is_positive(ctx, v)
    w = uz.multiply_u(ctx, u, v)
    assert w == Unitized(Rat(-2), Rat(1))
    assert R.neg_part(w.g) == 2 and not uz.is_positive(ctx, w)
    assert uz.multiply_u(ctx, uz.one(ctx), u) == u
    x, y = Unitized(Rat(3), Rat(0)), Unitized(Rat(-1, 2), Rat(0))
    assert uz.multiply_u(ctx, x, y) == Unitized(R.multiply(x.g, y.g), Rat(0))


def test_multiply_needs_a_ring():
    L = LexModel()
    ctx = UnitizationContext(L, trunc.meet_cap(L.vec(0, 1)))
    with pytest.raises(ModelError):
        uz.multiply_u(ctx, uz.one(ctx), uz.one(ctx))


def test_scaled_cone(G):
    tau = trunc.meet_cap(G.const(1))
    ctx2 = UnitizationContext(G, tau, 2)
    # (2/1) x^- = [2, 2] leaves the range for c = 2 but not x^- = [1, 1] for c = 1
    u = U(G, [-1, -1], 1)
    assert uz.is_positive(UnitizationContext(G, tau), u)
    assert not uz.is_positive(ctx2, u)
    assert uz.is_positive(ctx2, U(G, [-1, -1], 2))


def test_context_validation(G):
    with pytest.raises(ModelError):
        UnitizationContext(G, trunc.const_cap(1), 0)
    with pytest.raises(ValueError):
        UnitizationContext(G, trunc.const_cap(1), fault="nope")
    with pytest.raises(PreconditionError):
        UnitizationContext.checked(G, trunc.custom("zero"))
    assert UnitizationContext.checked(G, trunc.const_cap(1), "3/2").scale_c == Rat(3, 2)


def test_positive_sampler_stays_in_the_cone(G):
    rng = random.Random(5)
    for c in (1, 2, Rat(1, 3)):
        ctx = UnitizationContext(G, trunc.meet_cap(G.from_coords([1, Rat(1, 4)])), c)
        for _ in range(300):
            assert uz.is_positive(ctx, uz.sample_positive_unitized(ctx, rng))


@pytest.mark.parametrize("c", [1, 2, Rat(1, 3)])
def test_formulas_match_oracle(c):
    G = GridModel(["a", "b", "c"])
    ctx = UnitizationContext(G, trunc.meet_cap(G.from_coords([1, Rat(1, 2), 3])), c)
    oracle = GridOracle(ctx)
    rng = random.Random(11)
    for _ in range(500):
        u, v = uz.sample_unitized(ctx, rng), uz.sample_unitized(ctx, rng)
        assert oracle.lower(oracle.lift(u)) == u
        assert uz.is_positive(ctx, u) == oracle.is_positive(u)
        assert uz.pos_part_u(ctx, u) == oracle.pos_part(u)
        assert uz.abs_u(ctx, u) == oracle.abs(u)
        assert uz.join_u(ctx, u, v) == oracle.join(u, v)
        assert uz.meet_u(ctx, u, v) == oracle.meet(u, v)


def test_oracle_refuses_unsupported_models():
    L = LexModel()
    with pytest.raises(ModelError):
        GridOracle(UnitizationContext(L, trunc.meet_cap(L.vec(0, 1))))


def test_fault_is_detected_by_oracle(G):
    ctx = UnitizationContext(G, trunc.meet_cap(G.const(1)), fault="flip_pos_part_sign")
    u = U(G, [-1, 0], 1)
    assert uz.pos_part_u(ctx, u) != GridOracle(ctx).pos_part(u)


def test_encode_decode(G):
    u = U(G, [Rat(-1, 3), 2], Rat(5, 7))
    assert uz.decode_unitized(G, uz.encode_unitized(G, u)) == u
    with pytest.raises(ModelError):
        uz.decode_unitized(G, {"g": ["s=0", "t=0"], "q": 1})
