import pytest

from alexandroff import truncation as trunc
from alexandroff.lattice import ModelError
from alexandroff.models import FinSuppModel, GridModel, LexModel, ScalarModel
from alexandroff.rational import Rat
from alexandroff.verdict import Status


@pytest.fixture
def G():
    return GridModel(["s", "t"])


def test_apply_examples(G):
    one = trunc.meet_cap(G.const(1))
    assert trunc.apply(G, one, G.from_coords([Rat(1, 2), 3])) == G.from_coords([Rat(1, 2), 1])
    L = LexModel()
    assert trunc.apply(L, trunc.meet_cap(L.vec(0, 1)), L.vec(2, -5)) == L.vec(0, 1)
    for M, tau in ((G, one), (L, trunc.meet_cap(L.vec(0, 1))), (G, trunc.custom("identity"))):
        assert trunc.apply(M, tau, M.zero()) == M.zero()


def test_apply_outside_the_cone(G):
    with pytest.raises(trunc.NotPositiveError):
        trunc.apply(G, trunc.const_cap(1), G.from_coords([-1, 0]))


def test_in_range_examples(G):
    one = trunc.meet_cap(G.const(1))
    assert trunc.in_range(G, one, G.from_coords([Rat(1, 2), 1]))
    assert not trunc.in_range(G, one, G.from_coords([2, 0]))
    assert trunc.in_range(G, trunc.custom("zero"), G.zero())


def test_check_axioms_verified():
    G = GridModel(["-1", "0", "1"])
    cases = [
        (G, trunc.meet_cap(G.const(1))),
        (ScalarModel(1), trunc.meet_cap(Rat(2))),
        (LexModel(), trunc.meet_cap(LexModel().vec(0, 1))),
        (FinSuppModel(1), trunc.const_cap(1)),
    ]
    for M, tau in cases:
        v = trunc.check_axioms(M, tau, seed=3, samples=1000)
        assert v.status is Status.VERIFIED, (M.kind, v)
        assert v.structural


def test_custom_zero_violates_tau2(G):
    tau = trunc.custom("zero")
    v = trunc.check_axioms(G, tau)
    assert v.violated and v.clause == "tau2"
    assert v.get("x") == G.const(1)
    assert trunc.replay(G, tau, v)


def test_custom_identity_is_inconclusive(G):
    tau = trunc.custom("identity")
    v = trunc.check_axioms(G, tau, bound=16)
    assert v.status is Status.INCONCLUSIVE and v.clause == "tau3" and v.bound == 16


def test_table_truncation_violating_tau1(G):
    x, y = G.from_coords([1, 1]), G.from_coords([2, 2])
    # x ^ tau(y) = x lies above tau(x) = 1/2
    tau = trunc.custom(table=[(x, G.from_coords([Rat(1, 2), Rat(1, 2)])), (y, y)],
                       fn=lambda z: G.meet(z, G.const(1)))
    v = trunc.check_axioms(G, tau)
    assert v.violated and v.clause == "tau1"
    assert trunc.replay(G, tau, v)


def test_structural_failures():
    G = GridModel(["a", "b"])
    v = trunc.check_axioms(G, trunc.meet_cap(G.indicator(0)))
    assert v.violated and v.clause == "tau2" and v.get("x") == G.indicator(1)
    v = trunc.check_axioms(G, trunc.meet_cap(G.from_coords([1, -1])))
    assert v.violated and v.clause == "codomain"
    L = LexModel()
    v = trunc.check_axioms(L, trunc.meet_cap(L.vec(1, 0)))
    assert v.violated and v.clause == "tau3" and trunc.replay(L, trunc.meet_cap(L.vec(1, 0)), v)
    F = FinSuppModel()
    v = trunc.check_axioms(F, trunc.meet_cap(F.block(1, 3)))
    assert v.violated and v.clause == "tau2" and v.get("x") == F.indicator(3)


def test_truncations_equal_examples(G):
    one = trunc.meet_cap(G.const(1))
    assert trunc.truncations_equal(G, one, trunc.const_cap(1)).verified
    assert trunc.truncations_equal(G, one, one).verified
    half = trunc.meet_cap(G.const(Rat(1, 2)))
    v = trunc.truncations_equal(G, one, half)
    assert v.violated and v.get("x") == G.const(Rat(3, 4))
    assert trunc.replay_equal(G, one, half, v)


def test_truncations_equal_sampled(G):
    tau = trunc.custom(fn=lambda x: G.meet(x, G.const(1)))
    assert trunc.truncations_equal(G, tau, trunc.const_cap(1)).verified
    v = trunc.truncations_equal(G, tau, trunc.const_cap(2))
    assert v.violated and trunc.replay_equal(G, tau, trunc.const_cap(2), v)


def test_spec_validation(G):
    with pytest.raises(ModelError):
        trunc.const_cap(0)
    with pytest.raises(ModelError):
        trunc.custom("halve")
    with pytest.raises(ModelError):
        trunc.validate(LexModel(), trunc.const_cap(1))
    with pytest.raises(ModelError):
        trunc.validate(G, trunc.custom())


def test_encode_decode_roundtrip(G):
    for tau in (trunc.meet_cap(G.from_coords([1, Rat(1, 2)])), trunc.const_cap(Rat(3, 2)),
                trunc.custom("zero"),
                trunc.custom(table=[(G.const(1), G.const(Rat(1, 2)))])):
        assert trunc.decode_truncation(G, trunc.encode_truncation(G, tau)) == tau


@pytest.mark.parametrize("data", [
    {"kind": "const_cap", "value": 1},
    {"kind": "const_cap", "value": "-1"},
    {"kind": "meet_cap", "value": ["s=1"]},
    {"kind": "meet_cap", "value": ["s=1", "t=1"], "table": []},
    {"kind": "custom", "table": [["s=1"]]},
    {"kind": "custom"},
    {"kind": "other"},
    {"kind": "const_cap", "value": "1", "extra": 1},
])
def test_decode_rejects(G, data):
    with pytest.raises(ModelError):
        trunc.decode_truncation(G, data)
