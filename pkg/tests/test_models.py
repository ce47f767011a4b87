import random

import pytest

from alexandroff.lattice import ModelError
from alexandroff.models import (FinSuppFn, FinSuppModel, GridModel, LexModel, Pair, ScalarModel,
                                ZeroMulModel, format_element, make_model)
from alexandroff.rational import Rat


def test_grid_lattice_parts():
    G = GridModel(["s", "t"])
    x = G.from_coords([-1, 2])
    assert G.pos_part(x) == G.from_coords([0, 2])
    assert G.neg_part(x) == G.from_coords([1, 0])
    assert G.abs(x) == G.from_coords([1, 2])
    assert G.abs(G.zero()) == G.zero()


def test_lex_lattice_parts():
    L = LexModel()
    assert L.pos_part(L.vec(-1, 5)) == L.vec(0, 0)
    assert L.neg_part(L.vec(0, -3)) == L.vec(0, 3)
    assert L.abs(L.vec(-1, 5)) == L.vec(1, -5)
    # brute force: the lex max of x and -x
    x = L.vec(-1, 5)
    assert L.abs(x) == max([x, L.neg(x)], key=lambda v: (v.a, v.b))


def test_positive_elements_are_fixed_by_pos_part():
    rng = random.Random(1)
    for M in (GridModel(["a", "b", "c"]), LexModel(), FinSuppModel(), ScalarModel()):
        for _ in range(50):
            x = M.sample_positive(rng)
            assert M.pos_part(x) == x
            assert M.is_zero(M.neg_part(x))


def test_make_model_examples():
    G = make_model({"kind": "grid", "carrier": ["-1", "0", "1"], "scale": "2"})
    assert isinstance(G, GridModel) and G.dim == 3 and G.mult_scale == 2
    L = make_model({"kind": "lex"})
    assert isinstance(L, LexModel) and not hasattr(L, "multiply")
    S = make_model({"kind": "scalar", "scale": "1"})
    assert S.multiply(Rat(-2), Rat(2)) == -4


@pytest.mark.parametrize("spec", [
    {"kind": "grid", "carrier": []},
    {"kind": "grid", "carrier": ["a", "a"]},
    {"kind": "grid"},
    {"kind": "grid", "carrier": ["a"], "scale": "0"},
    {"kind": "grid", "carrier": ["a"], "scale": "-1/2"},
    {"kind": "scalar", "scale": "x"},
    {"kind": "lex", "scale": "1"},
    {"kind": "nope"},
    {"kind": "finsupp", "width": 0},
    [],
])
def test_make_model_rejects(spec):
    with pytest.raises(ModelError):
        make_model(spec)


def test_multiply_examples():
    G = GridModel(["p"], 2)
    assert G.multiply(G.from_coords([Rat(1, 2)]), G.from_coords([3])) == G.from_coords([3])
    Z = ZeroMulModel()
    assert Z.multiply(Pair(Rat(1), Rat(2)), Pair(Rat(3), Rat(4))) == Pair(Rat(0), Rat(0))
    assert ScalarModel(1).multiply(Rat(-2), Rat(2)) == Rat(-4)


def test_ring_identity_examples():
    G = GridModel(["a", "b"], 2)
    assert G.ring_identity() == G.const(Rat(1, 2))
    assert FinSuppModel(1).ring_identity() is None
    assert ScalarModel(1).ring_identity() == 1
    assert ZeroMulModel().ring_identity() is None


def test_foreign_elements_are_rejected():
    G = GridModel(["a", "b"])
    H = GridModel(["a", "c"])
    with pytest.raises(ModelError):
        G.check(H.zero())
    assert not G.contains(G.from_coords([1, 2, 3]))
    with pytest.raises(ModelError):
        ZeroMulModel().multiply(Rat(1), Rat(1))


def test_finsupp_normalizes_support():
    F = FinSuppModel()
    x = F.element({3: 1, 0: Rat(-1, 2), 5: 0})
    assert x.support == ((0, Rat(-1, 2)), (3, Rat(1)))
    assert F.add(x, F.neg(x)) == F.zero()
    with pytest.raises(ModelError):
        FinSuppFn.of({-1: 1})


@pytest.mark.parametrize("M", [GridModel(["-1", "1/2"], 2), FinSuppModel(), LexModel(),
                               ScalarModel(3), ZeroMulModel()])
def test_format_parse_roundtrip(M):
    rng = random.Random(7)
    for _ in range(100):
        x = M.sample(rng)
        assert M.parse(M.format(x)) == x
        assert format_element(x) == M.format(x)


@pytest.mark.parametrize("M, data", [
    (GridModel(["a", "b"]), ["a=1"]),
    (GridModel(["a", "b"]), ["a=1", "a=2", "b=0"]),
    (GridModel(["a", "b"]), ["a=1", "b=0.5"]),
    (FinSuppModel(), ["x:1"]),
    (FinSuppModel(), ["1:1", "1:2"]),
    (LexModel(), "(1, 2"),
    (ScalarModel(), 3),
])
def test_parse_rejects(M, data):
    with pytest.raises(ModelError):
        M.parse(data)
