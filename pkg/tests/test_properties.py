"""Property tests with shrinking counterexamples."""

from hypothesis import given, settings, strategies as st

from alexandroff import classify as cls
from alexandroff import orthorep as orth
from alexandroff import truncation as trunc
from alexandroff import unitization as uz
from alexandroff.models import FinSuppModel, GridModel, LexModel
from alexandroff.oracle import GridOracle
from alexandroff.rational import Rat, format_rat, parse_rat
from alexandroff.unitization import UnitizationContext, Unitized

GRID = GridModel(["a", "b", "c"])
LEX = LexModel()
FIN = FinSuppModel()

rats = st.builds(Rat, st.integers(-40, 40), st.integers(1, 12))
pos_rats = st.builds(Rat, st.integers(1, 40), st.integers(1, 12))
grid_elems = st.lists(rats, min_size=3, max_size=3).map(GRID.from_coords)
grid_caps = st.lists(pos_rats, min_size=3, max_size=3).map(GRID.from_coords)
lex_elems = st.builds(LEX.vec, rats, rats)
fin_elems = st.dictionaries(st.integers(0, 5), rats, max_size=4).map(FIN.element)
unitized = st.builds(Unitized, grid_elems, rats)
scales = st.sampled_from([Rat(1), Rat(2), Rat(1, 3), Rat(3, 2)])

SETTINGS = settings(max_examples=150, deadline=None)


@SETTINGS
@given(rats)
def test_rational_roundtrip(q):
    assert parse_rat(format_rat(q)) == q


@SETTINGS
@given(st.sampled_from([(GRID, grid_elems), (LEX, lex_elems), (FIN, fin_elems)]).flatmap(
    lambda mg: st.tuples(st.just(mg[0]), mg[1], mg[1], mg[1])))
def test_lattice_laws(args):
    M, x, y, z = args
    assert M.join(x, M.meet(x, y)) == x
    assert M.meet(M.join(x, y), z) == M.join(M.meet(x, z), M.meet(y, z))
    assert M.add(M.join(x, y), M.meet(x, y)) == M.add(x, y)
    assert M.sub(M.pos_part(x), M.neg_part(x)) == x
    assert M.is_zero(M.meet(M.pos_part(x), M.neg_part(x)))


@SETTINGS
@given(grid_caps, scales, unitized, unitized)
def test_formulas_agree_with_oracle(cap, c, u, v):
    ctx = UnitizationContext(GRID, trunc.meet_cap(cap), c)
    oracle = GridOracle(ctx)
    assert uz.is_positive(ctx, u) == oracle.is_positive(u)
    assert uz.pos_part_u(ctx, u) == oracle.pos_part(u)
    assert uz.abs_u(ctx, u) == oracle.abs(u)
    assert uz.join_u(ctx, u, v) == oracle.join(u, v)
    assert uz.meet_u(ctx, u, v) == oracle.meet(u, v)


@SETTINGS
@given(grid_caps, scales, unitized, unitized, pos_rats)
def test_cone_is_a_cone(cap, c, u, v, r):
    ctx = UnitizationContext(GRID, trunc.meet_cap(cap), c)
    pu, pv = uz.abs_u(ctx, u), uz.abs_u(ctx, v)
    assert uz.is_positive(ctx, pu) and uz.leq(ctx, u, pu)
    assert uz.is_positive(ctx, uz.add(ctx, pu, pv))
    assert uz.is_positive(ctx, uz.scale(ctx, r, pu))
    assert not (uz.leq(ctx, u, v) and uz.leq(ctx, v, u)) or u == v


@SETTINGS
@given(st.sampled_from([(LEX, lex_elems), (FIN, fin_elems)]).flatmap(
    lambda mg: st.tuples(st.just(mg[0]), mg[1], mg[1], rats)), st.data())
def test_non_pointwise_unitizations(args, data):
    M, g, h, q = args
    tau = trunc.meet_cap(LEX.vec(0, 1)) if M is LEX else trunc.const_cap(1)
    ctx = UnitizationContext(M, tau)
    u, v = Unitized(g, q), Unitized(h, data.draw(rats))
    j = uz.join_u(ctx, u, v)
    assert uz.leq(ctx, u, j) and uz.leq(ctx, v, j)
    assert uz.add(ctx, j, uz.meet_u(ctx, u, v)) == uz.add(ctx, u, v)
    assert uz.sub(ctx, uz.pos_part_u(ctx, u), uz.neg_part_u(ctx, u)) == u


@SETTINGS
@given(scales, pos_rats, scales)
def test_range_criterion_is_the_constant_c_over_s(s, q, c):
    R = GridModel(["a", "b"], s)
    v = cls.range_equals_idempotent_set(R, trunc.const_cap(q), c)
    assert v.verified == (q == c / s)
    if v.violated:
        assert cls.is_range_mismatch(R, trunc.const_cap(q), v.get("x"), c)


@SETTINGS
@given(scales, grid_elems, grid_elems)
def test_J_preserves_structure(s, x, y):
    R = GridModel(["a", "b", "c"], s)
    x, y = R.from_coords(GRID.coords(x)), R.from_coords(GRID.coords(y))
    jx, jy = orth.embed_J(R, x), orth.embed_J(R, y)
    assert orth.embed_J(R, R.multiply(x, y)) == orth.m_compose(R, jx, jy)
    assert orth.embed_J(R, R.join(x, y)) == orth.m_join(R, jx, jy)
    assert orth.m_apply(R, jx, y) == R.multiply(x, y)
