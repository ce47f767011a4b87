"""The ten acceptance criteria at their stated sample sizes.

Each criterion prints one ``PASS`` / ``FAIL`` line; pytest collects them into
the terminal summary.  Run standalone with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import sys
import time
from typing import Callable

import pytest

from alexandroff import classify as cls
from alexandroff import orthorep as orth
from alexandroff import truncation as trunc
from alexandroff import unitization as uz
from alexandroff.cli import main as cli_main
from alexandroff.models import FinSuppModel, GridModel, LexModel, ScalarModel, ZeroMulModel
from alexandroff.rational import Rat
from alexandroff.suites import (GRID_CARRIER, SWEEP, coherence_checks, oracle_checks,
                                registered_groups, registered_rings, sweep_accepts,
                                unitization_order_checks)
from alexandroff.unitization import UnitizationContext, Unitized

SAMPLES = 1000
ORACLE_SAMPLES = 10_000
CONE_SAMPLES = 10_000
# the sweeps reject all but one cap structurally; the survivor gets this many cone pairs
SWEEP_CONE_SAMPLES = 2000
SELFTEST_SAMPLES = 20
SEEDS = range(10)
GRID = GridModel(GRID_CARRIER[:4], 2)


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def criterion_1() -> str:
    G = GridModel(GRID_CARRIER)
    L = LexModel()
    cases = [
        ("grid", G, trunc.meet_cap(G.const(1))),
        ("scalar", ScalarModel(1), trunc.meet_cap(Rat(2))),
        ("lex", L, trunc.meet_cap(L.vec(0, 1))),
        ("finsupp", FinSuppModel(1), trunc.const_cap(1)),
    ]
    for name, M, tau in cases:
        v = trunc.check_axioms(M, tau, seed=0, samples=SAMPLES)
        _expect(v.verified and v.structural, f"{name}: {v.status.value} {v.message}")
    zero = trunc.custom("zero")
    v = trunc.check_axioms(G, zero, seed=0, samples=SAMPLES)
    _expect(v.violated and v.clause == "tau2" and v.get("x") == G.const(1),
            f"custom zero: {v}")
    _expect(trunc.replay(G, zero, v), "custom zero witness does not replay")
    return "4 truncations verified, custom zero violates tau2 at x = const 1"


def criterion_2() -> str:
    groups = [g for g in registered_groups() if g[0] in ("grid", "finsupp", "lex", "scalar")]
    _expect(len(groups[0][1].carrier) <= 6, "grid carrier too large")
    for seed in SEEDS:
        for name, G, tau in groups:
            v = unitization_order_checks(UnitizationContext(G, tau), seed, SAMPLES)
            _expect(v.verified and v.checked == SAMPLES,
                    f"{name} seed {seed}: {v.clause} {dict(v.witness)}")
    return f"{len(SEEDS)} seeds x {SAMPLES} samples x {len(groups)} models, zero failures"


def criterion_3() -> str:
    _, G, tau = registered_groups()[0]
    v = oracle_checks(UnitizationContext(G, tau), 0, ORACLE_SAMPLES)
    _expect(v.verified and v.checked == ORACLE_SAMPLES, f"{v.clause} {dict(v.witness)}")
    return f"{ORACLE_SAMPLES} inputs per operation, zero disagreements"


def criterion_4() -> str:
    for s in (Rat(1), Rat(2), Rat(3, 2)):
        R = GridModel(GRID_CARRIER[:4], s)
        tau = trunc.const_cap(1 / s)
        cl = cls.classify_unitization(R, tau, seed=0, samples=SAMPLES, cone_samples=CONE_SAMPLES)
        _expect(cl.is_l_ring, f"s = {s}: {cl.outcome}")
        cone = cl.evidence["cone"]
        _expect(cone.verified and cone.checked == CONE_SAMPLES, f"s = {s}: cone {cone}")
    return f"IsLRing for s in 1, 2, 3/2; no escape in {CONE_SAMPLES} positive pairs each"


def criterion_5() -> str:
    cl = cls.classify_unitization(GRID, trunc.const_cap(1), seed=0, samples=SAMPLES)
    _expect(not cl.is_l_ring and isinstance(cl.witness, cls.RangeMismatch)
            and cl.witness.x == GRID.const(Rat(3, 4)), f"grid cap 1: {cl.witness}")

    S1 = ScalarModel(1)
    cl = cls.classify_unitization(S1, trunc.meet_cap(Rat(2)), seed=0, samples=SAMPLES)
    _expect(not cl.is_l_ring and cls.replay_classification(S1, trunc.meet_cap(Rat(2)), 1,
                                                           cl.witness), "scalar cap 2")

    S2 = ScalarModel(2)
    tau = trunc.meet_cap(Rat(1))
    ctx = UnitizationContext(S2, tau)
    u, v = Unitized(Rat(-1), Rat(1)), Unitized(Rat(1), Rat(1))
    product = uz.multiply_u(ctx, u, v)
    _expect(product.q == 1 and product.g == -2 and S2.neg_part(product.g) == 2,
            f"product {product}")
    esc = cls.find_cone_escape(ctx, seed=0, samples=0, candidates=[(u, v)])
    _expect(esc.violated and esc.get("u") == u and esc.get("v") == v, "escape not found")
    _expect(not cls.classify_unitization(S2, tau, seed=0, samples=SAMPLES).is_l_ring,
            "scalar c = 2 classified as l-ring")

    Z = ZeroMulModel()
    cl = cls.classify_unitization(Z, trunc.meet_cap(Z.from_coords((1, 1))), seed=0)
    _expect(not cl.is_l_ring, "zeromul classified as l-ring")
    return "grid cap 1, scalar cap 2, scalar c = 2 escape (-1,1)(1,1) -> (-2,1), zeromul"


def criterion_6() -> str:
    acc = sweep_accepts(GRID, Rat(1), SWEEP, 0, SAMPLES, SWEEP_CONE_SAMPLES)
    _expect(acc == [Rat(1, 2)], f"accepted {acc}")
    return "exactly 1/2 accepted among k/8, k = 1..16"


def criterion_7() -> str:
    R = GridModel(GRID_CARRIER[:4], 1)
    for c in (Rat(2), Rat(3)):
        caps = tuple(Rat(k, 8) for k in range(1, 8 * int(c) + 1))
        acc = sweep_accepts(R, c, caps, 0, SAMPLES, SWEEP_CONE_SAMPLES)
        _expect(acc == [c], f"c = {c}: accepted {acc}")
    return "exactly ConstCap(c) accepted for c = 2 and c = 3"


def criterion_8() -> str:
    for name, R in registered_rings():
        _expect(cls.is_reduced(R, 0, SAMPLES).verified, f"{name} not reduced")
        v = coherence_checks(R, 0, SAMPLES)
        _expect(v.verified, f"{name}: {v.clause} {v.message}")
    Z = ZeroMulModel()
    v = cls.is_reduced(Z, 0, SAMPLES)
    _expect(v.violated and Z.is_zero(Z.square(v.get("x"))) and not Z.is_zero(v.get("x")),
            "zeromul reduced")
    return f"{len(registered_rings())} reduced models coherent, zeromul not reduced"


def criterion_9() -> str:
    L = LexModel()
    lctx = UnitizationContext(L, trunc.meet_cap(L.vec(0, 1)))
    for target in (L, lctx):
        v = cls.archimedean_witness(target, seed=0)
        _expect(v.violated and v.structural and cls.replay_archimedean(target, v),
                f"no certified witness for {target}")
    for R in (GRID, FinSuppModel(1), ScalarModel(1)):
        v = cls.archimedean_witness(R)
        _expect(v.verified, f"{R.kind} not Archimedean")
        _expect(orth.stone_check(R, 0, SAMPLES).verified, f"{R.kind} stone_check")
    _expect(orth.stone_function(GRID) == trunc.const_cap(Rat(1, 2)), "grid Stone function")
    _expect(orth.stone_function(FinSuppModel(1)) == trunc.const_cap(1), "finsupp Stone function")
    _expect(orth.j_preserves_truncation(GRID, trunc.const_cap(Rat(1, 2)), 0, SAMPLES).verified,
            "J not a truncation homomorphism for the Stone function")
    bad = orth.j_preserves_truncation(GRID, trunc.const_cap(1), 0, SAMPLES)
    _expect(bad.violated and bad.get("x") == GRID.const(Rat(3, 4)), f"cap 1: {bad}")
    for name, R in registered_rings():
        ctx = UnitizationContext(R, orth.stone_function(R))
        v = orth.extension_check(ctx, 0, SAMPLES)
        _expect(v.verified, f"extension on {name}: {v.clause}")
    for R in (GRID, FinSuppModel(1)):
        stone = orth.stone_function(R)
        for q in SWEEP:
            tau = trunc.const_cap(q)
            is_l = cls.classify_unitization(R, tau, seed=0, samples=SAMPLES,
                                            cone_samples=SWEEP_CONE_SAMPLES).is_l_ring
            _expect(is_l == (tau == stone), f"{R.kind} cap {q}: l-ring {is_l}")
    return "lex witnesses certified, Stone checks, J and extension invariants, final theorem"


def _selftest(threads: int) -> str:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(["selftest", "--seed", "7", "--samples", str(SELFTEST_SAMPLES),
                         "--threads", str(threads)])
    _expect(code == 0, f"selftest exit {code} with {threads} threads")
    return out.getvalue()


def criterion_10() -> str:
    first, second, threaded = _selftest(1), _selftest(1), _selftest(8)
    _expect(first == second, "two runs differ")
    _expect(first == threaded, "1 and 8 threads differ")
    return f"{len(first.encode())} byte report identical across runs and thread counts"


CRITERIA: dict[int, Callable[[], str]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run_criterion(n: int) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        detail = CRITERIA[n]()
        ok = True
    except AssertionError as exc:
        detail, ok = str(exc), False
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - start:.1f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, record_property):
    ok, line = run_criterion(n)
    print(line)
    record_property("acceptance", line)
    assert ok, line


def main() -> int:
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
