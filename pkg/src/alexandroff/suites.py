"""Property suites run by ``selftest``.

Every suite is a function ``(seed, samples, fault) -> list[(check, Verdict)]``.
Suites draw from their own generators seeded by ``(seed, suite name)``, so
results do not depend on which thread runs them or in which order.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from . import classify as cls
from . import orthorep as orth
from . import truncation as trunc
from . import unitization as uz
from .lattice import GroupModel
from .models import FinSuppModel, GridModel, LexModel, ScalarModel, ZeroMulModel
from .oracle import GridOracle
from .rational import Rat, format_rat, parse_rat, sample_positive_rat, sample_rat
from .reproductions import EXAMPLES
from .truncation import TruncationSpec
from .unitization import UnitizationContext, Unitized
from .verdict import Verdict

Check = tuple[str, Verdict]

GRID_CARRIER = ("-1", "-1/2", "0", "1/2", "1", "2")


def derive_seed(seed: int, name: str) -> int:
    h = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def registered_groups() -> list[tuple[str, GroupModel, TruncationSpec]]:
    """One verified truncation per model family, as used by the order suites."""
    grid = GridModel(GRID_CARRIER, 2)
    cap = grid.from_coords(parse_rat(v) for v in ("1", "1/2", "2", "1", "3/4", "1/4"))
    lex = LexModel()
    return [
        ("grid", grid, trunc.meet_cap(cap)),
        ("grid-unit", GridModel(GRID_CARRIER[:4], 1), trunc.meet_cap(GridModel(GRID_CARRIER[:4]).const(1))),
        ("finsupp", FinSuppModel(1), trunc.const_cap(1)),
        ("lex", lex, trunc.meet_cap(lex.vec(0, 1))),
        ("scalar", ScalarModel(1), trunc.meet_cap(Rat(2))),
    ]


def registered_rings() -> list[tuple[str, Any]]:
    return [
        ("grid-c1", GridModel(GRID_CARRIER[:4], 1)),
        ("grid-c2", GridModel(GRID_CARRIER[:4], 2)),
        ("grid-c3/2", GridModel(GRID_CARRIER[:4], Rat(3, 2))),
        ("finsupp-c1", FinSuppModel(1)),
        ("finsupp-c2", FinSuppModel(2)),
        ("scalar-c1", ScalarModel(1)),
        ("scalar-c2", ScalarModel(2)),
    ]


def _check(name: str, cond: bool, message: str, checked: int = 0, **witness: Any) -> Verdict:
    if cond:
        return Verdict.ok(message, checked=checked)
    return Verdict.fail(name, message, checked=checked, **witness)


def _first_failure(name: str, message: str, items, pred: Callable[..., bool]) -> Verdict:
    checked = 0
    for args in items:
        checked += 1
        if not pred(*args):
            return Verdict.fail(name, message, checked=checked,
                                **{f"a{i}": a for i, a in enumerate(args)})
    return Verdict.ok(message, checked=checked)


# -- core lattice identities -------------------------------------------------------


def lattice_identities(G: GroupModel, seed: int, samples: int) -> Verdict:
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        x, y, z = G.sample(rng), G.sample(rng), G.sample(rng)
        n = rng.randint(1, 16)
        p, m = G.pos_part(x), G.neg_part(x)
        checked += 1
        problems = [
            ("parts_disjoint", G.is_zero(G.meet(p, m))),
            ("decomposition", G.sub(p, m) == x),
            ("abs", G.abs(x) == G.add(p, m)),
            ("join_translation", G.add(G.join(x, y), z) == G.join(G.add(x, z), G.add(y, z))),
            ("meet_translation", G.add(G.meet(x, y), z) == G.meet(G.add(x, z), G.add(y, z))),
            ("divisible", G.multiple(n, G.scale(Rat(1, n), x)) == x),
            ("join_upper", G.leq(x, G.join(x, y)) and G.leq(y, G.join(x, y))),
            ("positive_parts", G.is_positive(p) and G.is_positive(m)),
        ]
        for name, ok in problems:
            if not ok:
                return Verdict.fail(name, f"{name} identity fails", checked=checked, x=x, y=y, z=z)
    return Verdict.ok("l-group identities", checked=checked)


def suite_core(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    for name, G, _ in registered_groups():
        out.append((f"identities[{name}]", lattice_identities(G, derive_seed(seed, name), samples)))
    out.append(("identities[zeromul]", lattice_identities(ZeroMulModel(), seed, samples)))
    rng = random.Random(seed)
    qs = [sample_rat(rng, 1000) for _ in range(samples)]
    out.append(("rational_roundtrip", _first_failure(
        "roundtrip", "parse(format(q)) = q", ((q,) for q in qs),
        lambda q: parse_rat(format_rat(q)) == q)))
    return out


# -- ring models ---------------------------------------------------------------------


def ring_axioms(R, seed: int, samples: int) -> Verdict:
    rng = random.Random(seed)
    e = R.ring_identity()
    checked = 0
    for _ in range(samples):
        x, y, z = R.sample(rng), R.sample(rng), R.sample(rng)
        px, py = R.abs(x), R.abs(y)
        checked += 1
        problems = [
            ("positive_products", R.is_positive(R.multiply(px, py))),
            ("associative", R.multiply(R.multiply(x, y), z) == R.multiply(x, R.multiply(y, z))),
            ("distributive", R.multiply(x, R.add(y, z)) == R.add(R.multiply(x, y), R.multiply(x, z))),
            ("commutative", R.multiply(x, y) == R.multiply(y, x)),
            ("squares", R.square(x) == R.square(R.abs(x)) and R.is_positive(R.square(x))),
        ]
        if e is not None:
            problems.append(("identity", R.multiply(e, x) == x == R.multiply(x, e)))
        for name, ok in problems:
            if not ok:
                return Verdict.fail(name, f"{name} fails", checked=checked, x=x, y=y, z=z)
    return Verdict.ok("l-ring axioms", checked=checked)


def suite_models(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    for name, R in registered_rings() + [("zeromul", ZeroMulModel())]:
        out.append((f"ring_axioms[{name}]", ring_axioms(R, derive_seed(seed, name), samples)))
    zm = cls.is_reduced(ZeroMulModel(), seed, samples)
    out.append(("zeromul_not_reduced", _check("zeromul", zm.violated, "ZeroMul has nilpotents")))
    return out


# -- truncations ------------------------------------------------------------------------


def truncation_properties(G: GroupModel, tau: TruncationSpec, seed: int, samples: int) -> Verdict:
    """Idempotence and downward closure of the range."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        x = G.sample_positive(rng)
        tx = trunc.apply(G, tau, x)
        y = G.meet(x, G.sample_positive(rng))
        checked += 1
        if trunc.apply(G, tau, tx) != tx:
            return Verdict.fail("idempotent", "tau(tau x) != tau x", checked=checked, x=x)
        if trunc.in_range(G, tau, x) and not trunc.in_range(G, tau, y):
            return Verdict.fail("downward", "range not downward closed", checked=checked, x=x, y=y)
        if not trunc.in_range(G, tau, tx):
            return Verdict.fail("range", "tau x not in the range", checked=checked, x=x)
    return Verdict.ok("range is a downward closed fixed-point set", checked=checked)


def caps_equality_agreement(G, seed: int, samples: int) -> Verdict:
    """``truncations_equal`` on cap pairs agrees with cap equality."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a = G.sample_positive(rng)
        b = a if rng.random() < 0.3 else G.sample_positive(rng)
        a, b = G.add(a, G.const(1)), G.add(b, G.const(1))
        t1, t2 = trunc.meet_cap(a), trunc.meet_cap(b)
        v = trunc.truncations_equal(G, t1, t2)
        checked += 1
        if v.verified != (a == b) or (v.violated and not trunc.replay_equal(G, t1, t2, v)):
            return Verdict.fail("equal", "verdict disagrees with cap equality",
                                checked=checked, x=a, y=b)
    return Verdict.ok("agrees with cap equality", checked=checked)


def suite_truncation(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    grid = GridModel(GRID_CARRIER, 1)
    lex = LexModel()
    cases = [
        ("grid_meet_cap_1", grid, trunc.meet_cap(grid.const(1)), True),
        ("scalar_meet_cap_2", ScalarModel(1), trunc.meet_cap(Rat(2)), True),
        ("lex_meet_cap_(0,1)", lex, trunc.meet_cap(lex.vec(0, 1)), True),
        ("finsupp_const_cap_1", FinSuppModel(1), trunc.const_cap(1), True),
        ("grid_custom_zero", grid, trunc.custom("zero"), False),
        ("grid_cap_with_zero", grid, trunc.meet_cap(grid.indicator(0)), False),
        ("lex_meet_cap_(1,0)", lex, trunc.meet_cap(lex.vec(1, 0)), False),
        ("finsupp_meet_cap", FinSuppModel(1), trunc.meet_cap(FinSuppModel(1).block(1, 3)), False),
    ]
    for name, G, tau, expected in cases:
        v = trunc.check_axioms(G, tau, seed=seed, samples=samples)
        ok = v.verified if expected else (v.violated and trunc.replay(G, tau, v))
        out.append((f"axioms[{name}]", _check(name, ok, v.message, v.checked)))
        if expected:
            out.append((f"range[{name}]", truncation_properties(G, tau, derive_seed(seed, name),
                                                                  samples)))
    out.append(("equal_vs_caps", caps_equality_agreement(grid, seed, min(samples, 300))))
    v = trunc.truncations_equal(grid, trunc.meet_cap(grid.const(1)), trunc.const_cap(1))
    out.append(("meet_vs_const", _check("equal", v.verified, "MeetCap(1) = ConstCap(1)")))
    return out


# -- unitization ---------------------------------------------------------------------------


def _upper_bounds(ctx, rng, u, v) -> list[Unitized]:
    """``u + (a, k)`` and ``v + (a, k)`` with random ``a`` and ``k > 0``, kept when
    they bound both elements; built without the join formula."""
    m = ctx.model
    k = abs(u.q - v.q)
    cands = [uz.add(ctx, base, Unitized(m.scale(Rat(1, 4), m.sample(rng)),
                                        k + sample_positive_rat(rng)))
             for base in (u, v)]
    return [w for w in cands if uz.leq(ctx, u, w) and uz.leq(ctx, v, w)]


def unitization_order_checks(ctx: UnitizationContext, seed: int, samples: int) -> Verdict:
    """The order invariants of the unitization on sampled elements."""
    rng = random.Random(seed)
    m = ctx.model
    one, zero = uz.one(ctx), uz.zero(ctx)
    e = m.ring_identity() if ctx.is_ring else None
    polar = e is not None and ctx.scale_c == 1 and trunc.cap_element(m, ctx.tau) == e
    checked = 0
    for _ in range(samples):
        u, v = uz.sample_unitized(ctx, rng), uz.sample_unitized(ctx, rng)
        if rng.random() < 0.3:
            u = uz.sample_positive_unitized(ctx, rng)
        pu, nu, au = uz.pos_part_u(ctx, u), uz.neg_part_u(ctx, u), uz.abs_u(ctx, u)
        j, mt = uz.join_u(ctx, u, v), uz.meet_u(ctx, u, v)
        x = m.sample_positive(rng)
        checked += 1
        checks = [
            ("decomposition", uz.sub(ctx, pu, nu) == u),
            ("abs", au == uz.add(ctx, pu, nu)),
            ("parts_disjoint", uz.is_zero(ctx, uz.meet_u(ctx, pu, nu))),
            ("pos_part_positive", uz.is_positive(ctx, pu) and uz.leq(ctx, u, pu)),
            ("upsilon4", not uz.is_zero(ctx, uz.meet_u(ctx, au, one))
             or uz.is_zero(ctx, u)),
            ("upsilon7", not uz.is_positive(ctx, u) or u.q >= 0),
            ("join_upper", uz.leq(ctx, u, j) and uz.leq(ctx, v, j)),
            ("join_commutes", j == uz.join_u(ctx, v, u)),
            ("meet_lower", uz.leq(ctx, mt, u) and uz.leq(ctx, mt, v)),
            ("modular", uz.add(ctx, j, mt) == uz.add(ctx, u, v)),
            ("least_upper", all(uz.leq(ctx, j, w) for w in _upper_bounds(ctx, rng, u, v))),
            ("upsilon6", uz.meet_u(ctx, au, uz.embed(ctx, x)).q == 0),
        ]
        if ctx.scale_c == 1:
            checks.append(("upsilon5", uz.meet_u(ctx, one, uz.embed(ctx, x))
                           == uz.embed(ctx, trunc.apply(m, ctx.tau, x))))
        if polar:
            w = uz.abs_u(ctx, Unitized(m.neg(e), Rat(1)))
            checks.append(("polar", uz.meet_u(ctx, w, uz.embed(ctx, m.abs(m.sample(rng)))) == zero))
        for name, ok in checks:
            if not ok:
                return Verdict.fail(name, f"{name} fails", checked=checked, u=u, v=v, x=x)
    return Verdict.ok("order invariants hold", checked=checked)


def oracle_checks(ctx: UnitizationContext, seed: int, samples: int) -> Verdict:
    """The formulas agree with the independent pointwise oracle."""
    oracle = GridOracle(ctx)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        u, v = uz.sample_unitized(ctx, rng), uz.sample_unitized(ctx, rng)
        if rng.random() < 0.3:
            u = uz.sample_positive_unitized(ctx, rng)
        checked += 1
        checks = [
            ("is_positive", uz.is_positive(ctx, u) == oracle.is_positive(u)),
            ("pos_part", uz.pos_part_u(ctx, u) == oracle.pos_part(u)),
            ("abs", uz.abs_u(ctx, u) == oracle.abs(u)),
            ("join", uz.join_u(ctx, u, v) == oracle.join(u, v)),
            ("meet", uz.meet_u(ctx, u, v) == oracle.meet(u, v)),
        ]
        for name, ok in checks:
            if not ok:
                return Verdict.fail(name, f"formula and oracle disagree on {name}",
                                    checked=checked, u=u, v=v)
    return Verdict.ok("formulas agree with the oracle", checked=checked)


def suite_unitization(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    for name, G, tau in registered_groups():
        ctx = UnitizationContext(G, tau, fault=fault)
        out.append((f"order[{name}]", unitization_order_checks(ctx, derive_seed(seed, name), samples)))
    for name, G, tau in registered_groups():
        if isinstance(G, (GridModel, ScalarModel)):
            for c in (Rat(1), Rat(2), Rat(1, 3)):
                ctx = UnitizationContext(G, tau, c, fault=fault)
                label = f"oracle[{name},c={format_rat(c)}]"
                out.append((label, oracle_checks(ctx, derive_seed(seed, label), samples)))
    return out


# -- classification -----------------------------------------------------------------------------


SWEEP = tuple(Rat(k, 8) for k in range(1, 17))


def sweep_accepts(R, c: Rat, caps, seed: int, samples: int, cone_samples: int) -> list[Rat]:
    return [q for q in caps
            if cls.classify_unitization(R, trunc.const_cap(q), c, seed=seed, samples=samples,
                                        cone_samples=cone_samples).is_l_ring]


def coherence_checks(R, seed: int, samples: int) -> Verdict:
    """The implications between the ring predicates on one reduced model."""
    red = cls.is_reduced(R, seed, samples)
    almost = cls.is_almost_f_ring(R, seed, samples)
    fr = cls.is_f_ring(R, seed, samples)
    if red.verified and almost.verified and not fr.verified:
        return Verdict.fail("reduced_almost_f", "reduced almost f-ring that is not an f-ring")
    e = R.ring_identity()
    if e is not None:
        weak = cls.is_weak_unit(R, e, seed, samples)
        if weak.verified and not almost.verified:
            return Verdict.fail("weak_unit", "weak unit identity without almost f-ring")
        inf = cls.find_infinitesimal(R, seed=seed, samples=samples)
        if inf.verified and weak.verified and not (red.verified and fr.verified):
            return Verdict.fail("infinitesimal", "no infinitesimals but not a reduced f-ring")
    for name, v in (("semi", cls.lemma_semi_check(R, seed, samples)),
                    ("commutation", cls.reduced_commutation_check(R, seed, samples))):
        if not v.verified:
            return v
    rng = random.Random(seed)
    for _ in range(samples):
        x = R.sample(rng)
        if not (R.is_positive(R.square(x)) and R.square(x) == R.square(R.abs(x))):
            return Verdict.fail("squares", "x^2 != |x|^2 or not positive", x=x)
    return Verdict.ok("predicates are coherent", checked=samples)


def suite_classify(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    cone = max(samples, 10)
    for s in (Rat(1), Rat(2), Rat(3, 2)):
        R = GridModel(GRID_CARRIER[:4], s)
        cl = cls.classify_unitization(R, trunc.const_cap(1 / s), seed=seed, samples=samples,
                                      cone_samples=cone)
        out.append((f"positive[s={format_rat(s)}]", _check("classify", cl.is_l_ring,
                                                           "Stone cap gives an l-ring")))
    negatives = [
        ("grid_c2_cap1", GridModel(GRID_CARRIER[:4], 2), trunc.const_cap(1)),
        ("scalar_c1_cap2", ScalarModel(1), trunc.meet_cap(Rat(2))),
        ("scalar_c2_cap1", ScalarModel(2), trunc.meet_cap(Rat(1))),
        ("zeromul", ZeroMulModel(), trunc.meet_cap(ZeroMulModel().from_coords((1, 1)))),
    ]
    for name, R, tau in negatives:
        cl = cls.classify_unitization(R, tau, seed=seed, samples=samples, cone_samples=cone)
        ok = not cl.is_l_ring and cls.replay_classification(R, tau, 1, cl.witness)
        out.append((f"negative[{name}]", _check("classify", ok, "not an l-ring, witness replays")))
    grid2 = GridModel(GRID_CARRIER[:4], 2)
    acc = sweep_accepts(grid2, Rat(1), SWEEP, seed, min(samples, 200), min(cone, 200))
    out.append(("uniqueness_sweep", _check("sweep", acc == [Rat(1, 2)], "only 1/2 accepted")))
    grid1 = GridModel(GRID_CARRIER[:4], 1)
    for c in (Rat(2), Rat(3)):
        caps = tuple(Rat(k, 8) for k in range(1, 8 * int(c) + 1))
        acc = sweep_accepts(grid1, c, caps, seed, min(samples, 200), min(cone, 200))
        out.append((f"scaled_sweep[c={c}]", _check("sweep", acc == [c], f"only {c} accepted")))
    for name, R in registered_rings():
        out.append((f"coherence[{name}]", coherence_checks(R, derive_seed(seed, name),
                                                           min(samples, 300))))
    return out


# -- orthomorphisms ---------------------------------------------------------------------------------


def suite_orthorep(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    for name, R in registered_rings():
        sd = derive_seed(seed, name)
        out.append((f"J_homomorphism[{name}]", orth.j_homomorphism_check(R, sd, samples)))
        out.append((f"decomposition[{name}]", orth.decomposition_check(R, sd, samples)))
        out.append((f"stone[{name}]", orth.stone_check(R, sd, samples)))
        tau = orth.stone_function(R)
        out.append((f"stone_axioms[{name}]", trunc.check_axioms(R, tau, seed=sd, samples=samples)))
        out.append((f"J_truncation[{name}]", orth.j_preserves_truncation(R, tau, sd, samples)))
        out.append((f"extension[{name}]", orth.extension_check(UnitizationContext(R, tau), sd,
                                                               samples)))
    grid2 = GridModel(GRID_CARRIER[:4], 2)
    v = orth.j_preserves_truncation(grid2, trunc.const_cap(1), seed, samples)
    out.append(("J_truncation_wrong_cap", _check("truncation_hom", v.violated,
                                                  "cap 1 on scale 2 is not preserved")))
    for name, R in (("grid", grid2), ("finsupp", FinSuppModel(1))):
        stone = orth.stone_function(R)
        bad = []
        for q in SWEEP:
            tau = trunc.const_cap(q)
            is_l = cls.classify_unitization(R, tau, seed=seed, samples=min(samples, 200),
                                            cone_samples=min(samples, 200)).is_l_ring
            if is_l != (tau == stone):
                bad.append(q)
        out.append((f"final_theorem[{name}]", _check("final", not bad,
                                                     "l-ring iff Stone function", len(SWEEP))))
    return out


# -- Archimedean ---------------------------------------------------------------------------------------


def suite_archimedean(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    lex = LexModel()
    ctx = UnitizationContext(lex, trunc.meet_cap(lex.vec(0, 1)))
    for label, target in (("lex", lex), ("tau_lex", ctx)):
        v = cls.archimedean_witness(target, seed=seed)
        ok = v.violated and cls.replay_archimedean(target, v)
        out.append((f"witness[{label}]", _check("archimedean", ok, "certified witness")))
    for name, R in registered_rings():
        out.append((f"archimedean[{name}]", cls.archimedean_witness(R, seed=seed)))
    return out


def suite_examples(seed: int, samples: int, fault: str | None) -> list[Check]:
    out = []
    for name, fn in EXAMPLES.items():
        rep = fn(seed, min(samples, 300), cls.DEFAULT_BOUND)
        failed = sorted(k for k, ok in rep.expectations.items() if not ok)
        out.append((f"example[{name}]", _check(name, not failed,
                                               "reproduced" if not failed else
                                               "failed: " + ", ".join(failed))))
    return out


SUITES: dict[str, Callable[[int, int, str | None], list[Check]]] = {
    "archimedean": suite_archimedean,
    "classify": suite_classify,
    "core": suite_core,
    "examples": suite_examples,
    "models": suite_models,
    "orthorep": suite_orthorep,
    "truncation": suite_truncation,
    "unitization": suite_unitization,
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(v.verified for _, v in self.checks)


def run_suite(name: str, seed: int, samples: int, fault: str | None = None) -> SuiteResult:
    checks = SUITES[name](derive_seed(seed, name), samples, fault)
    return SuiteResult(name, tuple(checks))


def run_all(seed: int, samples: int, threads: int = 1, fault: str | None = None,
            names: list[str] | None = None) -> list[SuiteResult]:
    names = sorted(names or SUITES)
    if threads <= 1:
        return [run_suite(n, seed, samples, fault) for n in names]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {n: pool.submit(run_suite, n, seed, samples, fault) for n in names}
        return [futures[n].result() for n in names]
