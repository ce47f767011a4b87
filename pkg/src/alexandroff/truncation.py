"""Truncations on l-groups: description, evaluation and axiom checking.

A truncation is a map ``tau`` on the positive cone with

  (T1) x ^ tau(y) <= tau(x) <= x         for all x, y >= 0
  (T2) tau(x) = 0 implies x = 0
  (T3) n x = tau(n x) for every n >= 1 implies x = 0

(T3) quantifies over all n and is only semi-decidable in general.  Cap
truncations on the registered models are decided exactly; custom tables are
checked up to a recorded bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from .lattice import GroupModel, ModelError
from .models import FinSuppModel, LexModel, _CoordRing
from .rational import Rat, format_rat, rat
from .verdict import Verdict

MEET_CAP = "meet_cap"
CONST_CAP = "const_cap"
CUSTOM = "custom"

CUSTOM_RULES: dict[str, Callable[[GroupModel, Any], Any]] = {
    "zero": lambda model, x: model.zero(),
    "identity": lambda model, x: x,
}


class NotPositiveError(ValueError):
    """A truncation was applied outside the positive cone."""


@dataclass(frozen=True)
class TruncationSpec:
    """How ``tau`` acts.

    * ``meet_cap``: ``tau(x) = value ^ x`` for a positive element ``value``;
    * ``const_cap``: pointwise ``min(x(t), value)`` for a rational ``value > 0``
      on the function models;
    * ``custom``: an explicit ``table`` of ``(x, tau(x))`` pairs, falling back
      to a named ``rule`` ("zero" or "identity") or a Python callable ``fn``.
    """

    kind: str
    value: Any = None
    table: tuple[tuple[Any, Any], ...] = ()
    fn: Callable[[Any], Any] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in (MEET_CAP, CONST_CAP, CUSTOM):
            raise ModelError(f"unknown truncation kind {self.kind!r}")
        if self.kind == CONST_CAP:
            q = rat(self.value)
            if q <= 0:
                raise ModelError(f"const_cap needs a positive rational, got {format_rat(q)}")
            object.__setattr__(self, "value", q)
        if self.kind == CUSTOM and self.value is not None and self.value not in CUSTOM_RULES:
            raise ModelError(f"unknown custom rule {self.value!r}")

    @property
    def is_cap(self) -> bool:
        return self.kind in (MEET_CAP, CONST_CAP)


def meet_cap(e: Any) -> TruncationSpec:
    return TruncationSpec(MEET_CAP, e)


def const_cap(q: Any) -> TruncationSpec:
    return TruncationSpec(CONST_CAP, rat(q))


def custom(rule: str | None = None, table: Iterable[tuple[Any, Any]] = (),
           fn: Callable[[Any], Any] | None = None) -> TruncationSpec:
    return TruncationSpec(CUSTOM, rule, tuple(table), fn)


def validate(model: GroupModel, tau: TruncationSpec) -> None:
    """Reject descriptions that do not even define a map on ``model``."""
    if tau.kind == MEET_CAP:
        model.check(tau.value)
    elif tau.kind == CONST_CAP:
        if not hasattr(model, "const_cap"):
            raise ModelError(f"const_cap is not defined on the {model.kind} model")
    else:
        for x, tx in tau.table:
            model.check(x)
            model.check(tx)
        if not tau.table and tau.fn is None and tau.value is None:
            raise ModelError("custom truncation needs a table, a rule or a function")


def apply(model: GroupModel, tau: TruncationSpec, x: Any) -> Any:
    model.check(x)
    if not model.is_positive(x):
        raise NotPositiveError(f"truncation applied to non-positive element {model.format(x)}")
    return apply_positive(model, tau, x)


def apply_positive(model: GroupModel, tau: TruncationSpec, x: Any) -> Any:
    """``apply`` without the input checks, for ``x >= 0`` built by the caller."""
    if model.is_zero(x):
        return x
    if tau.kind == MEET_CAP:
        return model.meet(tau.value, x)
    if tau.kind == CONST_CAP:
        try:
            cap = model.const_cap
        except AttributeError:
            raise ModelError(f"const_cap is not defined on the {model.kind} model") from None
        return cap(x, tau.value)
    for key, val in tau.table:
        if key == x:
            return val
    if tau.fn is not None:
        return tau.fn(x)
    if tau.value is not None:
        return CUSTOM_RULES[tau.value](model, x)
    raise ModelError(f"custom truncation is undefined at {model.format(x)}")


def in_range(model: GroupModel, tau: TruncationSpec, x: Any) -> bool:
    """Membership in tau(G+), decided by the fixed-point characterization."""
    return apply(model, tau, x) == x


def cap_vector(model: GroupModel, tau: TruncationSpec) -> tuple[Rat, ...] | None:
    """Coordinates of the cap for cap truncations on finite pointwise models."""
    if not isinstance(model, _CoordRing):
        return None
    if tau.kind == MEET_CAP:
        return model.coords(tau.value)
    if tau.kind == CONST_CAP:
        return (tau.value,) * model.dim
    return None


def cap_element(model: GroupModel, tau: TruncationSpec) -> Any | None:
    """The unit ``e`` with ``tau = e ^ .`` when one exists in ``model``."""
    if tau.kind == MEET_CAP:
        return tau.value
    if tau.kind == CONST_CAP and isinstance(model, _CoordRing):
        return model.const(tau.value)
    return None


# -- sampling ------------------------------------------------------------------


def positive_candidates(model: GroupModel, rng: random.Random, samples: int,
                        extra: Iterable[Any] = ()) -> Iterator[Any]:
    """Probe elements, any extras, then ``samples`` random positive elements."""
    for x in list(extra) + model.positive_probes():
        yield x
    for _ in range(samples):
        yield model.sample_positive(rng)


def _table_keys(tau: TruncationSpec) -> list[Any]:
    return [x for x, _ in tau.table]


# -- clause evaluation ---------------------------------------------------------


def _tau1_holds(model, tau, x, y) -> bool:
    tx = apply(model, tau, x)
    return model.leq(model.meet(x, apply(model, tau, y)), tx) and model.leq(tx, x)


def _tau2_holds(model, tau, x) -> bool:
    return not (model.is_zero(apply(model, tau, x)) and not model.is_zero(x))


def _survives(model, tau, x, bound: int) -> bool:
    """``n x = tau(n x)`` for every ``n <= bound``."""
    for n in range(1, bound + 1):
        nx = model.multiple(n, x)
        if apply(model, tau, nx) != nx:
            return False
    return True


def replay(model: GroupModel, tau: TruncationSpec, verdict: Verdict) -> bool:
    """Re-evaluate the clause a failing verdict names; True if it fails again."""
    w = dict(verdict.witness)
    clause = verdict.clause
    if clause == "codomain":
        return not model.is_positive(apply(model, tau, w["x"]))
    if clause == "tau1":
        return not _tau1_holds(model, tau, w["x"], w["y"])
    if clause == "tau2":
        return not _tau2_holds(model, tau, w["x"])
    if clause == "tau3":
        return not model.is_zero(w["x"]) and _survives(model, tau, w["x"], verdict.bound or 1)
    raise ValueError(f"verdict has no replayable clause: {clause!r}")


# -- the checker -------------------------------------------------------------------


def _structural(model: GroupModel, tau: TruncationSpec, bound: int) -> Verdict | None:
    """Exact decision for cap truncations on the registered models."""
    if tau.kind == MEET_CAP and not model.is_positive(tau.value):
        e = tau.value
        return Verdict.fail("codomain", "cap is not positive, so tau leaves the positive cone",
                            structural=True, x=model.abs(e))
    vec = cap_vector(model, tau)
    if vec is not None:
        for i, v in enumerate(vec):
            if v == 0:
                return Verdict.fail("tau2", "cap vanishes at a carrier point",
                                    structural=True, x=model.indicator(i))
        return Verdict.ok("cap strictly positive on a finite carrier", structural=True)
    if isinstance(model, FinSuppModel):
        if tau.kind == CONST_CAP:
            return Verdict.ok("constant cap on finitely supported sequences", structural=True)
        if tau.kind == MEET_CAP:
            support = {k for k, _ in tau.value.support}
            n = next(k for k in range(len(support) + 1) if k not in support)
            return Verdict.fail("tau2", "a finitely supported cap vanishes off its support",
                                structural=True, x=model.indicator(n))
    if isinstance(model, LexModel) and tau.kind == MEET_CAP:
        e = tau.value
        if model.is_zero(e):
            return Verdict.fail("tau2", "zero cap", structural=True, x=model.vec(0, 1))
        if e.a == 0:
            return Verdict.ok("cap is infinitely small: n x <= (0, b) forces x = 0",
                              structural=True)
        return Verdict.fail("tau3", "every (0, s) lies below a cap with positive first "
                            "coordinate for all n", structural=True, bound=bound,
                            x=model.vec(0, 1))
    return None


def check_axioms(model: GroupModel, tau: TruncationSpec, seed: int = 0,
                 samples: int = 1000, bound: int = 64) -> Verdict:
    """Check (T1)-(T3) for ``tau`` on ``model``.

    Sampled (T1)/(T2) checks always run, also as a cross-check of the
    structural path.  Without a structural argument (T3) is tested as
    "some n <= bound moves n x", and a survivor yields an inconclusive verdict.
    """
    validate(model, tau)
    structural = _structural(model, tau, bound)
    if structural is not None and not structural.verified:
        return structural

    rng = random.Random(seed)
    pool = list(positive_candidates(model, rng, samples, _table_keys(tau)))
    checked = 0
    for i, x in enumerate(pool):
        tx = apply(model, tau, x)
        checked += 1
        if not model.is_positive(tx):
            return Verdict.fail("codomain", "tau(x) is not positive", checked=checked, x=x)
        if not _tau2_holds(model, tau, x):
            return Verdict.fail("tau2", "tau(x) = 0 for a nonzero x", checked=checked, x=x)
        y = pool[(i * 7 + 3) % len(pool)]
        for yy in (y, pool[-1 - i]):
            if not _tau1_holds(model, tau, x, yy):
                return Verdict.fail("tau1", "x ^ tau(y) <= tau(x) <= x fails",
                                    checked=checked, x=x, y=yy)

    if structural is not None:
        return Verdict.ok(structural.message, structural=True, checked=checked, bound=bound)

    for x in pool:
        if model.is_zero(x):
            continue
        if _survives(model, tau, x, bound):
            return Verdict.unknown("tau3", f"n x = tau(n x) for all n <= {bound}",
                                   bound=bound, checked=checked, x=x)
    return Verdict.ok(f"sampled; (T3) escapes found within n <= {bound}",
                      checked=checked, bound=bound)


def truncations_equal(model: GroupModel, tau1: TruncationSpec, tau2: TruncationSpec,
                      seed: int = 0, samples: int = 1000) -> Verdict:
    """Decide ``tau1 == tau2``.

    Two truncations coincide iff their ranges coincide; for caps the ranges
    are order intervals, so the caps themselves are compared.  The witness of
    a difference is the midpoint of the two caps.
    """
    v1, v2 = cap_vector(model, tau1), cap_vector(model, tau2)
    if v1 is not None and v2 is not None:
        if v1 == v2:
            return Verdict.ok("caps coincide", structural=True)
        mid = model.from_coords((a + b) / 2 for a, b in zip(v1, v2))
        return Verdict.fail("equal", "caps differ", structural=True, x=mid)
    if isinstance(model, FinSuppModel) and tau1.kind == tau2.kind == CONST_CAP:
        if tau1.value == tau2.value:
            return Verdict.ok("caps coincide", structural=True)
        mid = model.indicator(0, (tau1.value + tau2.value) / 2)
        return Verdict.fail("equal", "caps differ", structural=True, x=mid)
    if isinstance(model, LexModel) and tau1.kind == tau2.kind == MEET_CAP:
        e1, e2 = tau1.value, tau2.value
        if e1 == e2:
            return Verdict.ok("caps coincide", structural=True)
        mid = model.scale(Rat(1, 2), model.add(e1, e2))
        return Verdict.fail("equal", "caps differ", structural=True, x=mid)

    rng = random.Random(seed)
    checked = 0
    extra = _table_keys(tau1) + _table_keys(tau2)
    for x in positive_candidates(model, rng, samples, extra):
        checked += 1
        if apply(model, tau1, x) != apply(model, tau2, x) or \
                in_range(model, tau1, x) != in_range(model, tau2, x):
            return Verdict.fail("equal", "truncations disagree", checked=checked, x=x)
    return Verdict.ok("agree on all samples", checked=checked)


def replay_equal(model: GroupModel, tau1: TruncationSpec, tau2: TruncationSpec,
                 verdict: Verdict) -> bool:
    x = verdict.get("x")
    return apply(model, tau1, x) != apply(model, tau2, x)


# -- serialization --------------------------------------------------------------


def encode_truncation(model: GroupModel, tau: TruncationSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": tau.kind}
    if tau.kind == MEET_CAP:
        out["value"] = model.format(tau.value)
    elif tau.kind == CONST_CAP:
        out["value"] = format_rat(tau.value)
    else:
        if tau.value is not None:
            out["value"] = tau.value
        if tau.table:
            out["table"] = [[model.format(x), model.format(tx)] for x, tx in tau.table]
    return out


def decode_truncation(model: GroupModel, data: Any) -> TruncationSpec:
    if not isinstance(data, dict):
        raise ModelError("truncation must be an object")
    unknown = set(data) - {"kind", "value", "table"}
    if unknown:
        raise ModelError(f"unknown truncation fields: {sorted(unknown)}")
    kind = data.get("kind")
    if kind == MEET_CAP:
        if "table" in data:
            raise ModelError("meet_cap takes no table")
        tau = meet_cap(model.parse(data.get("value")))
    elif kind == CONST_CAP:
        if "table" in data:
            raise ModelError("const_cap takes no table")
        value = data.get("value")
        if not isinstance(value, str):
            raise ModelError("const_cap value must be a rational string")
        try:
            tau = const_cap(value)
        except ValueError as exc:
            raise ModelError(str(exc)) from None
    elif kind == CUSTOM:
        table = data.get("table", [])
        if not isinstance(table, list) or any(
                not isinstance(row, list) or len(row) != 2 for row in table):
            raise ModelError("custom table must be a list of [x, tau(x)] pairs")
        rule = data.get("value")
        if rule is not None and not isinstance(rule, str):
            raise ModelError("custom rule must be a string")
        tau = custom(rule, [(model.parse(a), model.parse(b)) for a, b in table])
    else:
        raise ModelError(f"unknown truncation kind {kind!r}")
    validate(model, tau)
    return tau
