"""Concrete l-group and l-ring models.

* ``GridModel`` -- rational functions on a finite ordered carrier, pointwise
  order, product ``c x(t) y(t)``.  Desk-scale stand-in for C(R).
* ``FinSuppModel`` -- finitely supported rational sequences with the same
  scaled pointwise product; a non-unital Stone f-ring.
* ``ScalarModel`` -- Q with product ``c x y``.
* ``ZeroMulModel`` -- Q^2 with coordinatewise order and identically zero
  product; the canonical non-reduced f-ring.
* ``LexModel`` -- Q^2 ordered lexicographically; a totally ordered,
  non-Archimedean l-group without multiplication.
"""

from __future__ import annotations

import operator
import random
import re
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .lattice import GroupModel, ModelError, RingModel
from .rational import Rat, format_rat, parse_rat, rat, sample_rat

_ZERO = Rat(0)
_PAIR_RE = re.compile(r"^\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)$")


# -- element types -----------------------------------------------------------


@dataclass(frozen=True)
class GridFn:
    carrier: tuple[str, ...]
    values: tuple[Rat, ...]

    def at(self, label: str) -> Rat:
        return self.values[self.carrier.index(label)]


@dataclass(frozen=True)
class FinSuppFn:
    """Finitely supported sequence; ``support`` is sorted and has no zeros."""

    support: tuple[tuple[int, Rat], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, Any]) -> FinSuppFn:
        items = []
        for k, v in mapping.items():
            if not isinstance(k, int) or k < 0:
                raise ModelError(f"finsupp index must be a natural number, got {k!r}")
            q = rat(v)
            if q:
                items.append((k, q))
        return cls(tuple(sorted(items)))

    def as_dict(self) -> dict[int, Rat]:
        return dict(self.support)

    def at(self, n: int) -> Rat:
        return self.as_dict().get(n, _ZERO)


@dataclass(frozen=True)
class LexVec:
    a: Rat
    b: Rat


@dataclass(frozen=True)
class Pair:
    """Element of Q^2 with the coordinatewise order."""

    a: Rat
    b: Rat


def _format_pair(a: Rat, b: Rat) -> str:
    return f"({format_rat(a)}, {format_rat(b)})"


def _parse_pair(data: Any) -> tuple[Rat, Rat]:
    if not isinstance(data, str):
        raise ModelError(f"expected a string '(p/q, p/q)', got {data!r}")
    m = _PAIR_RE.match(data.strip())
    if not m:
        raise ModelError(f"malformed pair {data!r}")
    try:
        return parse_rat(m.group(1)), parse_rat(m.group(2))
    except ValueError as exc:
        raise ModelError(str(exc)) from None


def _parse_scalar(data: Any) -> Rat:
    if not isinstance(data, str):
        raise ModelError(f"rationals are serialized as strings, got {data!r}")
    try:
        return parse_rat(data)
    except ValueError as exc:
        raise ModelError(str(exc)) from None


def format_element(x: Any) -> Any:
    """Wire form of any model element; the element types are self-describing."""
    if isinstance(x, GridFn):
        return [f"{lbl}={format_rat(v)}" for lbl, v in zip(x.carrier, x.values)]
    if isinstance(x, FinSuppFn):
        return [f"{k}:{format_rat(v)}" for k, v in x.support]
    if isinstance(x, (LexVec, Pair)):
        return _format_pair(x.a, x.b)
    if isinstance(x, Rat):
        return format_rat(x)
    raise ModelError(f"{x!r} is not a model element")


# -- fixed-dimension pointwise models ----------------------------------------


class _CoordRing(RingModel):
    """Shared machinery for models whose elements are fixed-length vectors."""

    pointwise = True
    archimedean = True
    dim: int

    def _unpack(self, x: Any) -> tuple[Rat, ...]:
        raise NotImplementedError

    def _pack(self, values: Iterable[Rat]) -> Any:
        raise NotImplementedError

    def coords(self, x: Any) -> tuple[Rat, ...]:
        return self._unpack(x)

    def from_coords(self, values: Iterable[Any]) -> Any:
        return self._pack(rat(v) for v in values)

    def zero(self):
        # elements are immutable, so one zero per model suffices
        z = self.__dict__.get("_zero")
        if z is None:
            z = self.__dict__["_zero"] = self._pack((_ZERO,) * self.dim)
        return z

    def const(self, q: Any) -> Any:
        return self._pack((rat(q),) * self.dim)

    def add(self, x, y):
        return self._pack(tuple(map(operator.add, self._unpack(x), self._unpack(y))))

    def neg(self, x):
        return self._pack(tuple(map(operator.neg, self._unpack(x))))

    def scale(self, q, x):
        return self._pack(tuple(q * a for a in self._unpack(x)))

    def leq(self, x, y):
        return all(map(operator.le, self._unpack(x), self._unpack(y)))

    def join(self, x, y):
        return self._pack(tuple(map(max, self._unpack(x), self._unpack(y))))

    def meet(self, x, y):
        return self._pack(tuple(map(min, self._unpack(x), self._unpack(y))))

    def const_cap(self, x, q: Rat):
        return self._pack(min(a, q) for a in self._unpack(x))

    def multiply(self, x, y):
        self.check(x)
        self.check(y)
        c = self.mult_scale
        return self._pack(c * a * b for a, b in zip(self._unpack(x), self._unpack(y)))

    def ring_identity(self):
        return self.const(1 / self.mult_scale)

    def sample(self, rng: random.Random, magnitude: int = 32):
        return self._pack(sample_rat(rng, magnitude) for _ in range(self.dim))

    def indicator(self, i: int, q: Any = 1) -> Any:
        vals = [_ZERO] * self.dim
        vals[i] = rat(q)
        return self._pack(vals)

    def probes(self):
        out = [self.zero(), self.const(1)]
        out += [self.const(Rat(k, 4)) for k in range(1, 9) if k != 4]
        if self.dim > 1:
            out += [self.indicator(i) for i in range(self.dim)]
            out.append(self._pack(Rat(i + 1, self.dim) for i in range(self.dim)))
        out.append(self.const(-1))
        return out

    def __eq__(self, other):
        return type(self) is type(other) and self.describe() == other.describe()

    def __hash__(self):
        return hash(repr(sorted(self.describe().items())))


class GridModel(_CoordRing):
    kind = "grid"

    def __init__(self, carrier: Iterable[str], scale: Any = 1):
        carrier = tuple(carrier)
        if not carrier:
            raise ModelError("grid carrier must be non-empty")
        if any(not isinstance(lbl, str) for lbl in carrier):
            raise ModelError("grid carrier labels must be strings")
        if len(set(carrier)) != len(carrier):
            raise ModelError(f"duplicate carrier labels in {list(carrier)}")
        if any(("=" in lbl) for lbl in carrier):
            raise ModelError("carrier labels may not contain '='")
        self.carrier = carrier
        self.dim = len(carrier)
        self.mult_scale = _positive_scale(scale)

    def _unpack(self, x):
        return x.values

    def _pack(self, values):
        return GridFn(self.carrier, tuple(values))

    def contains(self, x):
        return (isinstance(x, GridFn) and x.carrier == self.carrier
                and len(x.values) == self.dim)

    def function(self, mapping: Mapping[str, Any]) -> GridFn:
        if set(mapping) != set(self.carrier):
            raise ModelError("grid function must assign a value to every carrier label")
        return self._pack(rat(mapping[lbl]) for lbl in self.carrier)

    def format(self, x):
        return format_element(x)

    def parse(self, data):
        if not isinstance(data, list):
            raise ModelError(f"grid element must be a list of 'label=p/q', got {data!r}")
        seen: dict[str, Rat] = {}
        for item in data:
            if not isinstance(item, str) or "=" not in item:
                raise ModelError(f"malformed grid entry {item!r}")
            lbl, _, val = item.rpartition("=")
            if lbl in seen:
                raise ModelError(f"duplicate grid label {lbl!r}")
            seen[lbl] = _parse_scalar(val)
        return self.function(seen)

    def describe(self):
        return {"kind": self.kind, "carrier": list(self.carrier),
                "scale": format_rat(self.mult_scale)}


class ScalarModel(_CoordRing):
    kind = "scalar"
    dim = 1

    def __init__(self, scale: Any = 1):
        self.mult_scale = _positive_scale(scale)

    def _unpack(self, x):
        return (x,)

    def _pack(self, values):
        (v,) = tuple(values)
        return v

    def contains(self, x):
        return isinstance(x, Rat)

    def format(self, x):
        return format_rat(x)

    def parse(self, data):
        return _parse_scalar(data)

    def describe(self):
        return {"kind": self.kind, "scale": format_rat(self.mult_scale)}


class ZeroMulModel(_CoordRing):
    kind = "zeromul"
    dim = 2

    def _unpack(self, x):
        return (x.a, x.b)

    def _pack(self, values):
        a, b = tuple(values)
        return Pair(a, b)

    def contains(self, x):
        return isinstance(x, Pair)

    def multiply(self, x, y):
        self.check(x)
        self.check(y)
        return self.zero()

    def ring_identity(self):
        return None

    def format(self, x):
        return _format_pair(x.a, x.b)

    def parse(self, data):
        return Pair(*_parse_pair(data))


# -- finitely supported sequences ---------------------------------------------


class FinSuppModel(RingModel):
    kind = "finsupp"
    pointwise = True
    archimedean = True

    def __init__(self, scale: Any = 1, width: int = 6):
        self.mult_scale = _positive_scale(scale)
        # indices used by the sampler; elements themselves may use any index
        self.width = width

    def _combine(self, f, x: FinSuppFn, y: FinSuppFn) -> FinSuppFn:
        dx, dy = x.as_dict(), y.as_dict()
        items = []
        for k in sorted(dx.keys() | dy.keys()):
            v = f(dx.get(k, _ZERO), dy.get(k, _ZERO))
            if v:
                items.append((k, v))
        return FinSuppFn(tuple(items))

    def _map(self, f, x: FinSuppFn) -> FinSuppFn:
        return FinSuppFn(tuple((k, f(v)) for k, v in x.support if f(v)))

    def zero(self):
        return FinSuppFn()

    def add(self, x, y):
        return self._combine(lambda a, b: a + b, x, y)

    def neg(self, x):
        return FinSuppFn(tuple((k, -v) for k, v in x.support))

    def scale(self, q, x):
        if not q:
            return FinSuppFn()
        return FinSuppFn(tuple((k, q * v) for k, v in x.support))

    def leq(self, x, y):
        dx, dy = x.as_dict(), y.as_dict()
        return all(dx.get(k, _ZERO) <= dy.get(k, _ZERO) for k in dx.keys() | dy.keys())

    def join(self, x, y):
        return self._combine(max, x, y)

    def meet(self, x, y):
        return self._combine(min, x, y)

    def const_cap(self, x, q: Rat):
        # off the support min(0, q) = 0 because caps are positive
        return self._map(lambda v: min(v, q), x)

    def multiply(self, x, y):
        self.check(x)
        self.check(y)
        c = self.mult_scale
        return self._combine(lambda a, b: c * a * b, x, y)

    def ring_identity(self):
        return None

    def contains(self, x):
        return isinstance(x, FinSuppFn)

    def element(self, mapping: Mapping[int, Any]) -> FinSuppFn:
        return FinSuppFn.of(mapping)

    def indicator(self, n: int, q: Any = 1) -> FinSuppFn:
        return FinSuppFn.of({n: q})

    def block(self, q: Any, length: int | None = None) -> FinSuppFn:
        """``q`` on indices ``0 .. length-1``."""
        return FinSuppFn.of({k: q for k in range(self.width if length is None else length)})

    def coords(self, x: FinSuppFn) -> dict[int, Rat]:
        return x.as_dict()

    def sample(self, rng: random.Random, magnitude: int = 32):
        return FinSuppFn.of({k: sample_rat(rng, magnitude) for k in range(self.width)
                             if rng.random() < 0.6})

    def probes(self):
        out = [self.zero(), self.block(1)]
        out += [self.block(Rat(k, 4)) for k in range(1, 9) if k != 4]
        out += [self.indicator(n) for n in range(min(self.width, 4))]
        out.append(FinSuppFn.of({k: Rat(k + 1, self.width) for k in range(self.width)}))
        out.append(self.block(-1))
        return out

    def format(self, x):
        return format_element(x)

    def parse(self, data):
        if not isinstance(data, list):
            raise ModelError(f"finsupp element must be a list of 'index:p/q', got {data!r}")
        out: dict[int, Rat] = {}
        for item in data:
            if not isinstance(item, str) or ":" not in item:
                raise ModelError(f"malformed finsupp entry {item!r}")
            idx, _, val = item.partition(":")
            if not idx.strip().isdigit():
                raise ModelError(f"malformed finsupp index {idx!r}")
            k = int(idx)
            if k in out:
                raise ModelError(f"duplicate finsupp index {k}")
            out[k] = _parse_scalar(val)
        return FinSuppFn.of(out)

    def describe(self):
        return {"kind": self.kind, "scale": format_rat(self.mult_scale)}

    def __eq__(self, other):
        return type(self) is type(other) and self.describe() == other.describe()

    def __hash__(self):
        return hash(repr(sorted(self.describe().items())))


# -- the lexicographic plane -------------------------------------------------


class LexModel(GroupModel):
    kind = "lex"
    archimedean = False
    pointwise = False

    def zero(self):
        return LexVec(_ZERO, _ZERO)

    def vec(self, a: Any, b: Any) -> LexVec:
        return LexVec(rat(a), rat(b))

    def add(self, x, y):
        return LexVec(x.a + y.a, x.b + y.b)

    def neg(self, x):
        return LexVec(-x.a, -x.b)

    def scale(self, q, x):
        return LexVec(q * x.a, q * x.b)

    def leq(self, x, y):
        return (x.a, x.b) <= (y.a, y.b)

    def join(self, x, y):
        return y if self.leq(x, y) else x

    def meet(self, x, y):
        return x if self.leq(x, y) else y

    def contains(self, x):
        return isinstance(x, LexVec)

    def sample(self, rng: random.Random, magnitude: int = 32):
        # a zero first coordinate is where the non-Archimedean behaviour lives
        a = _ZERO if rng.random() < 0.35 else sample_rat(rng, magnitude)
        return LexVec(a, sample_rat(rng, magnitude))

    def probes(self):
        return [self.zero(), LexVec(_ZERO, Rat(1)), LexVec(_ZERO, Rat(2)),
                LexVec(Rat(1), _ZERO), LexVec(Rat(1), Rat(-5)),
                LexVec(Rat(2), Rat(-5)), LexVec(_ZERO, Rat(-3)),
                LexVec(Rat(-1), Rat(5))]

    def format(self, x):
        return _format_pair(x.a, x.b)

    def parse(self, data):
        return LexVec(*_parse_pair(data))

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(self.kind)


# -- construction ------------------------------------------------------------


def _positive_scale(scale: Any) -> Rat:
    try:
        c = _parse_scalar(scale) if isinstance(scale, str) else rat(scale)
    except (TypeError, ValueError) as exc:
        raise ModelError(str(exc)) from None
    if c <= 0:
        raise ModelError(f"multiplication scale must be positive, got {format_rat(c)}")
    return c


_MODEL_FIELDS = {
    "grid": {"kind", "carrier", "scale"},
    "finsupp": {"kind", "scale", "width"},
    "scalar": {"kind", "scale"},
    "zeromul": {"kind"},
    "lex": {"kind"},
}


def make_model(spec: Mapping[str, Any]) -> GroupModel:
    """Build a model from its JSON-compatible description.

    >>> make_model({"kind": "grid", "carrier": ["-1", "0", "1"], "scale": "2"}).dim
    3
    """
    if not isinstance(spec, Mapping):
        raise ModelError("model spec must be an object")
    kind = spec.get("kind")
    if kind not in _MODEL_FIELDS:
        raise ModelError(f"unknown model kind {kind!r}")
    unknown = set(spec) - _MODEL_FIELDS[kind]
    if unknown:
        raise ModelError(f"unknown fields for {kind} model: {sorted(unknown)}")
    scale = spec.get("scale", "1")
    if kind == "grid":
        if "carrier" not in spec or not isinstance(spec["carrier"], list):
            raise ModelError("grid model needs a carrier list")
        return GridModel(spec["carrier"], scale)
    if kind == "finsupp":
        width = spec.get("width", 6)
        if not isinstance(width, int) or isinstance(width, bool) or width < 1:
            raise ModelError("finsupp width must be a positive integer")
        return FinSuppModel(scale, width)
    if kind == "scalar":
        return ScalarModel(scale)
    if kind == "zeromul":
        return ZeroMulModel()
    return LexModel()
