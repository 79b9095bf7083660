"""Second-order forward-mode jets in two parameters.

A ``Jet2`` carries a value together with its first and second partial
derivatives with respect to two scalar parameters (u, v).  Propagating
jets through arithmetic yields derivatives exact up to floating-point
rounding, with no truncation error: the second-order product rule

    (ab)_uu = a_uu b + 2 a_u b_u + a b_uu

and the chain rule

    f(a)_uv = f''(a) a_u a_v + f'(a) a_uv

are applied literally.  The mixed partial is stored once (``duv``), so
symmetry of second derivatives is baked into the representation.  All
arithmetic is 64-bit binary floating point.

Products are written with symmetric grouping so that ``a * b`` and
``b * a`` produce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .isotropy import Vec3


@dataclass(frozen=True, slots=True)
class Jet2:
    val: float
    du: float = 0.0
    dv: float = 0.0
    duu: float = 0.0
    duv: float = 0.0
    dvv: float = 0.0

    def __add__(self, other):
        o = _coerce(other)
        return Jet2(
            self.val + o.val,
            self.du + o.du,
            self.dv + o.dv,
            self.duu + o.duu,
            self.duv + o.duv,
            self.dvv + o.dvv,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return Jet2(
            self.val - o.val,
            self.du - o.du,
            self.dv - o.dv,
            self.duu - o.duu,
            self.duv - o.duv,
            self.dvv - o.dvv,
        )

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Jet2(-self.val, -self.du, -self.dv, -self.duu, -self.duv, -self.dvv)

    def __mul__(self, other):
        a, b = self, _coerce(other)
        return Jet2(
            a.val * b.val,
            a.du * b.val + a.val * b.du,
            a.dv * b.val + a.val * b.dv,
            (a.duu * b.val + a.val * b.duu) + 2.0 * (a.du * b.du),
            (a.duv * b.val + a.val * b.duv) + (a.du * b.dv + a.dv * b.du),
            (a.dvv * b.val + a.val * b.dvv) + 2.0 * (a.dv * b.dv),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * recip(_coerce(other))

    def __rtruediv__(self, other):
        return _coerce(other) * recip(self)

    def __pow__(self, other):
        return powj(self, _coerce(other))

    def is_constant(self) -> bool:
        return (
            self.du == 0.0
            and self.dv == 0.0
            and self.duu == 0.0
            and self.duv == 0.0
            and self.dvv == 0.0
        )


def _coerce(x) -> Jet2:
    if isinstance(x, Jet2):
        return x
    if isinstance(x, (int, float)):
        return Jet2(float(x))
    raise TypeError(f"cannot mix Jet2 with {type(x).__name__}")


def const(val: float) -> Jet2:
    return Jet2(float(val))


def seed_u(val: float) -> Jet2:
    return Jet2(float(val), du=1.0)


def seed_v(val: float) -> Jet2:
    return Jet2(float(val), dv=1.0)


def _chain(a: Jet2, f0: float, f1: float, f2: float) -> Jet2:
    """Compose the scalar function with derivatives (f0, f1, f2) after a."""
    return Jet2(
        f0,
        f1 * a.du,
        f1 * a.dv,
        f2 * (a.du * a.du) + f1 * a.duu,
        f2 * (a.du * a.dv) + f1 * a.duv,
        f2 * (a.dv * a.dv) + f1 * a.dvv,
    )


def recip(a: Jet2) -> Jet2:
    if a.val == 0.0:
        raise DomainError("division by zero")
    inv = 1.0 / a.val
    return _chain(a, inv, -inv * inv, 2.0 * inv * inv * inv)


def sin(a: Jet2) -> Jet2:
    s, c = math.sin(a.val), math.cos(a.val)
    return _chain(a, s, c, -s)


def cos(a: Jet2) -> Jet2:
    s, c = math.sin(a.val), math.cos(a.val)
    return _chain(a, c, -s, -c)


def tan(a: Jet2) -> Jet2:
    t = math.tan(a.val)
    d = 1.0 + t * t
    return _chain(a, t, d, 2.0 * t * d)


def sinh(a: Jet2) -> Jet2:
    try:
        s, c = math.sinh(a.val), math.cosh(a.val)
    except OverflowError as exc:
        raise DomainError("overflow in sinh") from exc
    return _chain(a, s, c, s)


def cosh(a: Jet2) -> Jet2:
    try:
        s, c = math.sinh(a.val), math.cosh(a.val)
    except OverflowError as exc:
        raise DomainError("overflow in cosh") from exc
    return _chain(a, c, s, c)


def tanh(a: Jet2) -> Jet2:
    t = math.tanh(a.val)
    d = 1.0 - t * t
    return _chain(a, t, d, -2.0 * t * d)


def exp(a: Jet2) -> Jet2:
    try:
        e = math.exp(a.val)
    except OverflowError as exc:
        raise DomainError("overflow in exp") from exc
    return _chain(a, e, e, e)


def log(a: Jet2) -> Jet2:
    if a.val <= 0.0:
        raise DomainError(f"log of non-positive value {a.val!r}")
    inv = 1.0 / a.val
    return _chain(a, math.log(a.val), inv, -inv * inv)


def sqrt(a: Jet2) -> Jet2:
    if a.val <= 0.0:
        raise DomainError(f"sqrt of non-positive value {a.val!r}")
    r = math.sqrt(a.val)
    d1 = 0.5 / r
    return _chain(a, r, d1, -0.5 * d1 / a.val)


def absj(a: Jet2) -> Jet2:
    if a.val == 0.0:
        raise DomainError("abs is not differentiable at 0")
    s = 1.0 if a.val > 0.0 else -1.0
    return _chain(a, abs(a.val), s, 0.0)


def pow_int(a: Jet2, n: int) -> Jet2:
    """Integer power by repeated squaring; negative bases stay legal."""
    if n < 0:
        return recip(pow_int(a, -n))
    result = Jet2(1.0)
    base = a
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def powj(a: Jet2, b: Jet2) -> Jet2:
    if b.is_constant() and float(b.val).is_integer() and abs(b.val) <= 1024:
        return pow_int(a, int(b.val))
    if a.val <= 0.0:
        raise DomainError(
            f"power with non-integer exponent needs a positive base, got {a.val!r}"
        )
    return exp(b * log(a))


UNARY = {
    "neg": Jet2.__neg__,
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "abs": absj,
}


@dataclass(frozen=True, slots=True)
class Jet2Vec3:
    """Jets of the three coordinates of an immersion x(u, v)."""

    x: Jet2
    y: Jet2
    z: Jet2

    def position(self) -> Vec3:
        return Vec3(self.x.val, self.y.val, self.z.val)

    def d1(self) -> Vec3:
        return Vec3(self.x.du, self.y.du, self.z.du)

    def d2(self) -> Vec3:
        return Vec3(self.x.dv, self.y.dv, self.z.dv)

    def d11(self) -> Vec3:
        return Vec3(self.x.duu, self.y.duu, self.z.duu)

    def d12(self) -> Vec3:
        return Vec3(self.x.duv, self.y.duv, self.z.duv)

    def d22(self) -> Vec3:
        return Vec3(self.x.dvv, self.y.dvv, self.z.dvv)

    def swap_params(self) -> "Jet2Vec3":
        """Relabel the two parameters (u <-> v) in every component."""
        return Jet2Vec3(
            _swap_jet(self.x), _swap_jet(self.y), _swap_jet(self.z)
        )


def _swap_jet(a: Jet2) -> Jet2:
    return Jet2(a.val, a.dv, a.du, a.dvv, a.duv, a.duu)
