"""Exact scalar fields: the rationals and cyclotomic extensions Q(zeta_N).

Rationals are plain :class:`fractions.Fraction` values.  Cyclotomic numbers
are coefficient vectors over Q reduced modulo the N-th cyclotomic
polynomial.  Both serialize to strings: ``"p/q"`` and ``"[c0,c1,...]@zetaN"``.
"""

import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "QQ",
    "Rationals",
    "CyclotomicField",
    "Cyclotomic",
    "FieldDivisionByZero",
    "cyclotomic",
    "cyclotomic_polynomial",
    "parse_scalar",
    "format_scalar",
]


class FieldDivisionByZero(ZeroDivisionError):
    """Raised when dividing by the zero element of a cyclotomic field."""


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class Rationals:
    """The field Q, with Fraction as the element type."""

    name = "QQ"
    degree = 1

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Cyclotomic) and x.is_rational():
            return x.c[0]
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def parse(self, s):
        m = _RATIONAL_RE.match(s)
        if m is None:
            raise ValueError(f"not an exact rational: {s!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(num, den)

    def format(self, x):
        x = self.coerce(x)
        return f"{x.numerator}/{x.denominator}"

    def random(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))

    def spec(self):
        return "QQ"


QQ = Rationals()


# --- polynomials over Q, coefficient lists low -> high -------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return _trim([a - b for a, b in zip(p, q)])


def _poly_divmod(p, q):
    p = _trim([Fraction(c) for c in p])
    q = _trim([Fraction(c) for c in q])
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(p) >= len(q):
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        p = _trim(p)
    return _trim(quot), p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients (low -> high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not r
    return tuple(int(c) for c in p)


class CyclotomicField:
    """Q(zeta_N) realized as Q[x] / Phi_N(x)."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("cyclotomic field needs N >= 1")
        self.n = n
        self.modulus = tuple(Fraction(c) for c in cyclotomic_polynomial(n))
        self.degree = len(self.modulus) - 1
        self.name = f"QQ(zeta{n})"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclotomic", self.n))

    def reduce(self, poly):
        _, r = _poly_divmod(poly, self.modulus)
        return tuple(r) + (Fraction(0),) * (self.degree - len(r))

    def element(self, coeffs):
        return Cyclotomic(self, self.reduce([Fraction(c) for c in coeffs]))

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, Cyclotomic):
            if x.field != self:
                raise TypeError(f"element of {x.field} is not in {self}")
            return x
        if isinstance(x, (int, Fraction)):
            return self.element([x])
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return self.element([0])

    @property
    def one(self):
        return self.element([1])

    @property
    def zeta(self):
        return self.element([0, 1])

    def parse(self, s):
        s = s.strip()
        if "@" not in s:
            return self.element([QQ.parse(s)])
        body, tag = s.rsplit("@", 1)
        if tag.strip() != f"zeta{self.n}":
            raise ValueError(f"{s!r} does not belong to {self}")
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"malformed cyclotomic literal {s!r}")
        parts = [t for t in body[1:-1].split(",") if t.strip()]
        if len(parts) != self.degree:
            raise ValueError(f"{s!r}: expected {self.degree} coefficients")
        return self.element([QQ.parse(t) for t in parts])

    def format(self, x):
        x = self.coerce(x)
        return "[" + ",".join(QQ.format(c) for c in x.c) + f"]@zeta{self.n}"

    def random(self, rng, bound=3):
        return self.element([QQ.random(rng, bound) for _ in range(self.degree)])

    def spec(self):
        return f"cyclotomic:{self.n}"


class Cyclotomic:
    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _lift(self, other):
        if isinstance(other, Cyclotomic):
            if other.field != self.field:
                raise TypeError("mixing elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return None

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.field.element(_poly_mul(list(self.c), list(o.c)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise FieldDivisionByZero(f"division by zero in {self.field}")
        # extended Euclid: s*a + t*Phi = g, with g a nonzero constant
        r0, r1 = list(self.field.modulus), _trim(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = r1[0]
        return self.field.element([x / g for x in s1])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = self.field.one
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field.n, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.field.format(self)


def cyclotomic(n):
    """Return the field Q(zeta_n); n = 1 gives the plain rationals."""
    if n == 1:
        return QQ
    return CyclotomicField(n)


def field_from_spec(spec):
    if spec in (None, "QQ", "Q"):
        return QQ
    if isinstance(spec, str) and spec.startswith("cyclotomic:"):
        return cyclotomic(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown field {spec!r}")


def parse_scalar(s, field=QQ):
    if not isinstance(s, str):
        raise TypeError(f"scalars must be serialized as strings, got {s!r}")
    return field.parse(s)


def format_scalar(x, field=QQ):
    return field.format(x)
