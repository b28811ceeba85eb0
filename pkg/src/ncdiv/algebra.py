"""Basis-presented associative unital algebras and linear maps on them.

Two presentations share one element type:

* :class:`FiniteDimAlgebra` -- structure constants ``c[i][j][k]`` with
  ``e_i e_j = sum_k c[i][j][k] e_k``; basis keys are ``0..d-1``.
* :class:`GradedAlgebra` -- a countable basis keyed by ``(degree, part)``
  with a product rule on basis pairs.  Only a finite degree window
  ``|degree| <= W`` is ever materialized; leaving it raises WindowError.

Elements are finitely supported ``{key: scalar}`` dicts.  Linear maps
(:class:`LinOp`) are given by their images of basis keys.  ``OpMatrix`` is
``M_n(End A)`` with the product ``bullet``; ``AlgMatrix`` is ``M_n(A)``.
"""

import itertools
import re
from fractions import Fraction

from .fields import QQ
from .report import Report

__all__ = [
    "WindowError",
    "AlgebraAxiomError",
    "Element",
    "Algebra",
    "FiniteDimAlgebra",
    "GradedAlgebra",
    "LaurentGrassmann",
    "LinOp",
    "OpMatrix",
    "AlgMatrix",
    "identity_op",
    "zero_op",
    "right_mult",
    "left_mult",
    "bullet",
    "embed",
    "identity_opmatrix",
    "diagonal",
    "row_times",
    "laurent_grassmann",
    "grassmann_extension",
    "polynomial_quotient",
    "point_algebra",
    "matrix_algebra",
    "tensor_product",
]


class WindowError(ArithmeticError):
    """A graded computation left the declared degree window."""


class AlgebraAxiomError(ValueError):
    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report


class Element:
    """A finitely supported linear combination of basis keys."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs=None):
        self.algebra = algebra
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v != 0}

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("operands live in different algebras")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if c == 0:
            return Element(self.algebra)
        return Element(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key):
        return self.coeffs.get(key, 0)

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: self.algebra.sort_key(kv[0]))

    def degrees(self):
        return {self.algebra.degree(k) for k in self.coeffs}

    def vector(self):
        return self.algebra.to_vector(self)

    def __repr__(self):
        return self.algebra.format_element(self)


class Algebra:
    """Common behaviour of basis-presented algebras."""

    field = QQ
    name = "A"
    window = None

    def __init__(self):
        self._mul_cache = {}

    # subclasses provide: basis(), label(key), key(label), _product(i, j), unit_coeffs()

    def sort_key(self, key):
        return key

    def degree(self, key):
        return 0

    def fits(self, *keys):
        return True

    def mul_basis(self, i, j):
        try:
            return self._mul_cache[i, j]
        except KeyError:
            out = {k: v for k, v in self._product(i, j).items() if v != 0}
            self._mul_cache[i, j] = out
            return out

    def mul(self, a, b):
        out = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                xy = x * y
                for k, c in self.mul_basis(i, j).items():
                    out[k] = out.get(k, 0) + xy * c
        return Element(self, out)

    def zero(self):
        return Element(self)

    def one(self):
        return Element(self, self.unit_coeffs())

    def e(self, key):
        if isinstance(key, str):
            key = self.key(key)
        return Element(self, {key: self.field.one})

    def basis_elements(self):
        return [self.e(k) for k in self.basis()]

    def element(self, data):
        """Build an element from a ``{key or label: scalar}`` mapping or a vector."""
        if isinstance(data, Element):
            return data
        if isinstance(data, dict):
            out = {}
            for k, v in data.items():
                if isinstance(k, str):
                    k = self.key(k)
                out[k] = out.get(k, 0) + self.field.coerce(v)
            return Element(self, out)
        return self.from_vector(data)

    def from_vector(self, vec):
        keys = self.basis()
        if len(vec) != len(keys):
            raise ValueError(f"expected a vector of length {len(keys)}")
        return Element(self, {k: self.field.coerce(v) for k, v in zip(keys, vec)})

    def to_vector(self, a):
        keys = self.basis()
        index = {k: i for i, k in enumerate(keys)}
        v = [self.field.zero] * len(keys)
        for k, c in a.coeffs.items():
            if k not in index:
                raise WindowError(f"{self.label(k)} is outside the basis window")
            v[index[k]] = c
        return v

    def format_element(self, a):
        if not a.coeffs:
            return "0"
        parts = []
        for k, c in a.terms():
            lab = self.label(k)
            if c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"({self.field.format(c) if self.field is not QQ else c})*{lab}")
        return " + ".join(parts).replace("+ -", "- ")

    def random_element(self, rng, keys=None, density=0.6, bound=3):
        keys = list(self.basis() if keys is None else keys)
        out = {}
        for k in keys:
            if rng.random() < density:
                out[k] = self.field.random(rng, bound)
        return Element(self, out)

    def is_commutative(self):
        keys = self.basis()
        return all(self.mul_basis(i, j) == self.mul_basis(j, i)
                   for i in keys for j in keys if self.fits(i, j))

    def check_axioms(self):
        """Unit and associativity on basis elements (within the window)."""
        rep = Report("algebra axioms", kind="axiom")
        one = self.one()
        for k in self.basis():
            ek = self.e(k)
            rep.tick()
            if one * ek != ek or ek * one != ek:
                rep.fail("unit", (self.label(k),), f"1*{self.label(k)} or {self.label(k)}*1 != {self.label(k)}")
        elems = {k: self.e(k) for k in self.basis()}
        for i, j, k in itertools.product(self.basis(), repeat=3):
            if not self.fits(i, j, k):
                continue
            rep.tick()
            lhs = (elems[i] * elems[j]) * elems[k]
            rhs = elems[i] * (elems[j] * elems[k])
            if lhs != rhs:
                rep.fail("associativity", (self.label(i), self.label(j), self.label(k)), f"{lhs} != {rhs}")
        return rep


class FiniteDimAlgebra(Algebra):
    def __init__(self, labels, structure, unit, field=QQ, name="A", check=True):
        super().__init__()
        self.field = field
        self.name = name
        self.labels = tuple(labels)
        d = len(self.labels)
        self.dim = d
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != d:
            raise ValueError("basis labels must be distinct")
        if len(structure) != d or any(len(r) != d or any(len(c) != d for c in r) for r in structure):
            raise ValueError(f"structure constants must have shape {d}x{d}x{d}")
        if len(unit) != d:
            raise ValueError(f"unit vector must have length {d}")
        self.structure = tuple(tuple(tuple(field.coerce(x) for x in c) for c in r) for r in structure)
        self.unit = tuple(field.coerce(x) for x in unit)
        if check:
            rep = self.check_axioms()
            if not rep.ok:
                raise AlgebraAxiomError(rep)

    def basis(self):
        return list(range(self.dim))

    def label(self, key):
        return self.labels[key]

    def key(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def _product(self, i, j):
        return {k: c for k, c in enumerate(self.structure[i][j]) if c != 0}

    def unit_coeffs(self):
        return {k: c for k, c in enumerate(self.unit) if c != 0}

    def perturbed(self, i, j, k, delta=1):
        """Copy with one structure constant shifted, skipping axiom checks."""
        s = [[list(c) for c in r] for r in self.structure]
        s[i][j][k] += delta
        return FiniteDimAlgebra(self.labels, s, self.unit, self.field, self.name, check=False)

    def __repr__(self):
        return f"FiniteDimAlgebra({self.name}, dim={self.dim})"


class GradedAlgebra(Algebra):
    """Countable basis keyed by ``(degree, part)``, verified inside a window."""

    def __init__(self, name, window, parts, product, unit_key, labeler, parser, field=QQ):
        super().__init__()
        if window < 1:
            raise ValueError("window must be >= 1")
        self.name = name
        self.window = window
        self.parts = tuple(parts)
        self.field = field
        self._rule = product
        self._unit_key = unit_key
        self._labeler = labeler
        self._parser = parser

    def basis(self):
        w = self.window
        return [(k, p) for k in range(-w, w + 1) for p in self.parts]

    def sort_key(self, key):
        return key

    def degree(self, key):
        return key[0]

    def in_window(self, key):
        return abs(key[0]) <= self.window

    def fits(self, *keys):
        degs = [self.degree(k) for k in keys]
        for i in range(len(degs)):
            s = 0
            for j in range(i, len(degs)):
                s += degs[j]
                if abs(s) > self.window:
                    return False
        return True

    def _product(self, i, j):
        out = self._rule(i, j)
        for k in out:
            if not self.in_window(k):
                raise WindowError(f"{self.label(i)} * {self.label(j)} leaves window {self.window}")
        return out

    def unit_coeffs(self):
        return {self._unit_key: self.field.one}

    def label(self, key):
        return self._labeler(key)

    def key(self, label):
        k = self._parser(label)
        if not self.in_window(k):
            raise WindowError(f"{label} is outside window {self.window}")
        return k

    def __repr__(self):
        return f"GradedAlgebra({self.name}, window={self.window})"


_LG_RE = re.compile(r"^(?:z(?:\^(-?\d+))?)?(θ)?$")


def _lg_label(key):
    k, p = key
    if k == 0:
        z = ""
    elif k == 1:
        z = "z"
    else:
        z = f"z^{k}"
    t = "θ" if p else ""
    return (z + t) or "1"


def _lg_parse(label):
    label = label.strip()
    if label == "1":
        return (0, 0)
    m = _LG_RE.match(label)
    if m is None or not label:
        raise KeyError(f"not a supercircle basis label: {label!r}")
    if label.startswith("z"):
        k = int(m.group(1)) if m.group(1) is not None else 1
    else:
        k = 0
    return (k, 1 if m.group(2) else 0)


def _lg_product(i, j):
    (a, p), (b, q) = i, j
    if p and q:
        return {}
    return {(a + b, p + q): Fraction(1)}


class LaurentGrassmann(GradedAlgebra):
    """Laurent polynomials in z with one Grassmann generator theta.

    Basis ``z^k theta^e`` (key ``(k, e)``); theta commutes with z and
    squares to zero.
    """

    def __init__(self, window, field=QQ):
        super().__init__(f"laurent_grassmann({window})", window, (0, 1),
                         _lg_product, (0, 0), _lg_label, _lg_parse, field)

    def parity(self):
        """theta -> -theta, as a LinOp."""
        return LinOp(self, lambda k: Element(self, {k: -1 if k[1] else 1}), "P")


def laurent_grassmann(window, field=QQ):
    return LaurentGrassmann(window, field)


class LinOp:
    """A k-linear map A -> A determined by its values on basis keys."""

    def __init__(self, algebra, rule, name=None):
        self.algebra = algebra
        self._rule = rule
        self.name = name
        self._cache = {}

    def image(self, key):
        try:
            return self._cache[key]
        except KeyError:
            v = self._rule(key)
            if not isinstance(v, Element):
                v = Element(self.algebra, v)
            self._cache[key] = v
            return v

    def __call__(self, a):
        out = {}
        for k, c in a.coeffs.items():
            for kk, v in self.image(k).coeffs.items():
                out[kk] = out.get(kk, 0) + c * v
        return Element(self.algebra, out)

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        return LinOp(self.algebra, lambda k: self(other.image(k)), _cname(self, other))

    __matmul__ = compose

    def __add__(self, other):
        return LinOp(self.algebra, lambda k: self.image(k) + other.image(k))

    def __sub__(self, other):
        return LinOp(self.algebra, lambda k: self.image(k) - other.image(k))

    def __neg__(self):
        return LinOp(self.algebra, lambda k: -self.image(k))

    def scale(self, c):
        return LinOp(self.algebra, lambda k: self.image(k).scale(c))

    __rmul__ = scale

    @classmethod
    def from_matrix(cls, algebra, m, name=None):
        """``m[r][c]`` is the coefficient of ``e_r`` in ``F(e_c)``."""
        d = algebra.dim
        if len(m) != d or any(len(row) != d for row in m):
            raise ValueError(f"operator matrix must be {d}x{d}")
        m = [[algebra.field.coerce(x) for x in row] for row in m]
        return cls(algebra, lambda c: Element(algebra, {r: m[r][c] for r in range(d)}), name)

    def matrix(self):
        keys = self.algebra.basis()
        cols = [self.algebra.to_vector(self.image(k)) for k in keys]
        return [[cols[c][r] for c in range(len(keys))] for r in range(len(keys))]

    def equals(self, other, keys=None):
        keys = self.algebra.basis() if keys is None else keys
        return all(self.image(k) == other.image(k) for k in keys)

    def __repr__(self):
        return f"LinOp({self.name or '?'})"


def _cname(f, g):
    if f.name and g.name:
        return f"{f.name}∘{g.name}"
    return None


def identity_op(algebra):
    return LinOp(algebra, lambda k: algebra.e(k), "id")


def zero_op(algebra):
    return LinOp(algebra, lambda k: algebra.zero(), "0")


def right_mult(algebra, x):
    """``a -> a x``."""
    return LinOp(algebra, lambda k: algebra.e(k) * x, f"R[{x}]")


def left_mult(algebra, x):
    """``a -> x a``."""
    return LinOp(algebra, lambda k: x * algebra.e(k), f"L[{x}]")


class AlgMatrix:
    """An n x n matrix with entries in an algebra (an element of M_n(A))."""

    def __init__(self, algebra, entries):
        self.algebra = algebra
        self.entries = tuple(tuple(row) for row in entries)
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise ValueError("AlgMatrix must be square")

    @classmethod
    def identity(cls, algebra, n):
        one, zero = algebra.one(), algebra.zero()
        return cls(algebra, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, algebra, n):
        return cls(algebra, [[algebra.zero()] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _same_size(self, other):
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def __mul__(self, other):
        if isinstance(other, AlgMatrix):
            self._same_size(other)
            n = self.n
            return AlgMatrix(self.algebra, [
                [sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), self.algebra.zero())
                 for j in range(n)] for i in range(n)])
        if isinstance(other, Element):
            return AlgMatrix(self.algebra, [[x * other for x in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Element):
            return AlgMatrix(self.algebra, [[other * x for x in row] for row in self.entries])
        return NotImplemented

    def __add__(self, other):
        self._same_size(other)
        return AlgMatrix(self.algebra, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_size(other)
        return AlgMatrix(self.algebra, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __eq__(self, other):
        if not isinstance(other, AlgMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    __hash__ = None

    def is_identity(self):
        return self == AlgMatrix.identity(self.algebra, self.n)

    def is_idempotent(self):
        return self * self == self

    def apply(self, row):
        """Row vector times this matrix: ``(row . p)_j = sum_i row_i p_ij``."""
        return row_times(row, self)

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return AlgMatrix(self.algebra, [[self.entries[j][i] for j in range(self.n)] for i in range(self.n)])

    def __repr__(self):
        return "[" + "; ".join(", ".join(repr(x) for x in row) for row in self.entries) + "]"


def row_times(row, p):
    n = p.n
    if len(row) != n:
        raise ValueError(f"row of length {len(row)} against a {n}x{n} matrix")
    zero = p.algebra.zero()
    return tuple(sum((row[i] * p.entries[i][j] for i in range(n)), zero) for j in range(n))


class OpMatrix:
    """An n x n matrix of LinOps, i.e. an element of M_n(End_k A).

    Read as a map ``A -> M_n(A)`` via ``sigma(a)[i][j] = sigma[i][j](a)``.
    """

    def __init__(self, algebra, entries):
        self.algebra = algebra
        self.entries = tuple(tuple(row) for row in entries)
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise ValueError("OpMatrix must be square")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def T(self):
        return OpMatrix(self.algebra, [[self.entries[j][i] for j in range(self.n)] for i in range(self.n)])

    def transpose(self):
        return self.T

    def __call__(self, a):
        return AlgMatrix(self.algebra, [[op(a) for op in row] for row in self.entries])

    def bullet(self, other):
        return bullet(self, other)

    def mismatches(self, other, keys=None):
        """Yield ``(i, j, key)`` where the two matrices differ on a basis key."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        keys = self.algebra.basis() if keys is None else keys
        for i in range(self.n):
            for j in range(self.n):
                for k in keys:
                    if self.entries[i][j].image(k) != other.entries[i][j].image(k):
                        yield i, j, k

    def equals(self, other, keys=None):
        return next(self.mismatches(other, keys), None) is None

    def replace(self, i, j, op):
        rows = [list(r) for r in self.entries]
        rows[i][j] = op
        return OpMatrix(self.algebra, rows)

    def __repr__(self):
        return f"OpMatrix(n={self.n})"


def bullet(f, g):
    """``(f . g)[i][j] = sum_k f[i][k] o g[k][j]``, the g-factor applied first."""
    if f.n != g.n:
        raise ValueError(f"size mismatch: {f.n} vs {g.n}")
    n = f.n
    alg = f.algebra

    def entry(i, j):
        terms = [f.entries[i][k] @ g.entries[k][j] for k in range(n)]
        return LinOp(alg, lambda key: sum((t.image(key) for t in terms), alg.zero()))

    return OpMatrix(alg, [[entry(i, j) for j in range(n)] for i in range(n)])


def identity_opmatrix(algebra, n):
    return diagonal(algebra, [identity_op(algebra)] * n)


def diagonal(algebra, ops):
    n = len(ops)
    z = zero_op(algebra)
    return OpMatrix(algebra, [[ops[i] if i == j else z for j in range(n)] for i in range(n)])


def embed(p):
    """``M_n(A) -> M_n(End A)``, each entry acting by right multiplication."""
    return OpMatrix(p.algebra, [[right_mult(p.algebra, x) for x in row] for row in p.entries])


# --- constructors -----------------------------------------------------------


def polynomial_quotient(modulus, var="t", field=QQ, name=None):
    """``k[t]/(p(t))`` for a monic ``p`` given low -> high, basis ``1, t, ..., t^(k-1)``."""
    p = [field.coerce(c) for c in modulus]
    if p[-1] != 1:
        raise ValueError("modulus must be monic")
    k = len(p) - 1

    def reduce(poly):
        poly = list(poly)
        for deg in range(len(poly) - 1, k - 1, -1):
            c = poly[deg]
            if c != 0:
                for i in range(k + 1):
                    poly[deg - k + i] -= c * p[i]
        return poly[:k] + [0] * (k - len(poly[:k]))

    structure = []
    for i in range(k):
        row = []
        for j in range(k):
            mono = [0] * (i + j + 1)
            mono[i + j] = 1
            row.append(reduce(mono))
        structure.append(row)
    labels = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, k)]
    unit = [1] + [0] * (k - 1)
    return FiniteDimAlgebra(labels, structure, unit, field, name or f"{field.name}[{var}]/({_poly_str(p, var)})")


def _poly_str(p, var):
    terms = []
    for i, c in reversed(list(enumerate(p))):
        if c == 0:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i and c == 1:
            terms.append(mono)
        elif i and c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{c}" if i == 0 else f"{c}{mono}")
    return "+".join(terms).replace("+-", "-")


def point_algebra(d, field=QQ, name=None):
    """Functions on d points with pointwise product (basis: indicators)."""
    s = [[[1 if i == j == k else 0 for k in range(d)] for j in range(d)] for i in range(d)]
    return FiniteDimAlgebra([f"p{i}" for i in range(d)], s, [1] * d, field, name or f"{field.name}^{d}")


def matrix_algebra(n, field=QQ):
    """``M_n(k)`` with matrix units ``E_ij``."""
    idx = [(i, j) for i in range(n) for j in range(n)]
    pos = {ij: r for r, ij in enumerate(idx)}
    d = len(idx)
    s = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j) in idx:
        for (k, l) in idx:
            if j == k:
                s[pos[i, j]][pos[k, l]][pos[i, l]] = 1
    unit = [1 if i == j else 0 for (i, j) in idx]
    return FiniteDimAlgebra([f"E{i}{j}" for (i, j) in idx], s, unit, field, f"M_{n}({field.name})")


def tensor_product(a, b):
    if a.field != b.field:
        raise ValueError("tensor factors over different fields")
    pairs = [(i, j) for i in a.basis() for j in b.basis()]
    d = len(pairs)
    s = [[[0] * d for _ in range(d)] for _ in range(d)]
    for x, (i, j) in enumerate(pairs):
        for y, (k, l) in enumerate(pairs):
            for z, (p, q) in enumerate(pairs):
                s[x][y][z] = a.structure[i][k][p] * b.structure[j][l][q]
    unit = [a.unit[i] * b.unit[j] for (i, j) in pairs]
    labels = [f"{a.labels[i]}⊗{b.labels[j]}" for (i, j) in pairs]
    return FiniteDimAlgebra(labels, s, unit, a.field, f"{a.name}⊗{b.name}")


def grassmann_extension(base):
    """``base[theta]/(theta^2)`` with theta central; basis ``b`` then ``b·θ``."""
    d = base.dim
    labels = list(base.labels) + [f"{lab}θ" for lab in base.labels]
    s = [[[0] * (2 * d) for _ in range(2 * d)] for _ in range(2 * d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                c = base.structure[i][j][k]
                s[i][j][k] = c
                s[i][j + d][k + d] = c
                s[i + d][j][k + d] = c
    unit = list(base.unit) + [0] * d
    return FiniteDimAlgebra(labels, s, unit, base.field, f"{base.name}[θ]")
