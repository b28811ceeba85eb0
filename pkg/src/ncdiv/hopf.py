"""Hopf algebra data on finite-dimensional algebras.

Functionals ``A -> k`` are tuples of their values on the basis.  The hit
action is ``f > a = (id (x) f)(Delta(a))``, so ``f > (g > a) = (f * g) > a``
with the convolution ``(f * g)(x) = f(x_(1)) g(x_(2))``.
"""

from dataclasses import dataclass

from .algebra import Element, FiniteDimAlgebra, LinOp
from .fields import QQ
from .report import Report

__all__ = [
    "HopfAlgebra",
    "group_function_algebra",
    "cyclic_group_table",
    "evaluate",
    "GroupTableError",
]


class GroupTableError(ValueError):
    pass


def evaluate(f, a):
    """Value of the functional ``f`` (basis values) at the element ``a``."""
    return sum((c * f[k] for k, c in a.coeffs.items()), 0)


@dataclass
class HopfAlgebra:
    algebra: FiniteDimAlgebra
    coproduct: dict          # key -> {(k1, k2): coefficient}
    counit: tuple
    antipode: LinOp
    antipode_inverse: LinOp
    group_names: tuple = ()
    group_table: tuple = ()

    @property
    def dim(self):
        return self.algebra.dim

    def ev(self, x):
        """Evaluation at a group element (index), as a functional."""
        return tuple(1 if k == x else 0 for k in self.algebra.basis())

    def counit_functional(self):
        return tuple(self.counit)

    def hit(self, f, a):
        alg = self.algebra
        out = {}
        for k, c in a.coeffs.items():
            for (k1, k2), v in self.coproduct[k].items():
                w = c * v * f[k2]
                if w != 0:
                    out[k1] = out.get(k1, 0) + w
        return Element(alg, out)

    def hit_op(self, f, name=None):
        f = tuple(f)
        return LinOp(self.algebra, lambda k: self.hit(f, self.algebra.e(k)), name)

    def convolve(self, f, g):
        return tuple(sum((v * f[k1] * g[k2] for (k1, k2), v in self.coproduct[k].items()), 0)
                     for k in self.algebra.basis())

    def compose(self, f, op):
        """The functional ``f o op``."""
        return tuple(evaluate(f, op.image(k)) for k in self.algebra.basis())

    def antipode_power(self, p):
        """``S^p`` as a LinOp, for any integer p."""
        from .algebra import identity_op
        op = identity_op(self.algebra)
        base = self.antipode if p >= 0 else self.antipode_inverse
        for _ in range(abs(p)):
            op = base @ op
        return op

    def check_axioms(self):
        """Coassociativity, counit, antipode and bialgebra compatibility on basis elements."""
        alg = self.algebra
        rep = Report("hopf axioms", kind="axiom")
        keys = alg.basis()
        lab = alg.label

        for k in keys:
            d = self.coproduct[k]
            lhs, rhs = {}, {}
            for (k1, k2), c in d.items():
                for (a, b), v in self.coproduct[k1].items():
                    lhs[a, b, k2] = lhs.get((a, b, k2), 0) + c * v
                for (a, b), v in self.coproduct[k2].items():
                    rhs[k1, a, b] = rhs.get((k1, a, b), 0) + c * v
            lhs = {x: v for x, v in lhs.items() if v != 0}
            rhs = {x: v for x, v in rhs.items() if v != 0}
            rep.expect(lhs == rhs, "coassociativity", (lab(k),))

            ek = alg.e(k)
            left = sum((alg.e(k2).scale(c * self.counit[k1]) for (k1, k2), c in d.items()), alg.zero())
            right = sum((alg.e(k1).scale(c * self.counit[k2]) for (k1, k2), c in d.items()), alg.zero())
            rep.expect(left == ek and right == ek, "counit", (lab(k),))

            eps = alg.one().scale(self.counit[k])
            s_left = sum((self.antipode(alg.e(k1)) * alg.e(k2) * c for (k1, k2), c in d.items()), alg.zero())
            s_right = sum((alg.e(k1) * self.antipode(alg.e(k2)) * c for (k1, k2), c in d.items()), alg.zero())
            rep.expect(s_left == eps, "antipode S(a1)a2 = eps(a)1", (lab(k),), lambda: f"{s_left} != {eps}")
            rep.expect(s_right == eps, "antipode a1S(a2) = eps(a)1", (lab(k),))
            rep.expect(self.antipode(self.antipode_inverse(ek)) == ek
                       and self.antipode_inverse(self.antipode(ek)) == ek, "S o S^-1 = id", (lab(k),))

        for i in keys:
            for j in keys:
                prod = alg.mul_basis(i, j)
                lhs = {}
                for k, c in prod.items():
                    for x, v in self.coproduct[k].items():
                        lhs[x] = lhs.get(x, 0) + c * v
                lhs = {x: v for x, v in lhs.items() if v != 0}
                rhs = {}
                for (a, b), c in self.coproduct[i].items():
                    for (p, q), v in self.coproduct[j].items():
                        for x, u in alg.mul_basis(a, p).items():
                            for y, w in alg.mul_basis(b, q).items():
                                rhs[x, y] = rhs.get((x, y), 0) + c * v * u * w
                rhs = {x: v for x, v in rhs.items() if v != 0}
                rep.expect(lhs == rhs, "coproduct multiplicative", (lab(i), lab(j)))
                eps_prod = sum((c * self.counit[k] for k, c in prod.items()), 0)
                rep.expect(eps_prod == self.counit[i] * self.counit[j], "counit multiplicative", (lab(i), lab(j)))
        return rep


def cyclic_group_table(n):
    names = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return [[(i + j) % n for j in range(n)] for i in range(n)], names[:n]


def _validate_group(table):
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupTableError("group table must be a non-empty square")
    if any(not (0 <= x < n) for row in table for x in row):
        raise GroupTableError("group table entries must be element indices")
    ident = next((e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))), None)
    if ident is None:
        raise GroupTableError("no identity element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise GroupTableError(f"not associative at ({a}, {b}, {c})")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == ident), None)
        if b is None or table[b][a] != ident:
            raise GroupTableError(f"element {a} has no inverse")
        inv.append(b)
    return ident, inv


def group_function_algebra(table, names=None, field=QQ, algebra=None):
    """Functions on a finite group, with Delta, eps and S of the function Hopf algebra.

    ``algebra`` replaces the pointwise algebra (it must have one basis key
    per group element); used to attach Hopf data to an imported algebra.
    """
    ident, inv = _validate_group(table)
    n = len(table)
    names = list(names) if names is not None else [str(x) for x in range(n)]
    if len(names) != n:
        raise GroupTableError("one name per group element")
    s = [[[1 if i == j == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    if algebra is None:
        alg = FiniteDimAlgebra([f"e_{x}" for x in names], s, [1] * n, field, f"Fun({'/'.join(names)})")
    elif algebra.dim != n:
        raise GroupTableError(f"algebra has dimension {algebra.dim}, group has order {n}")
    else:
        alg, field = algebra, algebra.field
    coproduct = {x: {} for x in range(n)}
    for y in range(n):
        for z in range(n):
            coproduct[table[y][z]][y, z] = field.one
    counit = tuple(field.one if x == ident else field.zero for x in range(n))
    antipode = LinOp(alg, lambda x: alg.e(inv[x]), "S")
    antipode_inverse = LinOp(alg, lambda x: alg.e(inv[x]), "S^-1")
    return HopfAlgebra(alg, coproduct, counit, antipode, antipode_inverse,
                       tuple(names), tuple(tuple(r) for r in table))
