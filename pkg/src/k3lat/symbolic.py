"""
Exact complex scalars as rational combinations of monomials in declared
generators.

A generator is either algebraic (given by a monic integer minimal
polynomial, e.g. i with t^2 + 1, or mu = -2^(1/3) with t^3 + 2) or free (a
transcendental parameter such as x together with its conjugate xbar).
Monomials i^a mu^b x^c ... with exponents below the algebraic degrees
form a Q-basis, so equality, kernels and conjugation are all exact.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from . import exact_linalg as xl


@dataclass(frozen=True)
class Generator:
    name: str
    minpoly: tuple = None       # monic, leading first; None for a free symbol
    conj: object = None         # algebraic: dict monomial-label -> coeff; free: partner name
    value: complex = None

    @property
    def free(self):
        return self.minpoly is None

    @property
    def degree(self):
        return len(self.minpoly) - 1


class SymbolAlgebra:
    """A commutative Q-algebra generated by algebraic and free symbols.

    Free symbols may appear with total degree at most ``max_free_degree``
    in any monomial; products beyond that are outside the declared closure.
    """

    def __init__(self, generators, max_free_degree=1):
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        self.max_free_degree = max_free_degree
        self._index = {n: k for k, n in enumerate(self.names)}
        self._conj_cache = {}
        self._mul_cache = {}

    def __repr__(self):
        return "SymbolAlgebra(%s)" % ", ".join(self.names)

    def __eq__(self, other):
        return isinstance(other, SymbolAlgebra) and self.generators == other.generators \
            and self.max_free_degree == other.max_free_degree

    def __hash__(self):
        return hash((self.generators, self.max_free_degree))

    # monomials are exponent tuples aligned with self.generators
    def one_monomial(self):
        return (0,) * len(self.generators)

    def label(self, mono):
        parts = []
        for g, e in zip(self.generators, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append("%s^%d" % (g.name, e))
        return "*".join(parts) if parts else "1"

    def parse_label(self, label):
        mono = [0] * len(self.generators)
        if label.strip() == "1":
            return tuple(mono)
        for part in label.split("*"):
            part = part.strip()
            name, _, e = part.partition("^")
            if name not in self._index:
                raise ValueError("unknown symbol %r" % name)
            mono[self._index[name]] += int(e) if e else 1
        return self._check(tuple(mono))

    def _check(self, mono):
        free_deg = sum(e for g, e in zip(self.generators, mono) if g.free)
        if free_deg > self.max_free_degree:
            raise ValueError("product %s is outside the declared closure" % self.label(mono))
        return mono

    def element(self, terms=None):
        return SymbolicComplex(self, terms or {})

    def const(self, c):
        c = Fraction(c)
        return self.element({self.one_monomial(): c} if c else {})

    def gen(self, name):
        mono = [0] * len(self.generators)
        mono[self._index[name]] = 1
        return self.element({tuple(mono): Fraction(1)})

    def from_labels(self, mapping):
        out = {}
        for lab, c in mapping.items():
            c = Fraction(c)
            if c:
                m = self.parse_label(lab)
                out[m] = out.get(m, 0) + c
        return self.element({m: c for m, c in out.items() if c})

    def coerce(self, x):
        if isinstance(x, SymbolicComplex):
            if x.algebra != self:
                raise ValueError("scalars come from different algebras")
            return x
        if isinstance(x, (int, Rational)):
            return self.const(x)
        if isinstance(x, complex) or isinstance(x, float):
            raise TypeError("floating point values have no exact symbolic form; use Fractions")
        raise TypeError("cannot coerce %r" % (x,))

    def mul_monomials(self, a, b):
        """Product of two basis monomials as a reduced element."""
        key = (a, b)
        if key in self._mul_cache:
            return self._mul_cache[key]
        mono = [x + y for x, y in zip(a, b)]
        result = {tuple(mono): Fraction(1)}
        for k, g in enumerate(self.generators):
            if g.free:
                continue
            result = self._reduce(result, k)
        for m in result:
            self._check(m)
        self._mul_cache[key] = result
        return result

    def _reduce(self, terms, k):
        g = self.generators[k]
        d = g.degree
        # t^d = -(c_1 t^{d-1} + ... + c_d)
        tail = [-Fraction(c) for c in g.minpoly[1:]]
        out = {}
        todo = list(terms.items())
        while todo:
            m, c = todo.pop()
            if m[k] < d:
                out[m] = out.get(m, 0) + c
                continue
            for j, cj in enumerate(tail):
                if cj:
                    e = m[k] - d + (d - 1 - j)
                    nm = m[:k] + (e,) + m[k + 1:]
                    todo.append((nm, c * cj))
        return {m: c for m, c in out.items() if c}

    def conj_of_generator(self, k):
        if k in self._conj_cache:
            return self._conj_cache[k]
        g = self.generators[k]
        if g.free:
            partner = g.conj or g.name
            val = self.gen(partner)
        elif g.conj is None:
            val = self.gen(g.name)
        else:
            val = self.from_labels(g.conj)
        self._conj_cache[k] = val
        return val

    def algebraic_basis(self):
        """Monomials with no free content (a Q-basis of the number field part)."""
        from itertools import product
        ranges = [range(g.degree) if not g.free else range(1) for g in self.generators]
        return [tuple(m) for m in product(*ranges)]


@dataclass(frozen=True)
class SymbolicComplex:
    algebra: SymbolAlgebra
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def _other(self, o):
        return self.algebra.coerce(o)

    def __add__(self, o):
        o = self._other(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return SymbolicComplex(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicComplex(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        A = self.algebra
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                for m, c in A.mul_monomials(m1, m2).items():
                    t[m] = t.get(m, 0) + c * c1 * c2
        return SymbolicComplex(A, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        r = self.algebra.const(1)
        for _ in range(k):
            r = r * self
        return r

    def __truediv__(self, o):
        return self * self._other(o).inverse()

    def __rtruediv__(self, o):
        return self._other(o) * self.inverse()

    def __eq__(self, o):
        try:
            o = self._other(o)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def is_zero(self):
        return not self.terms

    def conj(self):
        A = self.algebra
        out = A.const(0)
        for m, c in self.terms.items():
            term = A.const(c)
            for k, e in enumerate(m):
                for _ in range(e):
                    term = term * A.conj_of_generator(k)
            out = out + term
        return out

    def real_part(self):
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self):
        """(z - conj z) / (2i); needs the generator i."""
        i = self.algebra.gen("i")
        return (self - self.conj()) * Fraction(1, 2) * (-i)

    def has_free(self):
        return any(g.free and e for m in self.terms for g, e in zip(self.algebra.generators, m))

    def inverse(self):
        """Inverse inside the number field spanned by the algebraic generators."""
        if self.is_zero():
            raise ZeroDivisionError("symbolic zero has no inverse")
        if self.has_free():
            raise ValueError("cannot invert an element with free-symbol content")
        A = self.algebra
        basis = A.algebraic_basis()
        idx = {m: k for k, m in enumerate(basis)}
        # column j of the multiplication matrix is self * basis_j
        cols = []
        for b in basis:
            prod = self * SymbolicComplex(A, {b: Fraction(1)})
            cols.append([prod.terms.get(m, Fraction(0)) for m in basis])
        Mt = xl.transpose(cols)
        rhs = [Fraction(1) if m == A.one_monomial() else Fraction(0) for m in basis]
        sol = xl.solve(Mt, rhs)
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor")
        return SymbolicComplex(A, {basis[k]: Fraction(c) for k, c in enumerate(sol) if c})

    def coeff(self, label):
        return self.terms.get(self.algebra.parse_label(label), Fraction(0))

    def as_labels(self):
        return {self.algebra.label(m): c for m, c in sorted(self.terms.items())}

    def rational(self):
        """The value as a Fraction when it is a rational constant."""
        one = self.algebra.one_monomial()
        if set(self.terms) - {one}:
            raise ValueError("%s is not rational" % self)
        return self.terms.get(one, Fraction(0))

    def evaluate(self, values=None):
        """Numerical value; free symbols need entries in ``values``."""
        values = values or {}
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for g, e in zip(self.algebra.generators, m):
                if e:
                    gv = values.get(g.name, g.value)
                    if gv is None:
                        raise ValueError("no numerical value for symbol %s" % g.name)
                    v *= complex(gv) ** e
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            lab = self.algebra.label(m)
            parts.append(str(c) if lab == "1" else ("%s*%s" % (c, lab) if c != 1 else lab))
        return " + ".join(parts)


def free_pair(name):
    """A free symbol and its conjugate partner."""
    bar = name + "bar"
    return [Generator(name, None, bar), Generator(bar, None, name)]


I_GEN = Generator("i", (1, 0, 1), {"i": -1}, 1j)
MU_GEN = Generator("mu", (1, 0, 0, 2), None, -(2 ** (1 / 3)))


def gaussian_algebra():
    """Q(i): exact complex rationals."""
    return SymbolAlgebra([I_GEN])


def example_algebra():
    """Q(i, mu) with mu = -2^(1/3), plus a free parameter x and its conjugate."""
    return SymbolAlgebra([I_GEN, MU_GEN] + free_pair("x"))


def gaussian(algebra, re, im=0):
    return algebra.const(re) + algebra.const(im) * algebra.gen("i")
