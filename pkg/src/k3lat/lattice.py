"""
Integral lattices given by Gram matrices, their duals and discriminant forms.

A lattice is Z^r with the bilinear form x^T G y.  The dual L^v is
G^{-1} Z^r, and the discriminant group L^v / L is read off the Smith form
U G V = D: a dual vector x has class coordinates (U G x)_i mod d_i, and
the columns V e_i / d_i are lifts of the generators.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import prod

from . import exact_linalg as xl


@dataclass(frozen=True)
class IntLattice:
    """Non-degenerate integral lattice with a symmetric Gram matrix."""

    name: str
    gram: tuple
    labels: tuple = None

    def __post_init__(self):
        G = xl.as_int_matrix(self.gram)
        if not xl.is_symmetric(G):
            raise ValueError("Gram matrix of %s is not symmetric" % self.name)
        object.__setattr__(self, "gram", tuple(tuple(r) for r in G))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(G) or len(set(labels)) != len(labels):
                raise ValueError("labels must be unique and match the rank")
            object.__setattr__(self, "labels", labels)
        if G and xl.det(G) == 0:
            raise ValueError("Gram matrix of %s is degenerate" % self.name)

    @property
    def rank(self):
        return len(self.gram)

    @property
    def G(self):
        return [list(r) for r in self.gram]

    @cached_property
    def det(self):
        return xl.det(self.G) if self.rank else 1

    @cached_property
    def signature(self):
        p, n, _ = xl.inertia(self.G)
        return p, n

    @cached_property
    def inertia(self):
        return xl.inertia(self.G)

    @property
    def even(self):
        return is_even(self)

    @property
    def unimodular(self):
        return is_unimodular(self)

    def index(self, label):
        return self.labels.index(label)

    def basis_vector(self, label):
        v = [0] * self.rank
        v[self.index(label)] = 1
        return v

    def renamed(self, name):
        return IntLattice(name, self.gram, self.labels)

    def __repr__(self):
        return "IntLattice(%r, rank=%d, signature=%s)" % (self.name, self.rank, self.signature)


def lattice(name, gram, labels=None):
    return IntLattice(name, gram, labels)


def is_even(L):
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank))


def is_unimodular(L):
    return abs(L.det) == 1


def pairing(L, x, y):
    if len(x) != L.rank or len(y) != L.rank:
        raise ValueError("vector length does not match rank %d" % L.rank)
    return xl._normalize(Fraction(xl.bilinear(L.gram, x, y)))


def in_dual(L, x):
    return all(Fraction(c).denominator == 1 for c in xl.mat_vec(L.gram, x))


def in_lattice(x):
    return all(Fraction(c).denominator == 1 for c in x)


def disc_q(L, x):
    """q_L(x) = (1/2)(x.x) mod 1 in [0, 1) for x in the dual."""
    if not in_dual(L, x):
        raise ValueError("vector is not in the dual lattice")
    return Fraction(pairing(L, x, x)) / 2 % 1


def disc_b(L, x, y):
    return Fraction(pairing(L, x, y)) % 1


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite group L^v / L with canonical generator lifts."""

    lattice: IntLattice
    invariant_factors: tuple
    generators: tuple
    _U: tuple = field(repr=False)

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def ngens(self):
        return len(self.invariant_factors)

    def coords(self, x):
        """Class of a dual vector in generator coordinates."""
        if not in_dual(self.lattice, x):
            raise ValueError("vector is not in the dual lattice")
        y = xl.mat_vec(self.lattice.gram, x)
        r = self.lattice.rank
        k = r - self.ngens
        Uy = xl.mat_vec(self._U, y)
        return tuple(int(Fraction(Uy[k + i])) % d for i, d in enumerate(self.invariant_factors))

    def lift(self, c):
        v = [Fraction(0)] * self.lattice.rank
        for ci, g in zip(c, self.generators):
            v = [a + ci * b for a, b in zip(v, g)]
        return [xl._normalize(a) for a in v]

    def elements(self):
        return list(product(*[range(d) for d in self.invariant_factors]))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def q(self, c):
        return disc_q(self.lattice, self.lift(c))

    def q_values(self):
        """Multiset of q over the whole group, as a sorted list."""
        return sorted(self.q(c) for c in self.elements())

    def is_zero(self, c):
        return all(x == 0 for x in c)


def discriminant_group(L):
    """Discriminant group L^v / L from the Smith normal form of the Gram."""
    U, D, V = xl.smith_normal_form(L.G)
    r = L.rank
    diag = [D[i][i] for i in range(r)]
    if 0 in diag:
        raise ValueError("degenerate lattice has no finite discriminant group")
    k = sum(1 for d in diag if d == 1)
    factors = tuple(diag[k:])
    gens = []
    for i in range(k, r):
        g = [Fraction(V[j][i], diag[i]) % 1 for j in range(r)]
        gens.append(tuple(xl._normalize(a) for a in g))
    return DiscriminantGroup(L, factors, tuple(gens), tuple(tuple(row) for row in U))


def direct_sum(name, *lattices):
    gram = xl.block_diag(*[L.G for L in lattices])
    labels = None
    if all(L.labels is not None for L in lattices):
        labels = tuple(l for L in lattices for l in L.labels)
    return IntLattice(name, gram, labels)


def sublattice(name, L, basis):
    """Lattice spanned by integer (or rational) rows in L's coordinates."""
    gram = xl.mat_mul(xl.mat_mul(basis, L.G), xl.transpose(basis))
    return IntLattice(name, gram)
