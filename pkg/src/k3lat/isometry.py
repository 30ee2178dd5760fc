"""
Isometries, reflections and Coxeter elements of Gram-matrix lattices.

Matrices act on column vectors of coordinates, so the columns of M are
the images of the basis vectors and M is an isometry when M^T G M = G.
"""
from dataclasses import dataclass

from . import exact_linalg as xl
from .lattice import IntLattice, discriminant_group


@dataclass(frozen=True)
class Isometry:
    lattice: IntLattice
    matrix: tuple

    def __post_init__(self):
        M = xl.as_int_matrix(self.matrix)
        if len(M) != self.lattice.rank or any(len(r) != self.lattice.rank for r in M):
            raise ValueError("matrix size does not match the lattice rank")
        if not is_isometry(self.lattice, M):
            raise ValueError("matrix does not preserve the Gram matrix of %s" % self.lattice.name)
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in M))

    @property
    def M(self):
        return [list(r) for r in self.matrix]

    def __matmul__(self, other):
        return Isometry(self.lattice, xl.mat_mul(self.M, other.M))

    def inverse(self):
        return Isometry(self.lattice, xl.inverse(self.M))

    def char_poly(self):
        return char_poly(self.M)


def is_isometry(L, M):
    n = L.rank
    if len(M) != n or any(len(r) != n for r in M):
        return False
    return xl.mat_mul(xl.mat_mul(xl.transpose(M), L.G), M) == L.G


def char_poly(M):
    return xl.char_poly(M)


def reflection(L, i):
    """s(x) = x + (x.e_i) e_i for a simple root e_i with (e_i.e_i) = -2."""
    if L.gram[i][i] != -2:
        raise ValueError("basis vector %d is not a (-2)-root" % i)
    S = xl.identity(L.rank)
    S[i] = [a + b for a, b in zip(S[i], L.gram[i])]
    return S


def coxeter_element(L, order=None):
    """Product of the simple reflections, taken in the given node order."""
    order = list(range(L.rank)) if order is None else list(order)
    if sorted(order) != list(range(L.rank)):
        raise ValueError("order must be a permutation of the nodes")
    M = xl.identity(L.rank)
    for i in order:
        M = xl.mat_mul(M, reflection(L, i))
    return Isometry(L, M)


def mcmullen_twist(f1, name="L1"):
    """Twisted form (x.y)_{L1} from an isometry f1 of E10.

    In the Cartan convention the twisted form is -(a x.y) with
    a = 2(f1 + f1^{-1}) + 3; with the catalog's negative Dynkin
    convention the same form reads G a.
    """
    F = f1.M
    n = len(F)
    a = xl.mat_add(xl.mat_scale(2, xl.mat_add(F, xl.inverse(F))), xl.mat_scale(3, xl.identity(n)))
    gram = xl.mat_mul(f1.lattice.G, a)
    if not xl.is_symmetric(gram):
        raise ValueError("twisted form is not symmetric; f1 is not an isometry")
    return IntLattice(name, gram, f1.lattice.labels)


def discriminant_action(L, f, D=None):
    """Induced action on L^v / L as an integer matrix on generator coordinates.

    Column i holds the coordinates of the image of generator i.
    """
    D = D or discriminant_group(L)
    M = f.M if isinstance(f, Isometry) else f
    cols = [D.coords(xl.mat_vec(M, list(g))) for g in D.generators]
    return [[cols[j][i] for j in range(len(cols))] for i in range(D.ngens)]


def apply_action(A, c, factors):
    return tuple(sum(a * x for a, x in zip(row, c)) % d for row, d in zip(A, factors))


def order_of(f, bound=120):
    """Smallest n <= bound with f^n = 1, or None when it exceeds the bound."""
    M = f.M if isinstance(f, Isometry) else f
    I = xl.identity(len(M))
    P = M
    for n in range(1, bound + 1):
        if P == I:
            return n
        P = xl.mat_mul(P, M)
    return None


def is_reciprocal(p):
    """t^n p(1/t) = +- p(t)."""
    r = list(reversed(p))
    return r == list(p) or r == [-c for c in p]
