"""
The concrete lattices of the gluing construction, with their named bases.

Dynkin convention throughout: simple roots have square -2 and adjacent
nodes pair to +1.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import exact_linalg as xl
from .lattice import IntLattice, direct_sum

PAIRS = list(combinations(range(1, 5), 2))  # 12, 13, 14, 23, 24, 34
PAIR_LABELS = ["%d%d" % p for p in PAIRS]

E8_FIG1_LABELS = ["C12", "C23", "C34", "C45", "C56", "C67", "C78", "C678"]
E8_FIG1_EDGES = [(i, i + 1) for i in range(6)] + [(4, 7)]
E8_FIG2_LABELS = ["D%d" % j for j in range(8)]
E8_FIG2_EDGES = [(j, j + 1) for j in range(1, 7)] + [(0, 3)]
E10_EDGES = [(i, i + 1) for i in range(8)] + [(2, 9)]

K3_LABELS = (["A_ab", "B_g", "A_bg", "B_a", "A_ga", "B_b"]
             + ["C+" + l[1:] for l in E8_FIG1_LABELS]
             + ["C-" + l[1:] for l in E8_FIG1_LABELS])

# Pi_{L_1}, transcribed entry for entry
PI_L1 = [
    [-2, -2, -2, 1, 2, 0, 0, 0, 0, 2],
    [-2, -2, -1, 2, 0, 0, 0, 0, 0, 2],
    [-2, -1, -2, 1, 2, 0, 0, 0, 0, 0],
    [1, 2, 1, -2, -1, 2, 0, 0, 0, -2],
    [2, 0, 2, -1, -2, -1, 2, 0, 0, 0],
    [0, 0, 0, 2, -1, -2, -1, 2, 0, 0],
    [0, 0, 0, 0, 2, -1, -2, -1, 2, 0],
    [0, 0, 0, 0, 0, 2, -1, -2, -1, 2],
    [0, 0, 0, 0, 0, 0, 2, -1, -2, -1],
    [2, 2, 0, -2, 0, 0, 0, 2, -1, -2],
]


@dataclass(frozen=True)
class NamedBasis:
    """Basis vectors of a lattice written in a labelled ambient frame."""

    labels: tuple
    rows: tuple

    @classmethod
    def standard(cls, labels):
        n = len(labels)
        return cls(tuple(labels), tuple(tuple(r) for r in xl.identity(n)))

    def coordinates(self, v):
        """Coordinates of an ambient vector in this basis (rational)."""
        return xl.solve(xl.transpose([list(r) for r in self.rows]), list(v))


def dynkin_gram(n, edges):
    G = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        G[a][b] = G[b][a] = 1
    return G


def hyperbolic_U():
    return IntLattice("U", [[0, 1], [1, -2]], ("A", "B"))


def e8_minus(dynkin="figure1", prefix=""):
    if dynkin == "figure1":
        labels, edges = E8_FIG1_LABELS, E8_FIG1_EDGES
    elif dynkin == "figure2":
        labels, edges = E8_FIG2_LABELS, E8_FIG2_EDGES
    else:
        raise ValueError("unknown E8 diagram %r" % dynkin)
    return IntLattice("E8(-1)", dynkin_gram(8, edges), tuple(prefix + l for l in labels))


def k3_lattice():
    """Pi_{3,19} = 3U + 2E8(-1) in the order of the marked basis."""
    Us = [IntLattice("U", [[0, 1], [1, -2]], pair)
          for pair in (("A_ab", "B_g"), ("A_bg", "B_a"), ("A_ga", "B_b"))]
    Ep = e8_minus("figure1", "+")
    Em = e8_minus("figure1", "-")
    L = direct_sum("Pi_3_19", *Us, Ep, Em)
    L = IntLattice("Pi_3_19", L.gram, tuple(K3_LABELS))
    return L, NamedBasis.standard(K3_LABELS)


def f2_points():
    return list(product(range(2), repeat=4))


def affine_hyperplanes():
    """The 30 affine hyperplanes sum a_i t_i = c of (Z/2)^4."""
    out = []
    for a in product(range(2), repeat=4):
        if not any(a):
            continue
        for c in range(2):
            out.append((a, c, [t for t in f2_points()
                               if sum(x * y for x, y in zip(a, t)) % 2 == c]))
    return out


def kummer_half_sum(W):
    pts = f2_points()
    return [Fraction(1, 2) if t in W else Fraction(0) for t in pts]


def kummer_lattice():
    """The rank 16 Kummer lattice inside the E_t frame.

    Returns the lattice in its HNF basis together with that basis written
    in the E_t coordinates.
    """
    pts = f2_points()
    gens = [[1 if s == t else 0 for s in pts] for t in pts]
    gens += [kummer_half_sum(W) for _, _, W in affine_hyperplanes()]
    B = xl.rational_hnf_basis(gens)
    ambient = [[-2 if i == j else 0 for j in range(16)] for i in range(16)]
    gram = xl.mat_mul(xl.mat_mul(B, ambient), xl.transpose(B))
    labels = tuple("E_" + "".join(map(str, t)) for t in pts)
    return IntLattice("K", gram), NamedBasis(labels, tuple(tuple(r) for r in B))


def kummer_A(i, j):
    return [t for t in f2_points() if all(t[k - 1] == 0 for k in range(1, 5) if k not in (i, j))]


def kummer_E(i, j, basis=None):
    """E_ij = E_{A_ij} in the coordinates of the Kummer lattice basis."""
    basis = basis or kummer_lattice()[1]
    return basis.coordinates(kummer_half_sum(kummer_A(i, j)))


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def torus_image_lattice():
    """The rank 6 lattice with basis 2V_ij, (2V_ij.2V_kl) = 2 sgn(i j k l)."""
    n = len(PAIRS)
    G = xl.zeros(n, n)
    for r, (i, j) in enumerate(PAIRS):
        for c, (k, l) in enumerate(PAIRS):
            if not {i, j} & {k, l}:
                G[r][c] = 2 * perm_sign((i, j, k, l))
    labels = tuple("2V" + l for l in PAIR_LABELS)
    return IntLattice("torus", G, labels), NamedBasis.standard(labels)


def torus_V(i, j):
    """V_ij = (1/2)(2V_ij) in the 2V basis."""
    v = [Fraction(0)] * 6
    v[PAIRS.index((i, j))] = Fraction(1, 2)
    return v


def e10():
    return IntLattice("E10", dynkin_gram(10, E10_EDGES), tuple("e%d" % k for k in range(1, 11)))


def a2():
    return IntLattice("A2", [[-2, 1], [1, -2]], ("e1", "e2"))


def mcmullen_L1():
    return IntLattice("L1", PI_L1, tuple("e%d" % k for k in range(1, 11)))


def mcmullen_L2():
    A = [[-2, 1], [1, -2]]
    return IntLattice("L2", xl.block_diag(A, A), ("e11", "e12", "e21", "e22"))


def mcmullen_u():
    """u_1, u_2 generating G(L_1)."""
    u1 = [Fraction(c, 3) for c in (2, 0, 1, 1, 1, 0, 0, 1, 1, 0)]
    u2 = [Fraction(c, 3) for c in (1, 2, 2, 0, 1, 1, 0, 0, 1, 1)]
    return u1, u2


def mcmullen_v():
    """v_1, v_2 generating G(L_2).

    v_2 is (1/3)(e21 + 2 e22), the copy of v_1 in the second A_2 summand;
    (1/3)(e21 + e22) is not a dual vector.
    """
    v1 = [Fraction(c, 3) for c in (1, 2, 0, 0)]
    v2 = [Fraction(c, 3) for c in (0, 0, 1, 2)]
    return v1, v2


def mcmullen_f2():
    """f_2 on L_2: e11 -> e21, e12 -> e22, e21 -> e12, e22 -> e11 (columns are images)."""
    images = {0: 2, 1: 3, 2: 1, 3: 0}
    M = xl.zeros(4, 4)
    for src, dst in images.items():
        M[dst][src] = 1
    return M


CATALOG = {
    "U": hyperbolic_U,
    "e8-minus": lambda: e8_minus("figure1"),
    "e8-figure2": lambda: e8_minus("figure2"),
    "k3": lambda: k3_lattice()[0],
    "kummer": lambda: kummer_lattice()[0],
    "torus": lambda: torus_image_lattice()[0],
    "e10": e10,
    "a2": a2,
    "L1": mcmullen_L1,
    "L2": mcmullen_L2,
}


def get(name):
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError("unknown catalog lattice %r (known: %s)" % (name, ", ".join(sorted(CATALOG))))
