"""
(-2)-classes in negative-definite lattices, the dominant root, disjoint
root sets, and Riemann-Roch bookkeeping.

Root enumeration is a Fincke-Pohst search on Q = -G with an exact rational
LDL^T decomposition: q(x) = sum_i d_i (x_i + sum_{j>i} m_ji x_j)^2, bounded
coordinate by coordinate from the last one down.
"""
from fractions import Fraction
from math import floor, isqrt

from . import exact_linalg as xl
from .lattice import IntLattice


def ldl(Q):
    """Q = L D L^T for positive-definite Q; returns (m, d) with m[j][i] = L[j][i]."""
    n = len(Q)
    A = xl.as_fraction_matrix(Q)
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i] - sum(m[i][k] ** 2 * d[k] for k in range(i))
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            m[j][i] = (A[j][i] - sum(m[j][k] * m[i][k] * d[k] for k in range(i))) / d[i]
    return m, d


def _int_range(center, radius_sq):
    """Integers x with (x - center)^2 <= radius_sq, exactly."""
    if radius_sq < 0:
        return range(0)
    # isqrt on a scaled numerator gives a safe integer bound
    r = isqrt(radius_sq.numerator // radius_sq.denominator + 1) + 1
    c = floor(center)
    lo, hi = c - r - 1, c + r + 1
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(Q, bound):
    """All nonzero integer x with x^T Q x <= bound, Q positive definite."""
    n = len(Q)
    bound = Fraction(bound)
    # reversing the coordinate order lets the search fix x_{n-1} first
    m, d = ldl(Q)
    out = []
    x = [0] * n

    def rec(i, remaining):
        # q = sum_k d_k (x_k + sum_{j>k} m[j][k] x_j)^2
        c = -sum(m[j][i] * x[j] for j in range(i + 1, n))
        for v in _int_range(c, remaining / d[i]):
            x[i] = v
            rem = remaining - d[i] * (v - c) ** 2
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, rem)
        x[i] = 0

    rec(n - 1, bound)
    return out


def enumerate_roots(L):
    """All x with (x.x) = -2 in a negative-definite lattice, sorted."""
    p, nm, z = L.inertia
    if p or z:
        raise ValueError("root enumeration needs a negative-definite lattice")
    Q = [[-a for a in row] for row in L.G]
    vecs = short_vectors(Q, 2)
    roots = [v for v in vecs if xl.bilinear(L.gram, v, v) == -2]
    return sorted(roots)


def box_bounds(L):
    """Per-coordinate bounds |x_i| <= floor(sqrt(2 (Q^{-1})_ii)) for roots."""
    Q = [[-a for a in row] for row in L.G]
    Qi = xl.inverse(Q)
    return [isqrt(int(2 * Fraction(Qi[i][i]))) for i in range(len(Q))]


def dominant_root(L, roots=None):
    """The unique root a != +-e_j with (a.e_j) >= 0 for every simple root e_j."""
    roots = roots or enumerate_roots(L)
    n = L.rank
    simple = {tuple(1 if k == j else 0 for k in range(n)) for j in range(n)}
    simple |= {tuple(-c for c in s) for s in simple}
    found = [r for r in roots if tuple(r) not in simple
             and all(c >= 0 for c in xl.mat_vec(L.gram, r))]
    if len(found) != 1:
        raise ValueError("expected exactly one dominant root, found %d" % len(found))
    return found[0]


def max_disjoint_roots(G, roots, limit=None):
    """Largest pairwise-orthogonal subset of the given roots.

    Branch and bound on bitsets of the orthogonality graph with a greedy
    colouring bound.  Pairwise-orthogonal roots are linearly independent,
    so the search stops once it reaches the ambient rank; ``limit`` stops
    it earlier, as soon as a set of that size is found.
    """
    n = len(roots)
    if n == 0:
        return 0, []
    cap = len(roots[0]) if limit is None else min(limit, len(roots[0]))
    GR = [xl.mat_vec(G, r) for r in roots]
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if xl.dot(GR[i], roots[j]) == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    best = [0, 0]

    def colour_order(cand):
        # greedy colouring; vertex v may extend the clique by at most colour(v)
        order = []
        k = 0
        while cand:
            k += 1
            avail = cand
            while avail:
                v = avail.bit_length() - 1
                avail &= ~(1 << v) & ~adj[v]
                cand &= ~(1 << v)
                order.append((v, k))
        return order

    def expand(size, chosen, cand):
        if best[0] >= cap:
            return
        for v, k in reversed(colour_order(cand)):
            if size + k <= best[0] or best[0] >= cap:
                return
            new = size + 1
            if new > best[0]:
                best[0], best[1] = new, chosen | (1 << v)
            nxt = cand & adj[v]
            if nxt:
                expand(new, chosen | (1 << v), nxt)
            cand &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    members = [i for i in range(n) if best[1] >> i & 1]
    return best[0], members


def euler_characteristic(D_square):
    """chi(O(D)) = D^2/2 + 2 on a K3 surface."""
    if D_square % 2:
        raise ValueError("D^2 is even on a K3 surface")
    return D_square // 2 + 2


def effective_decomposition(x, generators):
    """Nonnegative integer coefficients of x in the generators, or None."""
    try:
        sol = xl.solve(xl.transpose(generators), list(x))
    except ValueError:
        raise ValueError("generators must be linearly independent")
    if sol is None:
        return None
    sol = [Fraction(c) for c in sol]
    if any(c.denominator != 1 or c < 0 for c in sol):
        return None
    return [int(c) for c in sol]


def picard_signature_check(L):
    """True iff the lattice is negative definite."""
    return L.inertia == (0, L.rank, 0)


def example_generators():
    """Gram of D_gamma + Q_+ + Q_- for the 17 generators of the Picard lattice."""
    from .catalog import e8_minus
    E = e8_minus("figure2").G
    return IntLattice("Pic17", xl.block_diag([[-2]], E, E),
                      ("D_g",) + tuple("D%d+" % j for j in range(8)) + tuple("D%d-" % j for j in range(8)))
