"""
Exact integer and rational linear algebra.

Matrices are plain lists of rows holding ``int`` or ``fractions.Fraction``
entries.  Nothing here touches floating point: Smith and Hermite normal
forms carry their unimodular transforms, kernels are returned as
HNF-reduced integer bases, and the inertia of a symmetric form comes from
an exact congruence diagonalization.
"""
from fractions import Fraction
from math import gcd, lcm


def as_fraction_matrix(M):
    return [[Fraction(x) for x in row] for row in M]


def as_int_matrix(M):
    out = []
    for row in M:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("matrix entry %s is not an integer" % x)
            r.append(int(x))
        out.append(r)
    return out


def shape(M):
    return len(M), (len(M[0]) if M else 0)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G, x, y):
    return dot(x, mat_vec(G, y))


def block_diag(*blocks):
    n = sum(len(B) for B in blocks)
    out = zeros(n, n)
    k = 0
    for B in blocks:
        for i, row in enumerate(B):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(B)
    return out


def is_symmetric(G):
    n = len(G)
    return all(len(row) == n for row in G) and all(
        G[i][j] == G[j][i] for i in range(n) for j in range(i))


def _normalize(x):
    # keep integers as int so that integral results stay byte-comparable
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def normalize_matrix(M):
    return [[_normalize(x) for x in row] for row in M]


def det(M):
    """Determinant by fraction Gaussian elimination."""
    A = as_fraction_matrix(M)
    n = len(A)
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            A[k], A[p] = A[p], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return _normalize(d)


def rref(M):
    """Reduced row echelon form over Q; returns (R, pivot columns)."""
    A = as_fraction_matrix(M)
    m, n = shape(A)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M):
    return len(rref(M)[1]) if M else 0


def inverse(M):
    n = len(M)
    aug = [list(row) + e for row, e in zip(as_fraction_matrix(M), identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return normalize_matrix([row[n:] for row in R])


def solve(A, b):
    """Unique solution of A x = b over Q, or None when inconsistent.

    Raises when the solution is not unique.
    """
    m, n = shape(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    if len(piv) < n:
        raise ValueError("system is underdetermined")
    return [_normalize(R[i][n]) for i in range(n)]


def smith_normal_form(M):
    """Smith normal form with transforms.

    Returns (U, D, V) with U M V = D, U and V unimodular, D diagonal with
    nonnegative entries d_1 | d_2 | ...
    """
    A = as_int_matrix(M)
    m, n = shape(A)
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst <- row_dst + q row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for X in (A, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def hermite_normal_form(M):
    """Row-style Hermite normal form.

    Returns (H, U) with U M = H, U unimodular, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows sit at the bottom.
    """
    H = as_int_matrix(M)
    m, n = shape(H)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf_basis(rows):
    """Nonzero rows of the HNF of an integer row list (a canonical Z-basis)."""
    if not rows:
        return []
    H, _ = hermite_normal_form(rows)
    return [row for row in H if any(row)]


def rational_hnf_basis(rows):
    """Canonical basis of the Z-span of rational row vectors.

    Works over a common denominator d and divides back at the end.
    """
    rows = as_fraction_matrix(rows)
    d = lcm(*[x.denominator for row in rows for x in row]) if rows else 1
    B = hnf_basis([[int(x * d) for x in row] for row in rows])
    return normalize_matrix([[Fraction(x, d) for x in row] for row in B])


def clear_denominators(row):
    row = [Fraction(x) for x in row]
    d = lcm(*[x.denominator for x in row]) if row else 1
    return [int(x * d) for x in row]


def integer_kernel(M, ncols=None):
    """Z-basis of {x in Z^n : M x = 0}, HNF-reduced."""
    M = [clear_denominators(row) for row in M]
    n = shape(M)[1] if M else ncols
    if not M:
        return identity(n)
    H, U = hermite_normal_form(transpose(M))
    kernel = [U[i] for i in range(n) if not any(H[i])]
    return hnf_basis(kernel)


def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return [x // g for x in v] if g else list(v)


def inertia(G):
    """Sylvester inertia (n_plus, n_minus, n_zero) of a symmetric matrix."""
    if not is_symmetric(G):
        raise ValueError("inertia requires a symmetric matrix")
    A = as_fraction_matrix(G)
    n = len(A)
    diag = []
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if A[i][j] != 0), None)
            if pair is None:
                diag.extend([0] * (n - k))
                break
            i, j = pair
            # x_i <- x_i + x_j creates the diagonal entry 2 A_ij
            A[i] = [a + b for a, b in zip(A[i], A[j])]
            for row in A:
                row[i] += row[j]
            p = i
        A[k], A[p] = A[p], A[k]
        for row in A:
            row[k], row[p] = row[p], row[k]
        piv = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / piv
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
        # the matching column step only clears row k; the trailing block is
        # already the (symmetric) Schur complement
        for i in range(k + 1, n):
            A[k][i] = Fraction(0)
        diag.append(piv)
        k += 1
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, n - pos - neg


def char_poly(M):
    """Characteristic polynomial det(tI - M), coefficients leading first.

    Faddeev-LeVerrier recursion in exact arithmetic.
    """
    A = as_fraction_matrix(M)
    n = len(A)
    coeffs = [Fraction(1)]
    Mk = zeros(n, n)
    I = identity(n)
    for k in range(1, n + 1):
        Mk = mat_add(mat_mul(A, Mk), mat_scale(coeffs[-1], I))
        AM = mat_mul(A, Mk)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    return [_normalize(c) for c in coeffs]


def mat_pow(M, k):
    n = len(M)
    R = identity(n)
    B = M
    while k:
        if k & 1:
            R = mat_mul(R, B)
        B = mat_mul(B, B)
        k >>= 1
    return R


def poly_to_str(coeffs, var="t"):
    deg = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        e = deg - k
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if e == 0 else (var if e == 1 else "%s^%d" % (var, e))
        coef = str(a) if (a != 1 or e == 0) else ""
        term = coef + ("*" if coef and mono else "") + mono
        parts.append((sign, term))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        s += " %s %s" % (sign, term)
    return s
