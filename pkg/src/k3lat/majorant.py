"""
Majorant series for the linearisation problem and Ueda's effective constant.

All three functional equations are solved coefficient by coefficient: the
X^n coefficient of the right-hand side only involves lower coefficients.
For a right side C F^2 / (1 - R F) put G = R F / (1 - R F), so that
G = R F (1 + G) and C F^2 / (1 - R F) = (C / R) F G.
"""
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

DEFAULT_BITS = 200
EQUATIONS = ("ueda_type", "arnold_z_type", "b_hat_type")


def precision_bits(bits=None):
    if bits is not None:
        return int(bits)
    return int(os.environ.get("K3LAT_PRECISION_BITS", DEFAULT_BITS))


def ueda_constant(s, N):
    """(L1, L2, K1, K2, K) for 0 < s < 1, exact when s is rational."""
    s = Fraction(s) if not isinstance(s, float) else s
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    L1 = 2 * s / (1 - s)
    L2 = (1 + s) / (1 - s)
    K1 = L1 * L2 * (L2 + 1) ** N
    K2 = L2 * (L2 + 1) ** N
    K = max(1 + 2 * K1 + 2 * K2, 2 * K2)
    return L1, L2, K1, K2, K


def ueda_bound(s, N):
    """1 + 2 (2 / (1 - s))^{N + 2}."""
    return 1 + 2 * (2 / (1 - Fraction(s))) ** (N + 2)


@dataclass
class MajorantSeries:
    coeffs: list                  # A_1 .. A_n
    source_equation: str
    params: dict
    d_seq: list = field(repr=False, default_factory=list)

    def __len__(self):
        return len(self.coeffs)

    def as_dict(self):
        return {"source_equation": self.source_equation,
                "params": {k: str(v) for k, v in self.params.items()},
                "coeffs": [str(c) if isinstance(c, Fraction) else mpmath.nstr(c, 20)
                           for c in self.coeffs]}


def _is_rational(x):
    return isinstance(x, (int, Fraction))


def _exact_inputs(d_seq, *params):
    return all(_is_rational(x) for x in list(d_seq) + list(params))


def _num(x, exact):
    if exact:
        return Fraction(x)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _dseq(d_seq, needed, exact):
    if len(d_seq) < needed:
        raise ValueError("need %d distances, got %d" % (needed, len(d_seq)))
    out = []
    for k, d in enumerate(d_seq[:needed]):
        d = _num(d, exact)
        if d <= 0:
            raise ValueError("zero distance d_%d: the pair is not Diophantine" % (k + 1))
        out.append(d)
    return out


def _positive(**kw):
    for k, v in kw.items():
        if not v > 0:
            raise ValueError("%s must be positive" % k)


def _schroeder(d, C, R, n_terms, one):
    """A_1 = 1, d_{n-1} A_n = [X^n] C A^2 / (1 - R A)."""
    F = [0 * one, one]
    G = [0 * one, R * one]
    for n in range(2, n_terms + 1):
        conv = sum((F[j] * G[n - j] for j in range(1, n)), 0 * one)
        F.append((C / R) * conv / d[n - 2])
        G.append(R * (F[n] + conv))
    return F[1:]


def _mode(exact, d_seq, *params):
    auto = _exact_inputs(d_seq, *params)
    if exact and not auto:
        raise ValueError("exact mode needs rational distances and parameters")
    return auto if exact is None else exact


def majorant_ueda(d_seq, K, M, n_terms, bits=None, exact=None):
    """sum_{n>=2} d_{n-1} A_n X^n = K M A^2 / (1 - M A), A_1 = 1.

    Coefficients are exact Fractions when every input is rational (unless
    exact=False), otherwise mpmath floats at the working precision.
    """
    _positive(K=K, M=M)
    d_seq = list(d_seq)
    exact = _mode(exact, d_seq[:max(n_terms - 1, 0)], K, M)
    with mpmath.workprec(precision_bits(bits)):
        d = _dseq(d_seq, max(n_terms - 1, 0), exact)
        K, M = _num(K, exact), _num(M, exact)
        A = _schroeder(d, K * M, M, n_terms, _num(1, exact))
    return MajorantSeries(A, "ueda_type", {"K": K, "M": M}, d_seq[:n_terms])


def majorant_b_hat(d_seq, K, M, Q, n_terms, bits=None, exact=None):
    """sum_{n>=2} d_{n-1} B_n X^n = 2 K Q (M + 1) B^2 / (1 - Q B), B_1 = 1."""
    _positive(K=K, M=M, Q=Q)
    d_seq = list(d_seq)
    exact = _mode(exact, d_seq[:max(n_terms - 1, 0)], K, M, Q)
    with mpmath.workprec(precision_bits(bits)):
        d = _dseq(d_seq, max(n_terms - 1, 0), exact)
        K, M, Q = _num(K, exact), _num(M, exact), _num(Q, exact)
        B = _schroeder(d, 2 * K * Q * (M + 1), Q, n_terms, _num(1, exact))
    return MajorantSeries(B, "b_hat_type", {"K": K, "M": M, "Q": Q}, d_seq[:n_terms])


def majorant_arnold_z(d_seq, K, M, Q, n_terms, bits=None, exact=None):
    """sum_{n>=1} d_n A_n X^n = 2 K Q (M + A) X / (1 - Q X)."""
    _positive(K=K, M=M, Q=Q)
    d_seq = list(d_seq)
    exact = _mode(exact, d_seq[:n_terms], K, M, Q)
    with mpmath.workprec(precision_bits(bits)):
        d = _dseq(d_seq, n_terms, exact)
        K, M, Q = _num(K, exact), _num(M, exact), _num(Q, exact)
        A = []
        # S = M Q^{n-1} + sum_{v<n} A_v Q^{n-1-v}, updated as S <- Q S + A_n
        S = M
        for n in range(1, n_terms + 1):
            A.append(2 * K * Q * S / d[n - 1])
            S = Q * S + A[-1]
    return MajorantSeries(A, "arnold_z_type", {"K": K, "M": M, "Q": Q}, d_seq[:n_terms])


@dataclass
class RadiusEstimate:
    radius: float
    slope: float
    residual: float
    n_used: int

    def as_dict(self):
        return {"radius": self.radius, "slope": self.slope, "residual": self.residual,
                "n_used": self.n_used}


def radius_estimate(ms, min_terms=16, tail=0.5):
    """exp(-b) from a least-squares fit log A_n = a + b n + c log n over the tail."""
    coeffs = ms.coeffs if isinstance(ms, MajorantSeries) else ms
    n = len(coeffs)
    if n < min_terms:
        raise ValueError("need at least %d coefficients, got %d" % (min_terms, n))
    start = max(1, int(n * (1 - tail)))
    rows, ys = [], []
    for k in range(start, n + 1):
        c = coeffs[k - 1]
        if c <= 0:
            continue
        rows.append([1.0, float(k), math.log(k)])
        ys.append(_log(c))
    if len(rows) < 4:
        raise ValueError("too few positive coefficients in the tail")
    X, y = np.array(rows), np.array(ys)
    sol, *_ = np.linalg.lstsq(X, y, rcond=None)
    res = float(np.sqrt(np.mean((X @ sol - y) ** 2)))
    b = float(sol[1])
    return RadiusEstimate(math.exp(-b) if b > -700 else math.inf, b, res, len(rows))


def _log(c):
    if isinstance(c, Fraction):
        return math.log(c.numerator) - math.log(c.denominator)
    return float(mpmath.log(c))


def ueda_unit_radius():
    """Radius of A = X + A^2 / (1 - A): the smaller root of X^2 - 6X + 1."""
    return 3 - 2 * math.sqrt(2)


def super_liouville_dseq(n):
    """d_k = 2^{-k^2}."""
    return [Fraction(1, 2 ** (k * k)) for k in range(1, n + 1)]
