"""
Diophantine pairs: delta_n = dist(np, Z) + dist(nq, Z), empirical exponent
fits, and Liouville certificates for algebraic coordinates.

Rational inputs are handled exactly.  Irrational inputs are stored as
fixed-point integers P = floor(p 2^B) with |p 2^B - P| <= 2, so n P mod 2^B
is within 2n units of n p 2^B; a distance smaller than that error is
reported as unresolved rather than as zero.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy
from sympy.parsing.sympy_parser import (convert_xor, parse_expr, rationalize,
                                        standard_transformations)

DEFAULT_BITS = 200
ALPHA_CAP = 2.5
MIN_RECORD_N = 16


def liouville(base=10, terms=4):
    """Truncation sum_{k=1}^{terms} base^{-k!} as an exact rational."""
    return sum(Fraction(1, base ** math.factorial(k)) for k in range(1, terms + 1))


_LOCALS = {"phi": sympy.GoldenRatio, "golden": sympy.GoldenRatio,
           "liouville": lambda b=10, t=4: sympy.Rational(*_frac_pair(liouville(int(b), int(t))))}


def _frac_pair(f):
    return f.numerator, f.denominator


def parse_real(expr):
    """A sympy real from a string such as '-2^(1/3)', '1/2' or 'liouville(2, 5)'."""
    if isinstance(expr, sympy.Basic):
        e = expr
    elif isinstance(expr, (int, Fraction)):
        e = sympy.Rational(*_frac_pair(Fraction(expr)))
    elif isinstance(expr, str):
        e = parse_expr(expr, local_dict=dict(_LOCALS),
                       transformations=standard_transformations + (convert_xor, rationalize))
    else:
        raise TypeError("cannot interpret %r as a real number" % (expr,))
    if not (e.is_real or e.is_real is None and abs(sympy.im(e.evalf())) < 1e-30):
        raise ValueError("%s is not real" % e)
    return e


class FixedReal:
    """A real number reduced mod 1: exact Fraction or B-bit fixed point."""

    def __init__(self, value, bits=DEFAULT_BITS):
        e = parse_real(value)
        self.expr = e
        self.bits = bits
        if e.is_Rational:
            f = Fraction(int(e.p), int(e.q))
            self.exact = f - math.floor(f)
            self.P = None
        else:
            self.exact = None
            with mpmath.workprec(bits + 64):
                v = mpmath.mpf(sympy.N(e, int((bits + 64) * 0.302) + 5))
                self.P = int(mpmath.floor(v * mpmath.mpf(2) ** bits)) % (1 << bits)

    @property
    def is_rational(self):
        return self.exact is not None

    def __float__(self):
        return float(self.exact) if self.is_rational else self.P / 2 ** self.bits

    def neg(self):
        r = FixedReal(0, self.bits)
        r.expr = -self.expr
        if self.is_rational:
            r.exact = (-self.exact) % 1
        else:
            r.exact, r.P = None, (-self.P) % (1 << self.bits)
        return r


def _dist_terms(x, n):
    """dist(n x, Z) as (log value or None for zero, uncertain flag, float value)."""
    if x.is_rational:
        f = (n * x.exact) % 1
        d = min(f, 1 - f)
        if d == 0:
            return Fraction(0), False
        return d, False
    mod = 1 << x.bits
    r = (n * x.P) % mod
    dn = min(r, mod - r)
    # error of n P relative to n x 2^B is at most 2n units
    return Fraction(dn, mod), dn <= 2 * n


def pair_distance(p, q, n, bits=DEFAULT_BITS):
    """dist(np, Z) + dist(nq, Z)."""
    if n < 1:
        raise ValueError("n must be positive")
    xp = p if isinstance(p, FixedReal) else FixedReal(p, bits)
    xq = q if isinstance(q, FixedReal) else FixedReal(q, bits)
    d1, _ = _dist_terms(xp, n)
    d2, _ = _dist_terms(xq, n)
    d = d1 + d2
    return d if xp.is_rational and xq.is_rational else float(d)


def elliptic_distance(alpha, beta):
    """min(|a|, |1 - a|) + min(|b|, |1 - b|) for a, b in [0, 1)."""
    for v in (alpha, beta):
        if not 0 <= v < 1:
            raise ValueError("arguments must be reduced mod 1")
    return min(abs(alpha), abs(1 - alpha)) + min(abs(beta), abs(1 - beta))


def bundle_distance_seq(p, q, n_max, bits=DEFAULT_BITS):
    """d_1 .. d_{n_max}: exact Fractions for rational pairs, mpf otherwise."""
    xp, xq = FixedReal(p, bits), FixedReal(q, bits)
    exact = xp.is_rational and xq.is_rational
    out = []
    with mpmath.workprec(bits):
        for n in range(1, n_max + 1):
            d = _dist_terms(xp, n)[0] + _dist_terms(xq, n)[0]
            out.append(d if exact else mpmath.mpf(d.numerator) / d.denominator)
    return out


def _log(fr):
    return math.log(fr.numerator) - math.log(fr.denominator)


@dataclass
class DiophantineReport:
    p: str
    q: str
    n_max: int
    per_n: list                 # record minima (n, delta_n)
    fitted_alpha: float
    fitted_A: float
    verdict: str
    witness: int = None
    certificate: dict = None
    certificate_holds: bool = None
    unresolved: list = field(default_factory=list)
    detail: str = ""

    def as_dict(self):
        return {"p": self.p, "q": self.q, "n_max": self.n_max,
                "per_n": [[n, float(d)] for n, d in self.per_n],
                "fitted_alpha": self.fitted_alpha, "fitted_A": self.fitted_A,
                "verdict": self.verdict, "witness": self.witness,
                "certificate": self.certificate, "certificate_holds": self.certificate_holds,
                "unresolved": self.unresolved[:20], "detail": self.detail}


def check_pair(p, q, n_max, bits=DEFAULT_BITS, alpha_cap=ALPHA_CAP, certificate=None):
    """Scan delta_n for n <= n_max and classify the pair.

    fail: some delta_n = 0 (witness is the first such n), or the record
    minima decay faster than n^{-alpha_cap}; inconclusive: a distance is
    below the fixed-point error; pass otherwise.  A certificate (A, alpha)
    on one coordinate is cross-checked against every delta_n.
    """
    if n_max < MIN_RECORD_N:
        raise ValueError("n_max must be at least %d" % MIN_RECORD_N)
    xp, xq = FixedReal(p, bits), FixedReal(q, bits)
    records = []
    best = None
    unresolved = []
    cert_ok = None if certificate is None else True
    if certificate is not None:
        cA, calpha = Fraction(certificate["A"]), certificate["alpha"]
    for n in range(1, n_max + 1):
        d1, u1 = _dist_terms(xp, n)
        d2, u2 = _dist_terms(xq, n)
        d = d1 + d2
        if u1 and u2:
            unresolved.append(n)
        if d == 0:
            return DiophantineReport(str(xp.expr), str(xq.expr), n_max, records + [(n, d)],
                                     math.inf, 0.0, "fail", n, certificate,
                                     False if certificate else None, unresolved,
                                     "delta_n vanishes at n = %d" % n)
        if cert_ok and d * n ** calpha < cA:
            cert_ok = False
        if best is None or d < best:
            best = d
            records.append((n, d))
    tail = [(n, d) for n, d in records if n >= MIN_RECORD_N]
    if tail:
        exps = [(-_log(d) / math.log(n), n) for n, d in tail]
        alpha, n_at = max(exps)
    else:
        alpha, n_at = 0.0, None
    alpha = max(alpha, 0.0)
    A = min(float(d) * n ** alpha for n, d in records) if records else 0.0
    xs, ys = str(xp.expr), str(xq.expr)
    if unresolved:
        verdict, witness = "inconclusive", None
        detail = "%d distances below the %d-bit error bound" % (len(unresolved), bits)
    elif alpha > alpha_cap:
        verdict, witness = "fail", n_at
        detail = "record minima decay like n^-%.3f at n = %d (cap %.2f): super-polynomial decay" % (
            alpha, n_at, alpha_cap)
    else:
        verdict, witness = "pass", None
        detail = "record exponent %.3f stays below cap %.2f" % (alpha, alpha_cap)
    return DiophantineReport(xs, ys, n_max, records, alpha, A, verdict, witness, certificate,
                             cert_ok, unresolved, detail)


def _exact_root_bracket(poly, lo, hi, width):
    """Bisect a sign change of poly on [lo, hi] down to the given width."""
    f = lambda x: poly.eval(x)
    flo = f(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def liouville_certificate(minpoly, root_interval):
    """Constants (A, alpha) with dist(n x, Z) >= A n^{-alpha} for the root x in the interval.

    If a/n lies in [lo, hi] then 1/n^d <= |f(a/n)| <= M |x - a/n| with M a
    bound for |f'| on the interval; otherwise |x - a/n| >= delta_0, the gap
    from x to the interval ends.  Hence A = min(delta_0, 1/M), alpha = d - 1.
    """
    t = sympy.Symbol("t")
    coeffs = [int(c) for c in minpoly]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    poly = sympy.Poly(coeffs, t)
    d = poly.degree()
    if d < 2:
        raise ValueError("degree %d: the root is rational" % d)
    if not poly.is_irreducible:
        raise ValueError("polynomial %s is reducible over Q" % poly.as_expr())
    lo, hi = (sympy.Rational(str(v)) if not isinstance(v, Fraction) else sympy.Rational(v.numerator, v.denominator)
              for v in root_interval)
    if lo >= hi:
        raise ValueError("empty interval")
    if poly.count_roots(lo, hi) != 1:
        raise ValueError("interval does not isolate exactly one real root")
    if poly.eval(lo) == 0 or poly.eval(hi) == 0:
        raise ValueError("root lies on the interval boundary")
    rlo, rhi = _exact_root_bracket(poly, lo, hi, (hi - lo) / 2 ** 40)
    delta0 = min(rlo - lo, hi - rhi)
    R = max(abs(lo), abs(hi))
    M = sum(k * abs(c) * R ** (k - 1) for k, c in zip(range(d, 0, -1), coeffs[:-1]))
    A = min(delta0, 1 / M)
    A = Fraction(int(A.p), int(A.q))
    return A, d - 1


def certificate_for(value, minpoly, radius=Fraction(1, 10)):
    """Certificate for a real value, isolating its root in value +- radius."""
    e = parse_real(value)
    v = Fraction(str(sympy.N(e, 30)))
    A, alpha = liouville_certificate(minpoly, (v - radius, v + radius))
    return {"A": A, "alpha": alpha, "source": "Liouville inequality for %s" % list(minpoly)}
