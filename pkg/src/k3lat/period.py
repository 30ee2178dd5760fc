"""
Marked periods on Pi_{3,19}: period vectors from gluing parameters, exact
pairings, realizability predicates, the type II monodromy, Picard lattices
and the numeric tube-integral identity.

Basis order (see catalog.K3_LABELS):
    A_ab, B_g | A_bg, B_a | A_ga, B_b | C+ block | C- block
so the period coefficients a_ab, b_g, a_bg (= x), b_a (= tau),
a_ga (= y), b_b (= 1) sit in that order, followed by c+ and c-.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from scipy import integrate

from . import exact_linalg as xl
from .catalog import K3_LABELS, k3_lattice
from .isometry import Isometry
from .lattice import sublattice
from .symbolic import SymbolicComplex, example_algebra, gaussian_algebra


@lru_cache(maxsize=None)
def _k3_gram():
    return k3_lattice()[0].gram


COEFF_NAMES = {"A_ab": "a_ab", "B_g": "b_g", "A_bg": "a_bg", "B_a": "b_a",
               "A_ga": "a_ga", "B_b": "b_b"}


@dataclass(frozen=True)
class PeriodVector:
    """22 exact coefficients over the marked basis."""

    algebra: object
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 22:
            raise ValueError("a period vector has 22 coefficients")
        object.__setattr__(self, "coeffs", tuple(self.algebra.coerce(c) for c in self.coeffs))

    def __getitem__(self, label):
        return self.coeffs[K3_LABELS.index(label)]

    def replace(self, label, value):
        c = list(self.coeffs)
        c[K3_LABELS.index(label)] = self.algebra.coerce(value)
        return PeriodVector(self.algebra, tuple(c))

    def scaled(self, s):
        return PeriodVector(self.algebra, tuple(c * s for c in self.coeffs))

    def conj(self):
        return PeriodVector(self.algebra, tuple(c.conj() for c in self.coeffs))

    def evaluate(self, values=None):
        return [c.evaluate(values) for c in self.coeffs]

    def as_dict(self):
        return {lab: c for lab, c in zip(K3_LABELS, self.coeffs)}


def basis_period(algebra, label, coeff=1):
    c = [algebra.const(0)] * 22
    c[K3_LABELS.index(label)] = algebra.coerce(coeff)
    return PeriodVector(algebra, tuple(c))


def period_pairing(s, t, conjugate_second=False):
    """s^T G t over the symbol algebra, G the Pi_{3,19} Gram."""
    if conjugate_second:
        t = t.conj()
    G = _k3_gram()
    A = s.algebra
    total = A.const(0)
    for i in range(22):
        if s.coeffs[i].is_zero():
            continue
        row = A.const(0)
        for j in range(22):
            if G[i][j] and not t.coeffs[j].is_zero():
                row = row + t.coeffs[j] * G[i][j]
        total = total + s.coeffs[i] * row
    return total


@dataclass(frozen=True)
class GluingParams:
    """Gluing data: tau, monodromy exponents, segment integrals, free x, Lambda."""

    algebra: object
    tau: object
    a_alpha: object
    a_beta: object
    c_plus: tuple = None
    c_minus: tuple = None
    gamma9: object = 0
    x: object = 0
    Lambda: Fraction = Fraction(0)

    def __post_init__(self):
        A = self.algebra
        zero8 = (0,) * 8
        for name in ("tau", "a_alpha", "a_beta", "gamma9", "x"):
            object.__setattr__(self, name, A.coerce(getattr(self, name)))
        for name in ("c_plus", "c_minus"):
            v = getattr(self, name)
            v = zero8 if v is None else tuple(v)
            if len(v) != 8:
                raise ValueError("%s needs 8 values" % name)
            object.__setattr__(self, name, tuple(A.coerce(c) for c in v))
        if not im_positive(self.tau):
            raise ValueError("tau must lie in the upper half-plane")

    @property
    def mu(self):
        return self.a_beta - self.tau * self.a_alpha


def im_positive(z):
    """Im z > 0, exactly when z lies in Q(i), numerically otherwise."""
    try:
        return z.imag_part().rational() > 0
    except (ValueError, KeyError):
        return z.evaluate().imag > 0


def solve_y(partial):
    """The y = a_ga making (sigma.sigma) = 0 (the form is affine in y)."""
    A = partial.algebra
    p0 = partial.replace("A_ga", 0)
    f0 = period_pairing(p0, p0)
    p1 = partial.replace("A_ga", 1)
    slope = period_pairing(p1, p1) - f0
    if slope.is_zero():
        raise ValueError("(sigma.sigma) does not depend on y")
    return -f0 / slope


def period_from_params(p):
    """Marked period of the glued surface, normalized with b_b = 1."""
    A = p.algebra
    mu = p.mu
    head = [2 * mu + p.gamma9, mu, p.x, p.tau, A.const(0), A.const(1)]
    partial = PeriodVector(A, tuple(head) + p.c_plus + p.c_minus)
    return partial.replace("A_ga", solve_y(partial))


def v_vector(algebra, p, q):
    """v_(p,q) = A_ab + p A_bg - q A_ga."""
    v = basis_period(algebra, "A_ab")
    v = v.replace("A_bg", p)
    return v.replace("A_ga", -algebra.coerce(q))


def example_params(algebra=None):
    """tau = i, mu = -2^(1/3), gamma9 = 0, vanishing c, free x."""
    A = algebra or example_algebra()
    return GluingParams(A, tau=A.gen("i"), a_alpha=0, a_beta=A.gen("mu"), x=A.gen("x"))


def example_period(algebra=None):
    return period_from_params(example_params(algebra))


@dataclass
class RealizabilityVerdict:
    passed: bool
    failed: str = None
    orthogonal: bool = True
    pairing: object = None
    pairing_value: float = None
    Lambda: Fraction = Fraction(0)
    note: str = ""

    def as_dict(self):
        return {"passed": self.passed, "failed": self.failed, "orthogonal": self.orthogonal,
                "pairing": self.pairing, "pairing_value": self.pairing_value,
                "Lambda": self.Lambda, "note": self.note}


LAMBDA_NOTE = "Lambda is a user-supplied volume defect (default 0)"


def realizability_check(xi, p, q, Lambda=0, values=None):
    """Conditions (a) b_b != 0, (b) b_a in H, (c) (xi.xi-bar) > Lambda.

    xi must be orthogonal to v_(p,q); otherwise the verdict reports a
    precondition violation.
    """
    A = xi.algebra
    Lambda = Fraction(Lambda) if not isinstance(Lambda, float) else Lambda
    v = v_vector(A, p, q)
    if not period_pairing(xi, v).is_zero():
        return RealizabilityVerdict(False, "precondition", False, Lambda=Lambda,
                                    note="xi is not orthogonal to v_(p,q)")
    bb = xi["B_b"]
    if bb.is_zero():
        return RealizabilityVerdict(False, "a", Lambda=Lambda, note=LAMBDA_NOTE)
    xi = xi.scaled(bb.inverse())
    if not im_positive(xi["B_a"]):
        return RealizabilityVerdict(False, "b", Lambda=Lambda, note=LAMBDA_NOTE)
    pr = period_pairing(xi, xi, conjugate_second=True)
    val = pr.evaluate(values)
    ok = val.real > Lambda
    return RealizabilityVerdict(ok, None if ok else "c", True, pr, val.real, Lambda, LAMBDA_NOTE)


def im_x_threshold(xi, Lambda=0, symbol="x"):
    """Solve (xi.xi-bar) > Lambda for Im x.

    The pairing is c0 + k x + k' xbar with k, k' in the number field; it
    depends on x through Im x alone when k + k' = 0, and then reads
    c0 + 2ik Im x.  Returns t with the condition equivalent to Im x > t.
    """
    A = xi.algebra
    pr = period_pairing(xi, xi, conjugate_second=True)
    kx = A.names.index(symbol)
    kb = A.names.index(symbol + "bar")
    parts = {kx: A.const(0), kb: A.const(0), None: A.const(0)}
    for m, c in pr.terms.items():
        key = kx if m[kx] else (kb if m[kb] else None)
        stripped = tuple(0 if j == key else e for j, e in enumerate(m))
        parts[key] = parts[key] + A.element({stripped: c})
    if not (parts[kx] + parts[kb]).is_zero():
        raise ValueError("pairing depends on Re %s" % symbol)
    slope = (2 * A.gen("i") * parts[kx]).evaluate().real
    if slope <= 0:
        raise ValueError("pairing does not increase with Im %s" % symbol)
    return (float(Lambda) - parts[None].evaluate().real) / slope


def monodromy_type_II():
    """B_a -> B_a + A_ga, B_b -> B_b - A_bg, identity on the other 20 classes.

    The sign on A_bg is the one that makes the map an isometry; with
    B_b -> B_b + A_bg one gets (B_a'.B_b') = 2.
    """
    L, _ = k3_lattice()
    M = xl.identity(22)
    ia, ib = K3_LABELS.index("B_a"), K3_LABELS.index("B_b")
    M[K3_LABELS.index("A_ga")][ia] = 1
    M[K3_LABELS.index("A_bg")][ib] = -1
    return Isometry(L, M)


def picard_functionals(sigma):
    """Rational matrix: one row per monomial, x -> coefficient in (x.sigma)."""
    G = _k3_gram()
    A = sigma.algebra
    cols = []
    for k in range(22):
        val = A.const(0)
        for j in range(22):
            if G[k][j]:
                val = val + sigma.coeffs[j] * G[k][j]
        cols.append(val)
    monos = sorted({m for c in cols for m in c.terms})
    rows = [[c.terms.get(m, Fraction(0)) for c in cols] for m in monos]
    return rows, [A.label(m) for m in monos]


def picard_lattice(sigma):
    """Integer classes orthogonal to sigma, with the induced Gram."""
    rows, _ = picard_functionals(sigma)
    basis = xl.integer_kernel(rows, ncols=22)
    if not basis:
        return None, 0, []
    L = sublattice("Pic", k3_lattice()[0], basis)
    return L, len(basis), basis


def in_span(basis, v):
    """Is the integer vector v in the Z-span of the (independent) rows?"""
    if not basis:
        return not any(v)
    sol = xl.solve(xl.transpose(basis), list(v))
    return sol is not None and all(Fraction(c).denominator == 1 for c in sol)


def smoothstep_cutoff(r0, r1):
    """rho = 1 - smoothstep on [r0, r1]; returns (rho, rho')."""
    w = r1 - r0

    def rho(r):
        u = min(max((r - r0) / w, 0.0), 1.0)
        return 1.0 - u * u * (3 - 2 * u)

    def drho(r):
        u = (r - r0) / w
        if u <= 0 or u >= 1:
            return 0.0
        return -6 * u * (1 - u) / w

    return rho, drho


def tube_integral_check(a, R_plus, R_minus, quad_tol=1e-9, r0=None, r1=None):
    """Quadrature of int_0^1 dtheta int_{1/R-}^{R+} (1/r + 2 pi i a rho'(r)) dr."""
    if R_plus <= 1 or R_minus <= 1:
        raise ValueError("R+ and R- must exceed 1")
    lo, hi = 1.0 / R_minus, float(R_plus)
    r0 = lo + (hi - lo) / 3 if r0 is None else r0
    r1 = lo + 2 * (hi - lo) / 3 if r1 is None else r1
    if not lo < r0 < r1 < hi:
        raise ValueError("cutoff interval must lie inside (1/R-, R+)")
    _, drho = smoothstep_cutoff(r0, r1)

    def inner(part):
        f = (lambda r: 1.0 / r) if part == "re" else (lambda r: 2 * math.pi * a * drho(r))
        val, err = integrate.quad(f, lo, hi, points=[r0, r1], epsabs=quad_tol * 1e-2,
                                  epsrel=quad_tol * 1e-2, limit=200)
        if not math.isfinite(val) or err > quad_tol:
            raise RuntimeError("quadrature did not converge")
        return val

    re_in, im_in = inner("re"), inner("im")
    # the integrand does not depend on theta
    re, _ = integrate.quad(lambda th: re_in, 0.0, 1.0)
    im, _ = integrate.quad(lambda th: im_in, 0.0, 1.0)
    return complex(re, im)


def tube_closed_form(a, R_plus, R_minus):
    return complex(math.log(R_plus * R_minus), -2 * math.pi * a)


def volume_log_formula(r_plus, r_minus, eta_norm):
    if r_plus <= 0 or r_minus <= 0:
        raise ValueError("radii must be positive")
    return 4 * math.pi * eta_norm * math.log(r_plus * r_minus)


def blowup_tangent_cohomology(N):
    """(h^0, h^1, h^2) of T_S for P^2 blown up at N >= 4 general points."""
    if N < 4:
        raise ValueError("the formula needs N >= 4")
    return 0, 2 * N - 8, 0


def random_params(rng, algebra=None, bound=20):
    """Random Q(i)-valued gluing data for property checks."""
    A = algebra or gaussian_algebra()
    i = A.gen("i")

    def q():
        return Fraction(rng.randint(-bound * 10, bound * 10), rng.randint(1, 10))

    def z():
        return A.const(q()) + A.const(q()) * i

    tau = A.const(q()) + A.const(Fraction(rng.randint(1, bound * 10), rng.randint(1, 10))) * i
    return GluingParams(A, tau=tau, a_alpha=q(), a_beta=q(),
                        c_plus=[z() for _ in range(8)], c_minus=[z() for _ in range(8)],
                        gamma9=z(), x=z())
