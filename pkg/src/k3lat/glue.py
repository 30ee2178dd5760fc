"""
Overlattices from glue maps between discriminant groups.

Given even lattices L1, L2 and an isomorphism phi : G(L1) -> G(L2) with
q1 + q2 o phi = 0, the glued lattice is spanned by L1 + L2 and the lifted
pairs (g, phi(g)).
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from . import exact_linalg as xl
from .isometry import Isometry, apply_action, discriminant_action, is_isometry
from .lattice import IntLattice, direct_sum, discriminant_group


@dataclass(frozen=True)
class GlueSpec:
    """phi as an integer matrix from G(L1) to G(L2) generator coordinates."""

    L1: IntLattice
    L2: IntLattice
    phi: tuple

    @property
    def D1(self):
        return discriminant_group(self.L1)

    @property
    def D2(self):
        return discriminant_group(self.L2)

    def image(self, c, D2=None):
        D2 = D2 or self.D2
        return apply_action(self.phi, c, D2.invariant_factors)


@dataclass
class GlueReport:
    ok: bool
    bijective: bool
    q_condition: bool
    checked: int
    witness: tuple = None
    detail: str = ""

    def as_dict(self):
        return {"ok": self.ok, "bijective": self.bijective, "q_condition": self.q_condition,
                "checked": self.checked, "witness": list(self.witness) if self.witness else None,
                "detail": self.detail}


def glue_spec_from_pairs(L1, L2, pairs, max_order=10 ** 5):
    """Build phi from dual-vector pairs (x1, x2) meaning phi([x1]) = [x2].

    The classes of the x1 must generate G(L1); phi is extended additively
    and a clash of images is reported as an error.
    """
    D1, D2 = discriminant_group(L1), discriminant_group(L2)
    if D1.order > max_order:
        raise ValueError("glue group too large for exhaustive extension")
    gens = [(D1.coords(x1), D2.coords(x2)) for x1, x2 in pairs]
    zero1, zero2 = (0,) * D1.ngens, (0,) * D2.ngens
    table = {zero1: zero2}
    queue = deque([zero1])
    while queue:
        c = queue.popleft()
        for a, b in gens:
            n1, n2 = D1.add(c, a), D2.add(table[c], b)
            if n1 in table:
                if table[n1] != n2:
                    raise ValueError("pairs do not define a homomorphism (clash at %s)" % (n1,))
                continue
            table[n1] = n2
            queue.append(n1)
    if len(table) != D1.order:
        raise ValueError("given classes do not generate G(L1)")
    cols = []
    for i in range(D1.ngens):
        e = tuple(1 if j == i else 0 for j in range(D1.ngens))
        cols.append(table[e])
    phi = tuple(tuple(cols[j][i] for j in range(D1.ngens)) for i in range(D2.ngens))
    return GlueSpec(L1, L2, phi)


def validate_glue(spec):
    """Exhaustive check of bijectivity and q1(x) + q2(phi x) = 0 mod 1."""
    D1, D2 = spec.D1, spec.D2
    if len(spec.phi) != D2.ngens or any(len(r) != D1.ngens for r in spec.phi):
        return GlueReport(False, False, False, 0, detail="phi has the wrong shape")
    # phi must be well defined on Z/d_i
    for i, d in enumerate(D1.invariant_factors):
        e = tuple(d if j == i else 0 for j in range(D1.ngens))
        if any(spec.image(e, D2)):
            return GlueReport(False, False, False, 0, witness=e,
                              detail="phi is not well defined on generator %d" % i)
    images = set()
    witness = None
    for c in D1.elements():
        img = spec.image(c, D2)
        images.add(img)
        if witness is None and (D1.q(c) + D2.q(img)) % 1 != 0:
            witness = c
    bij = D1.order == D2.order and len(images) == D1.order
    qok = witness is None
    detail = "" if qok else "q1 + q2(phi) = %s at %s" % (
        (D1.q(witness) + D2.q(spec.image(witness, D2))) % 1, witness)
    if not bij:
        detail = (detail + "; " if detail else "") + "phi is not bijective"
    return GlueReport(bij and qok, bij, qok, D1.order, witness, detail)


def glue_with_basis(spec, name="glued"):
    """Glued lattice and its basis rows in the coordinates of L1 + L2."""
    report = validate_glue(spec)
    if not report.ok:
        raise ValueError("invalid glue spec: " + report.detail)
    D1, D2 = spec.D1, spec.D2
    r1, r2 = spec.L1.rank, spec.L2.rank
    gens = [list(r) for r in xl.identity(r1 + r2)]
    for i in range(D1.ngens):
        e = tuple(1 if j == i else 0 for j in range(D1.ngens))
        gens.append(list(D1.lift(e)) + list(D2.lift(spec.image(e, D2))))
    B = xl.rational_hnf_basis(gens)
    ambient = direct_sum("sum", spec.L1, spec.L2)
    gram = xl.mat_mul(xl.mat_mul(B, ambient.G), xl.transpose(B))
    return IntLattice(name, gram), B


def glue(spec, name="glued"):
    return glue_with_basis(spec, name)[0]


def extend_direct_sum(L, M, name=None):
    return direct_sum(name or "%s+%s" % (L.name, M.name), L, M)


def glue_index(spec):
    """Index of L1 + L2 inside the glued lattice (from the inclusion matrix)."""
    _, B = glue_with_basis(spec)
    # rows of C are the standard basis of L1 + L2 in glued coordinates
    C = xl.inverse(B)
    _, D, _ = xl.smith_normal_form(C)
    return prod(D[i][i] for i in range(len(D)))


def compatibility_witness(spec, f1, f2):
    """First class x with phi(f1 x) != f2(phi x), or None."""
    D1, D2 = spec.D1, spec.D2
    A1 = discriminant_action(spec.L1, f1, D1)
    A2 = discriminant_action(spec.L2, f2, D2)
    for c in D1.elements():
        lhs = spec.image(apply_action(A1, c, D1.invariant_factors), D2)
        rhs = apply_action(A2, spec.image(c, D2), D2.invariant_factors)
        if lhs != rhs:
            return c
    return None


def lift_isometry(spec, f1, f2):
    """Isometry of the glued lattice induced by compatible f1, f2."""
    M1 = f1.M if isinstance(f1, Isometry) else f1
    M2 = f2.M if isinstance(f2, Isometry) else f2
    if not is_isometry(spec.L1, M1) or not is_isometry(spec.L2, M2):
        raise ValueError("f1 and f2 must be isometries of L1 and L2")
    w = compatibility_witness(spec, M1, M2)
    if w is not None:
        raise ValueError("f1, f2 are not compatible with phi at class %s" % (w,))
    L, B = glue_with_basis(spec)
    F = xl.block_diag(M1, M2)
    Bt = xl.transpose(B)
    M = xl.mat_mul(xl.mat_mul(xl.inverse(Bt), F), Bt)
    M = [[Fraction(x) for x in row] for row in M]
    if any(x.denominator != 1 for row in M for x in row):
        raise ValueError("lifted map is not integral on the glued lattice")
    return Isometry(L, xl.as_int_matrix(M))


def kummer_glue_spec():
    """phi(E_ij) = V_ij from G(K) to G(L) for the torus image lattice L."""
    from .catalog import PAIRS, kummer_E, kummer_lattice, torus_V, torus_image_lattice
    K, B = kummer_lattice()
    T, _ = torus_image_lattice()
    return glue_spec_from_pairs(K, T, [(kummer_E(i, j, B), torus_V(i, j)) for i, j in PAIRS])


def mcmullen_glue_spec():
    """phi(u_i) = v_i from G(L_1) to G(L_2)."""
    from .catalog import mcmullen_L1, mcmullen_L2, mcmullen_u, mcmullen_v
    return glue_spec_from_pairs(mcmullen_L1(), mcmullen_L2(),
                                list(zip(mcmullen_u(), mcmullen_v())))
