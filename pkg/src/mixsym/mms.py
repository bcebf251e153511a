"""The lattice of mixed modular symbols for a congruence group.

The space is presented on one generator per coset ("Manin generators",
realizing {g, gS}) and one generator per cusp class ("cusp generators",
realizing {g, gT} for g in the cusp's T-orbit), subject to

  (R1)  ManinGen(i) + ManinGen(i*S) = 0
  (R2)  ManinGen(i) + ManinGen(i*U) + ManinGen(i*U^2)
          = CuspGen(c(i)) + CuspGen(c(i*U)) + CuspGen(c(i*U^2))
  (R3)  sum over cusps of (e_c / d_Gamma) * CuspGen(c) = 0

and the quotient is taken torsion-free.  The rank of the result must equal
2*genus + 2*(cusps - 1); construction fails loudly otherwise, which turns the
completeness of this presentation into a per-level certificate.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import sl2
from .sl2 import (GroupSpec, MAT_ID, MAT_S, MAT_T, det, gcdex, minv, mmul,
                  mneg, mpow_t, stword_decompose)
from .zlattice import (QuotientLattice, hnf, identity_matrix, kernel_basis,
                       mat_mul, quotient_by_rows, snf, sublattice_index,
                       vec_mat)


class PresentationError(Exception):
    """The presented lattice does not have the predicted rank."""


class InvalidInputError(Exception):
    """Raised for inputs outside an operation's domain."""


@dataclass
class SymbolSpace:
    """The mixed-symbol lattice with its structural maps.

    Ambient generators are ordered Manin generators (one per coset) followed
    by cusp generators (one per cusp class).  ``quotient`` presents the
    torsion-free quotient by (R1)-(R3); ``classical`` presents the classical
    modular-symbol space on the coset generators alone (relations x + xS and
    x + xU + xU^2).  ``pi_basis`` and ``boundary_basis`` act on basis row
    vectors by right multiplication.
    """

    spec: GroupSpec
    cosets: "sl2.CosetTable"
    cusps: "sl2.CuspTable"
    quotient: QuotientLattice
    classical: QuotientLattice
    pi_basis: list
    boundary_basis: list
    genus: int

    @property
    def n_manin(self):
        return self.cosets.index

    @property
    def n_cusp(self):
        return self.cusps.count

    @property
    def rank(self):
        return self.quotient.rank

    def manin_gen(self, idx):
        """Basis coordinates of the Manin generator {rep, rep*S}."""
        return list(self.quotient.project[idx])

    def cusp_gen(self, c):
        """Basis coordinates of the cusp generator {g, gT} at cusp class c."""
        return list(self.quotient.project[self.n_manin + c])

    def cusp_sublattice(self):
        """Generating rows of the span of the cusp generators."""
        return [self.cusp_gen(c) for c in range(self.n_cusp)]


def _assemble_relations(cosets, cusps):
    n_manin = cosets.index
    n_cusp = cusps.count
    n = n_manin + n_cusp
    rows = []
    for i in range(n_manin):
        row = [0] * n
        row[i] += 1
        row[cosets.act(i, "S")[0]] += 1
        rows.append(row)
    for i in range(n_manin):
        row = [0] * n
        j = cosets.act(i, "U")[0]
        k = cosets.act(j, "U")[0]
        for m in (i, j, k):
            row[m] += 1
            row[n_manin + cusps.cusp_of[m]] -= 1
        rows.append(row)
    d = cusps.gcd_of_widths
    row = [0] * n
    for c, w in enumerate(cusps.widths):
        row[n_manin + c] = w // d
    rows.append(row)
    return rows


def _classical_relations(cosets):
    n = cosets.index
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] += 1
        row[cosets.act(i, "S")[0]] += 1
        rows.append(row)
    for i in range(n):
        row = [0] * n
        j = cosets.act(i, "U")[0]
        k = cosets.act(j, "U")[0]
        for m in (i, j, k):
            row[m] += 1
        rows.append(row)
    return rows


def build_space(spec):
    """Construct the mixed-symbol lattice for the given congruence group."""
    cosets = sl2.enumerate_cosets(spec)
    cusps = sl2.cusp_table(cosets)
    g = sl2.genus(cosets, cusps)
    n_manin, n_cusp = cosets.index, cusps.count

    quotient = quotient_by_rows(_assemble_relations(cosets, cusps),
                                n_manin + n_cusp)
    expected = 2 * g + 2 * (n_cusp - 1)
    if quotient.rank != expected:
        raise PresentationError(
            f"{spec.label()}: presented rank {quotient.rank}, expected {expected}")

    classical = quotient_by_rows(_classical_relations(cosets), n_manin)

    pi_ambient = [list(classical.project[i]) for i in range(n_manin)]
    pi_ambient += [[0] * classical.rank for _ in range(n_cusp)]
    pi_basis = mat_mul(quotient.lift, pi_ambient)

    boundary_ambient = []
    for i in range(n_manin):
        row = [0] * n_cusp
        row[cusps.cusp_of[cosets.act(i, "S")[0]]] += 1
        row[cusps.cusp_of[i]] -= 1
        boundary_ambient.append(row)
    boundary_ambient += [[0] * n_cusp for _ in range(n_cusp)]
    boundary_basis = mat_mul(quotient.lift, boundary_ambient)

    return SymbolSpace(spec, cosets, cusps, quotient, classical,
                       pi_basis, boundary_basis, g)


def _reduce_to_ambient(space, g, gprime):
    """Telescoped coordinates of {g, g'} on the ambient generators."""
    n = space.n_manin + space.n_cusp
    amb = [0] * n
    word, _ = stword_decompose(mmul(minv(g), gprime))
    prefix = g
    for tok in word:
        i = space.cosets.coset_of(prefix)[0]
        if tok[0] == "T":
            amb[space.n_manin + space.cusps.cusp_of[i]] += tok[1]
            prefix = mmul(prefix, mpow_t(tok[1]))
        else:
            amb[i] += 1
            prefix = mmul(prefix, MAT_S)
    return amb


def reduce_pair(space, g, gprime):
    """Basis coordinates of the symbol {g, g'} for unimodular g, g'."""
    if det(g) != 1 or det(gprime) != 1:
        raise InvalidInputError("arguments must be unimodular")
    return vec_mat(_reduce_to_ambient(space, g, gprime), space.quotient.project)


def _primitive_integral(m):
    """Scale a rational matrix by a positive rational to primitive integers."""
    entries = [Fraction(x) for x in m]
    mult = 1
    for x in entries:
        mult = mult * x.denominator // gcd(mult, x.denominator)
    ints = [int(x * mult) for x in entries]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _factor_upper(m):
    """Write an integer matrix with positive determinant as alpha * upper.

    Returns (alpha, (A, B, D)) with alpha unimodular and
    alpha^-1 * m = ((A, B), (0, D)), D > 0.
    """
    m11, m12, m21, m22 = m
    r, s, g = -m21, m11, gcd(m11, m21)
    r //= g
    s //= g
    p, q, _ = gcdex(s, -r)  # p*s - q*r = 1
    alpha_inv = (p, q, r, s)
    a, b, c, d = mmul(alpha_inv, m)
    assert c == 0
    if d < 0:
        alpha_inv = mneg(alpha_inv)
        a, b, d = -a, -b, -d
    return minv(alpha_inv), (a, b, d)


def reduce_pair_rational(space, m, mprime):
    """Rational basis coordinates of {m, m'} for rational matrices of positive determinant.

    Each argument is scaled to a primitive integer matrix and factored as
    (unimodular) * (upper triangular); the triangular parts contribute
    rational multiples of cusp generators and the unimodular parts reduce
    integrally.
    """
    for x in (m, mprime):
        a, b, c, d = (Fraction(t) for t in x)
        if a * d - b * c <= 0:
            raise InvalidInputError("matrices must have positive determinant")
    alpha, (_, b, d) = _factor_upper(_primitive_integral(m))
    alpha2, (_, b2, d2) = _factor_upper(_primitive_integral(mprime))
    out = [Fraction(x) for x in reduce_pair(space, alpha, alpha2)]
    if b:
        i = space.cosets.coset_of(alpha)[0]
        cg = space.cusp_gen(space.cusps.cusp_of[i])
        out = [x - Fraction(b, d) * y for x, y in zip(out, cg)]
    if b2:
        i = space.cosets.coset_of(alpha2)[0]
        cg = space.cusp_gen(space.cusps.cusp_of[i])
        out = [x + Fraction(b2, d2) * y for x, y in zip(out, cg)]
    return out


def boundary(space, x):
    """Degree-zero cusp divisor of an element in basis coordinates."""
    return vec_mat(x, space.boundary_basis)


def pi_classical(space, x):
    """Projection to the classical modular-symbol presentation."""
    return vec_mat(x, space.pi_basis)


def manin_image_rows(space):
    """Images of all Manin generators, the span of the coset-symbol map."""
    return [space.manin_gen(i) for i in range(space.n_manin)]


def manin_index(space):
    """Index of the span of the Manin generators in the full lattice."""
    if space.rank == 0:
        return 1
    return sublattice_index(identity_matrix(space.rank), manin_image_rows(space))


def expected_manin_index(space):
    """Predicted index of the coset-symbol span, from the structural criterion.

    The index of the span of the Manin generators is 1 exactly when either a
    degree-one U-invariant exists in the free module on the cosets (i.e. some
    coset is fixed by U) or the total width sum is coprime to 3; otherwise it
    is 3.  Proved for Gamma0(p^n) and Gamma1(p^n) with p >= 5 prime; for
    Gamma0 both conditions reduce to p = 1 mod 3, for Gamma1 neither ever
    holds.
    """
    if space.rank == 0:
        return 1
    has_u_fixed = any(space.cosets.act(i, "U")[0] == i
                      for i in range(space.n_manin))
    width_sum = sum(space.cusps.widths)
    return 1 if has_u_fixed or width_sum % 3 != 0 else 3


def homology_sublattice(space):
    """Generators of the embedded open-curve homology lattice.

    Schreier generators of Gamma over the coset action on {S, T} are fed
    through reduce_pair(1, gamma); the honest image lattice is returned
    without saturation.
    """
    rows = []
    for i in range(space.n_manin):
        for name in ("S", "T"):
            gamma = space.cosets.act(i, name)[1]
            row = reduce_pair(space, MAT_ID, gamma)
            if any(row):
                rows.append(row)
    return rows


def kernel_of_boundary(space):
    """Basis of ker(boundary) in basis coordinates (a saturated sublattice)."""
    return kernel_basis(space.boundary_basis)


def homology_index_in_kernel(space):
    """Index of the homology sublattice inside ker(boundary)."""
    return sublattice_index(kernel_of_boundary(space), homology_sublattice(space))


def expected_homology_index(space):
    """(1/d_Gamma) * product of the cusp widths."""
    out = 1
    for w in space.cusps.widths:
        out *= w
    return out // space.cusps.gcd_of_widths


def kernel_pi_invariants(space):
    """Structure (free_rank, torsion) of ker(pi); free since the lattice is."""
    rows = kernel_basis(space.pi_basis)
    return len(rows), []


def cusp_cokernel_invariants(space):
    """Invariants of coker(Z -> Z[cusps], 1 -> (1/d) * sum of e_c * [c]).

    Returned as (free_rank, torsion list), comparable with the kernel of pi.
    """
    d = space.cusps.gcd_of_widths
    row = [w // d for w in space.cusps.widths]
    dec = snf([row])
    invs = dec.invariants
    free_rank = space.n_cusp - len(invs)
    return free_rank, [x for x in invs if x != 1]


def space_to_dict(space):
    """JSON-ready document; every integer is a decimal string."""
    def srow(row):
        return [str(x) for x in row]

    cusp_records = []
    for p, w in zip(space.cusps.points, space.cusps.widths):
        rep = "oo" if p is None else (str(p.numerator) if p.denominator == 1
                                      else f"{p.numerator}/{p.denominator}")
        cusp_records.append({"rep": rep, "width": str(w)})
    return {
        "family": space.spec.family,
        "level": str(space.spec.level),
        "cosets": [srow(m) for m in space.cosets.reps],
        "cusps": cusp_records,
        "basis_rank": str(space.rank),
        "project": [srow(r) for r in space.quotient.project],
        "lift": [srow(r) for r in space.quotient.lift],
        "pi": [srow(r) for r in space.pi_basis],
        "boundary": [srow(r) for r in space.boundary_basis],
        "torsion": [str(x) for x in space.quotient.torsion],
    }


def space_from_dict(doc):
    """Rebuild a space from its serialized document and verify consistency."""
    spec = GroupSpec(doc["family"], int(doc["level"]))
    space = build_space(spec)
    if space_to_dict(space) != doc:
        raise InvalidInputError("document does not match a freshly built space")
    return space
