"""The antisymmetric duality pairing on the dual of the mixed-symbol lattice.

For functionals phi, psi on the symbol lattice the pairing is

  <phi, psi> = (1/6) * sum over g in Gamma\\SL2(Z) of
      phi({gS,g})*psi({gTS,gT}) - phi({gTS,gT})*psi({gS,g})
      - 4*phi({g,gT})*psi({g,gS}) + 4*phi({g,gS})*psi({g,gT}).

Functionals are row vectors in the dual basis (phi(x) = sum x_i*phi_i), and
the pairing is realized by a rank x rank rational Gram matrix P with
<phi, psi> = phi * P * psi^T.  The sum runs over the projective cosets of
the stored table: every symbol is invariant under sign changes of its
matrices, and the conjectural determinant value (1/d)*prod(e_c) is attained
exactly in this normalization on all tested levels, including those where
-Id is missing from the group.

The module also realizes the closed form for the induced map G from the
dual lattice back into the symbol lattice: for phi vanishing on the span of
the cusp generators, G(phi) is the weighted cycle

  G(phi) = sum over g of (1/6)*lambda_{g tau}*({gS,g} - {g tau^2 S, g tau^2})
           - (2/3)*lambda_g*{g,gT},      lambda_g = phi({gS, g}),

with tau = S*T, and the coefficients (lambda_g) satisfy the cycle conditions
lambda_g + lambda_{gS} = 0 and lambda_g + lambda_{g tau} + lambda_{g tau^2} = 0.
G inverts the intersection form (x, y) -> sum of lambda_g * mu_g, which is
also provided for reporting.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .sl2 import MAT_S, MAT_T, MAT_TAU, mmul
from .mms import InvalidInputError, reduce_pair
from .zlattice import (det_rational, kernel_basis, lcm_list, mat_mul,
                       mat_scale, mat_transpose, snf, vec_mat)


@dataclass
class PairingMatrix:
    """Gram matrix of the duality pairing on the dual basis.

    ``mat`` has Fraction entries with denominators dividing 6; ``six_mat``
    is the integer matrix 6 * mat.
    """

    mat: list
    six_mat: list

    def value(self, phi, psi):
        """<phi, psi> for functionals given as rows in the dual basis."""
        return sum(x * y for x, y in zip(vec_mat(phi, self.mat), psi))

    def is_antisymmetric(self):
        return self.mat == mat_scale(-1, mat_transpose(self.mat))

    def six_times_integral(self):
        return all(Fraction(x).denominator == 1
                   for row in self.six_mat for x in row)


def _corner_symbols(space, i):
    """The four symbol rows ({gS,g}, {gTS,gT}, {g,gT}, {g,gS}) at coset i."""
    g = space.cosets.reps[i]
    gt = mmul(g, MAT_T)
    a = reduce_pair(space, mmul(g, MAT_S), g)
    b = reduce_pair(space, mmul(gt, MAT_S), gt)
    c = reduce_pair(space, g, gt)
    d = reduce_pair(space, g, mmul(g, MAT_S))
    return a, b, c, d


def _outer(x, y):
    return [[xi * yj for yj in y] for xi in x]


def pairing_matrix(space):
    """Gram matrix of the duality pairing for the given space."""
    r = space.rank
    six = [[0] * r for _ in range(r)]
    for i in range(space.n_manin):
        a, b, c, d = _corner_symbols(space, i)
        for term, sgn in ((_outer(a, b), 1), (_outer(b, a), -1),
                          (_outer(c, d), -4), (_outer(d, c), 4)):
            for u in range(r):
                for v in range(r):
                    six[u][v] += sgn * term[u][v]
    mat = [[Fraction(x, 6) for x in row] for row in six]
    return PairingMatrix(mat=mat, six_mat=six)


def expected_abs_det(space):
    """(1/d_Gamma) * product of the cusp widths, the conjectural |det|."""
    out = Fraction(1, space.cusps.gcd_of_widths)
    for w in space.cusps.widths:
        out *= w
    return out


def fractional_invariants(pairing):
    """Invariant factors of the Gram matrix as positive rationals."""
    if not pairing.mat:
        return []
    d = lcm_list(Fraction(x).denominator for row in pairing.mat for x in row)
    scaled = [[int(x * d) for x in row] for row in pairing.mat]
    return [Fraction(abs(s), d) for s in snf(scaled).invariants]


def _prime_support(n):
    out = set()
    n = abs(n)
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.add(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.add(n)
    return out


def is_perfect_over(pairing, inverted):
    """Whether the pairing is unimodular after inverting the given integer.

    True when every invariant factor becomes a unit in Z[1/inverted], i.e.
    when all their numerators and denominators only involve primes dividing
    ``inverted``.
    """
    allowed = _prime_support(inverted)
    for f in fractional_invariants(pairing):
        if f == 0:
            return False
        if not _prime_support(f.numerator) <= allowed:
            return False
        if not _prime_support(f.denominator) <= allowed:
            return False
    return True


def abs_pfaffian(det):
    """|Pfaffian| from the determinant of an antisymmetric matrix, or None.

    The determinant of an antisymmetric matrix of even rank is the square of
    its Pfaffian, so |Pf| is the exact rational square root when one exists.
    """
    d = abs(Fraction(det))
    rn, rd = isqrt(d.numerator), isqrt(d.denominator)
    if rn * rn == d.numerator and rd * rd == d.denominator:
        return Fraction(rn, rd)
    return None


def pairing_kernel(pairing):
    """Basis of the rational radical {phi : phi * P = 0} of the pairing."""
    if not pairing.mat:
        return []
    return kernel_basis(pairing.six_mat)


def perfectness_report(space, pairing=None):
    """Structural facts about the pairing, for reporting and testing."""
    p = pairing if pairing is not None else pairing_matrix(space)
    det = det_rational(p.mat)
    inverted = 2 * lcm_list(space.cusps.widths) if space.rank else 2
    return {
        "rank": space.rank,
        "antisymmetric": p.is_antisymmetric(),
        "six_times_integral": p.six_times_integral(),
        "det": det,
        "abs_det": abs(det),
        "abs_pfaffian": abs_pfaffian(det),
        "expected_abs_det": expected_abs_det(space) if space.rank else Fraction(1),
        "invariants": fractional_invariants(p),
        "inverted": inverted,
        "perfect_after_inverting": is_perfect_over(p, inverted),
        "nondegenerate": det != 0 or space.rank == 0,
    }


def conj_anti_invariance(space, pairing, conj_op):
    """Check <phi o c, psi> = -<phi, psi o c> as a matrix identity.

    Precomposition with the conjugation matrix C sends the functional phi to
    phi * C^T, so the identity reads C^T * P = -P * C.
    """
    ct = mat_transpose(conj_op.normalized())
    lhs = mat_mul(ct, pairing.mat)
    rhs = mat_scale(-1, mat_mul(pairing.mat, conj_op.normalized()))
    return lhs == rhs


def adjointness_check(space, pairing, op, w_op):
    """Check that the pairing swaps op with its Atkin-Lehner conjugate.

    On functionals the operator with element-side matrix M acts by
    phi -> phi * M^T, so <M phi, psi> = <phi, (W M W^-1) psi> for all phi,
    psi amounts to M^T * P = P * (W * M * W).
    """
    m = op.normalized()
    w = w_op.normalized()
    lhs = mat_mul(mat_transpose(m), pairing.mat)
    rhs = mat_mul(pairing.mat, mat_mul(w, mat_mul(m, w)))
    return lhs == rhs


def G_map(pairing, phi):
    """Coordinates in the symbol basis of G(phi), defined by psi(G(phi)) = <phi, psi>."""
    return vec_mat(phi, pairing.mat)


def dual_cuspless_basis(space):
    """Functionals (rows) vanishing on the span of the cusp generators.

    These are the duals of the relative-homology block, the domain of the
    closed-form expression for G.
    """
    if space.rank == 0:
        return []
    return kernel_basis(mat_transpose(space.cusp_sublattice()))


def lambda_from_dual(space, phi):
    """Cycle coefficients lambda_i = phi({rep_i * S, rep_i}) of a functional.

    The functional must vanish on the cusp generators; the resulting
    coefficients are checked against both cycle conditions.
    """
    for c in range(space.n_cusp):
        if sum(x * y for x, y in zip(space.cusp_gen(c), phi)) != 0:
            raise InvalidInputError("functional must vanish on cusp generators")
    lam = []
    for i in range(space.n_manin):
        row = reduce_pair(space, mmul(space.cosets.reps[i], MAT_S),
                          space.cosets.reps[i])
        lam.append(sum(x * y for x, y in zip(row, phi)))
    _check_cycle_conditions(space, lam)
    return lam


def _tau_action(space, i):
    return space.cosets.coset_of(mmul(space.cosets.reps[i], MAT_TAU))[0]


def _check_cycle_conditions(space, lam):
    for i in range(space.n_manin):
        j = space.cosets.act(i, "S")[0]
        if lam[i] + lam[j] != 0:
            raise InvalidInputError("cycle condition lambda_g + lambda_gS = 0 fails")
        t1 = _tau_action(space, i)
        t2 = _tau_action(space, t1)
        if lam[i] + lam[t1] + lam[t2] != 0:
            raise InvalidInputError(
                "cycle condition lambda_g + lambda_gtau + lambda_gtau2 = 0 fails")


def lambda_to_mms(space, lam):
    """The cycle with coefficients (lambda_i) as an element of the symbol lattice.

    Realizes sum over cosets of (1/6)*lambda_{g tau}*({gS,g} - {gtau^2 S, gtau^2})
    - (2/3)*lambda_g*{g,gT}; the input must satisfy both cycle conditions.
    """
    _check_cycle_conditions(space, lam)
    out = [Fraction(0)] * space.rank
    for i in range(space.n_manin):
        g = space.cosets.reps[i]
        t1 = _tau_action(space, i)
        t2 = _tau_action(space, t1)
        g2 = space.cosets.reps[t2]
        row_a = reduce_pair(space, mmul(g, MAT_S), g)
        row_b = reduce_pair(space, mmul(g2, MAT_S), g2)
        cg = space.cusp_gen(space.cusps.cusp_of[i])
        ca = Fraction(lam[t1], 6)
        cc = Fraction(2 * lam[i], 3)
        out = [x + ca * (a - b) - cc * c
               for x, a, b, c in zip(out, row_a, row_b, cg)]
    return out


def verify_G_identity(space, pairing=None):
    """Check G(phi) = cycle(lambda(phi)) on the cusp-vanishing dual block.

    Returns the number of basis functionals checked; raises on any mismatch.
    """
    p = pairing if pairing is not None else pairing_matrix(space)
    basis = dual_cuspless_basis(space)
    for phi in basis:
        lam = lambda_from_dual(space, phi)
        direct = [Fraction(x) for x in G_map(p, phi)]
        closed = lambda_to_mms(space, lam)
        if direct != closed:
            raise InvalidInputError("duality map does not match its closed form")
    return len(basis)


def intersection_value(lam, mu):
    """The intersection form sum over cosets of lambda_g * mu_g."""
    if len(lam) != len(mu):
        raise InvalidInputError("coefficient lists must have equal length")
    return sum(x * y for x, y in zip(lam, mu))
