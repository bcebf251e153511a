"""Hecke, diamond, Atkin-Lehner, and conjugation operators on a SymbolSpace.

Operators are exact rational matrices over the space's basis, acting on row
vectors by right multiplication.  For a prime q not dividing 2N the Hecke
operator is assembled integrally from the coset decomposition of
SL2(Z)*diag(1,q)*SL2(Z): writing g_i*g = t_i(g)*g_{sigma(i)} with t_i(g)
unimodular,

  T_q {g,g'} = <q>{t_oo(g), t_oo(g')} + sum over i of {t_i(g), t_i(g')},

where i runs over -(q-1)/2 .. (q-1)/2, g_i = ((1,i),(0,q)) and
g_oo = ((q,0),(0,1)).  For q dividing 2N the same double-coset expansion is
evaluated through rational symbols, and the resulting denominator divides q.
"""

from dataclasses import dataclass
from fractions import Fraction

from .sl2 import MAT_ID, MAT_S, MAT_T, conj_entries, gcdex, mmul
from .mms import InvalidInputError, reduce_pair, reduce_pair_rational
from .zlattice import identity_matrix, lcm_list, mat_mul, vec_mat


@dataclass
class OperatorMatrix:
    """Named exact rational matrix on the symbol-space basis."""

    name: str
    mat: list

    @property
    def denominator(self):
        return lcm_list(Fraction(x).denominator for row in self.mat for x in row)

    def is_integral(self):
        return self.denominator == 1

    def __eq__(self, other):
        return self.normalized() == (other.normalized()
                                     if isinstance(other, OperatorMatrix) else other)

    def normalized(self):
        return [[Fraction(x) for x in row] for row in self.mat]


def identity_operator(space, name="id"):
    return OperatorMatrix(name, identity_matrix(space.rank))


def compose(a, b, name=None):
    """Operator applying a first, then b (row-vector convention)."""
    return OperatorMatrix(name or f"{a.name}*{b.name}", mat_mul(a.mat, b.mat))


def generator_pairs(space):
    """The defining symbol pair (g, g') of each ambient generator.

    Manin generators are {rep, rep*S}; the cusp generator of class c is
    {h, h*T} for h the representative of the first coset in c's T-orbit.
    """
    pairs = []
    for rep in space.cosets.reps:
        pairs.append((rep, mmul(rep, MAT_S)))
    for orbit in space.cusps.orbits:
        h = space.cosets.reps[orbit[0]]
        pairs.append((h, mmul(h, MAT_T)))
    return pairs


def operator_from_pair_map(space, fn, name):
    """Assemble the matrix of the map {g,g'} -> fn(g,g') (fn gives basis coords)."""
    ambient = [fn(g, gp) for g, gp in generator_pairs(space)]
    return OperatorMatrix(name, mat_mul(space.quotient.lift, ambient))


def complex_conjugation(space):
    """The involution {g,g'} -> {gbar, g'bar} (off-diagonal signs flipped)."""
    return operator_from_pair_map(
        space,
        lambda g, gp: reduce_pair(space, conj_entries(g), conj_entries(gp)),
        "conj")


def _gamma0_with_lower_right(n, d):
    """A matrix in Gamma0(n) whose lower-right entry is congruent to d mod n."""
    d %= n
    x, y, g = gcdex(d, n)
    if g != 1:
        raise InvalidInputError("entry must be a unit modulo the level")
    # x*d + y*n = 1, so (x, -y, n, d) has determinant x*d + y*n = 1
    return (x, -y, n, d)


def diamond(space, d):
    """The diamond operator <d>; the identity for Gamma0 and level 1."""
    n = space.spec.level
    if gcdex(d, n)[2] != 1:
        raise InvalidInputError("diamond requires gcd(d, level) = 1")
    if space.spec.family != "gamma1" or n == 1:
        return identity_operator(space, f"diamond({d})")
    gamma = _gamma0_with_lower_right(n, d)
    return operator_from_pair_map(
        space,
        lambda g, gp: reduce_pair(space, mmul(gamma, g), mmul(gamma, gp)),
        f"diamond({d})")


def _coset_matrices(q):
    lower = [(1, i, 0, q) for i in range(-(q - 1) // 2, (q - 1) // 2 + 1)]
    return lower, (q, 0, 0, 1)


def _translate(h, q):
    """Split an integer matrix h of determinant q as t * g_j.

    Returns (t, j) with t unimodular and g_j one of the standard coset
    matrices; j is None for g_oo = diag(q, 1).
    """
    h11, h12, h21, h22 = h
    if h11 % q == 0 and h21 % q == 0:
        return (h11 // q, h12, h21 // q, h22), None
    for j in range(-(q - 1) // 2, (q - 1) // 2 + 1):
        if (h12 - h11 * j) % q == 0 and (h22 - h21 * j) % q == 0:
            return (h11, (h12 - h11 * j) // q, h21, (h22 - h21 * j) // q), j
    raise AssertionError("no coset translate found; determinant not prime?")


def hecke_operator(space, q):
    """T_q (or U_q when q divides the level) as an exact operator matrix."""
    n = space.spec.level
    name = f"U{q}" if n % q == 0 else f"T{q}"
    if space.rank == 0:
        return OperatorMatrix(name, [])
    if q % 2 == 1 and (2 * n) % q != 0:
        return _hecke_integral(space, q, name)
    return _hecke_rational(space, q, name)


def _hecke_integral(space, q, name):
    dia = diamond(space, q)
    lower, upper = _coset_matrices(q)

    def fn(g, gp):
        total = [Fraction(0)] * space.rank
        for gi in lower + [upper]:
            t, _ = _translate(mmul(gi, g), q)
            tp, _ = _translate(mmul(gi, gp), q)
            v = reduce_pair(space, t, tp)
            row = vec_mat(v, dia.mat) if gi == upper else v
            total = [x + y for x, y in zip(total, row)]
        return total

    op = operator_from_pair_map(space, fn, name)
    assert op.is_integral(), f"{name} unexpectedly non-integral"
    op.mat = [[int(x) for x in row] for row in op.mat]
    return op


def _hecke_rational(space, q, name):
    n = space.spec.level
    if n % q == 0:
        mats = [((1, i, 0, q), False) for i in range(q)]
    else:
        lower, upper = _coset_matrices(q) if q % 2 else (
            [(1, 0, 0, 2), (1, 1, 0, 2)], (2, 0, 0, 1))
        mats = [(m, False) for m in lower] + [(upper, True)]
    dia = diamond(space, q) if n % q else None

    def fn(g, gp):
        total = [Fraction(0)] * space.rank
        for m, twist in mats:
            v = reduce_pair_rational(space, mmul(m, g), mmul(m, gp))
            if twist:
                v = vec_mat(v, dia.mat)
            total = [x + y for x, y in zip(total, v)]
        return total

    return operator_from_pair_map(space, fn, name)


def hecke_rational_route(space, q):
    """T_q evaluated through rational symbols; a cross-check for q not dividing 2N."""
    if space.rank == 0:
        return OperatorMatrix(f"T{q}", [])
    return _hecke_rational(space, q, f"T{q}")


def atkin_lehner(space):
    """The Atkin-Lehner involution W_N via w = ((0,-1),(N,0))."""
    n = space.spec.level
    if space.rank == 0:
        return OperatorMatrix(f"W{n}", [])
    w = (0, -1, n, 0)
    return operator_from_pair_map(
        space,
        lambda g, gp: reduce_pair_rational(space, mmul(w, g), mmul(w, gp)),
        f"W{n}")


def hecke_composite(space, m):
    """T_m for a composite index via the standard recurrences."""
    if m < 1:
        raise InvalidInputError("index must be positive")
    if m == 1:
        return identity_operator(space, "T1")
    n = space.spec.level
    fac = _factor(m)
    out = None
    for q, k in fac.items():
        op = _prime_power_hecke(space, q, k, n)
        out = op if out is None else compose(out, op, f"T{m}")
    out.name = f"T{m}"
    return out


def _factor(m):
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _prime_power_hecke(space, q, k, n):
    tq = hecke_operator(space, q)
    if k == 1:
        return tq
    if n % q == 0:
        out = tq
        for _ in range(k - 1):
            out = compose(out, tq)
        return out
    dia = diamond(space, q)
    prev, cur = identity_operator(space), tq
    for _ in range(k - 1):
        correction = mat_mul(prev.mat, dia.mat)
        nxt = [[a - q * b for a, b in zip(ra, rb)]
               for ra, rb in zip(mat_mul(cur.mat, tq.mat), correction)]
        prev, cur = cur, OperatorMatrix("tmp", nxt)
    cur.name = f"T{q**k}"
    return cur


def operators_commute(a, b):
    return mat_mul(a.normalized(), b.normalized()) == mat_mul(b.normalized(),
                                                              a.normalized())
