"""Exact linear algebra over Z and Q.

Matrices are lists of rows; entries are Python ints (or ``fractions.Fraction``
where rational arithmetic is explicitly allowed).  Vectors are rows, and all
maps act on row vectors by right multiplication: the image of ``x`` under the
map with matrix ``M`` is ``x * M``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, inf


class LatticeError(Exception):
    """Raised when a lattice operation receives inconsistent input."""


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def mat_copy(a):
    return [list(row) for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    """Product of two matrices (entries int or Fraction)."""
    if a and b:
        assert len(a[0]) == len(b), "incompatible shapes"
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v, m):
    """Row vector times matrix."""
    assert len(v) == len(m)
    cols = len(m[0]) if m else 0
    out = [0] * cols
    for x, row in zip(v, m):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq_zero(a):
    return all(x == 0 for row in a for x in row)


def hnf(a):
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``h = u * a``, ``u`` unimodular, ``h`` in row
    echelon form with positive pivots, zero rows last, and entries above each
    pivot reduced into ``[0, pivot)``.
    """
    h = mat_copy(a)
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity_matrix(rows)
    r = 0
    for j in range(cols):
        # gcd elimination in column j below row r
        while True:
            piv = None
            for i in range(r, rows):
                if h[i][j] != 0 and (piv is None or abs(h[i][j]) < abs(h[piv][j])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, rows):
                if h[i][j] != 0:
                    q = h[i][j] // h[r][j]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][j] != 0:
                        done = False
            if done:
                break
        if r < rows and h[r][j] != 0:
            if h[r][j] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][j] // h[r][j]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h, u


def mat_rank(a):
    h, _ = hnf(a)
    return sum(1 for row in h if any(row))


@dataclass
class SmithDecomposition:
    """A = u * d * v with u, v unimodular and d in Smith normal form.

    ``vinv`` is the inverse of ``v``; ``invariants`` lists the nonzero
    diagonal entries of ``d``.
    """

    u: list
    d: list
    v: list
    vinv: list

    @property
    def invariants(self):
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))
                if self.d[i][i] != 0]


def snf(a):
    """Smith normal form with transforms; returns a SmithDecomposition."""
    d = mat_copy(a)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)
    vinv = identity_matrix(cols)

    # Row ops on d are compensated in u (a = u*d*v is preserved);
    # column ops on d are compensated in v and vinv.
    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, k):
        # row j += k * row i
        d[j] = [x + k * y for x, y in zip(d[j], d[i])]
        for row in u:
            row[i] -= k * row[j]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]
        for row in vinv:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, k):
        # col j += k * col i
        for row in d:
            row[j] += k * row[i]
        v[i] = [x - k * y for x, y in zip(v[i], v[j])]
        for row in vinv:
            row[j] += k * row[i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        for row in u:
            row[i] = -row[i]

    n = min(rows, cols)
    t = 0
    while t < n:
        # find a pivot of least absolute value in the trailing block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    row_add(t, i, -q)
                    if d[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    col_add(t, j, -q)
                    if d[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
        # enforce divisibility of the trailing block by the pivot
        p = d[t][t]
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(bad, t, 1)
            continue
        if p < 0:
            row_negate(t)
        t += 1
    return SmithDecomposition(u=u, d=d, v=v, vinv=vinv)


@dataclass
class QuotientLattice:
    """Largest torsion-free quotient of Z^n by the row span of a relation matrix.

    ``project`` (n x rank) sends an ambient row vector to its coordinates in
    the quotient basis; ``lift`` (rank x n) is a section, so
    ``lift * project = identity`` and ``relations * project = 0``.
    ``torsion`` lists the invariant factors > 1 of the full quotient
    (the part discarded when passing to the torsion-free quotient).
    """

    ambient_rank: int
    relations: list
    rank: int
    project: list
    lift: list
    torsion: list = field(default_factory=list)


def quotient_by_rows(relations, ambient_rank):
    """Torsion-free quotient of Z^ambient_rank by the rows of ``relations``."""
    if relations and any(len(row) != ambient_rank for row in relations):
        raise LatticeError("relation rows must have length ambient_rank")
    if not relations:
        return QuotientLattice(ambient_rank, [], ambient_rank,
                               identity_matrix(ambient_rank),
                               identity_matrix(ambient_rank))
    dec = snf(relations)
    r = len(dec.invariants)
    project = [row[r:] for row in dec.vinv]
    lift = dec.v[r:]
    torsion = [x for x in dec.invariants if x not in (1, -1)]
    q = QuotientLattice(ambient_rank, mat_copy(relations), ambient_rank - r,
                        project, lift, torsion)
    assert mat_mul(q.lift, q.project) == identity_matrix(q.rank)
    assert mat_eq_zero(mat_mul(relations, q.project))
    return q


def kernel_basis(a):
    """Basis (rows) of the saturated integer kernel {x : x * a = 0}."""
    h, u = hnf(a)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def solve_rational(a, b):
    """Solve x * a = b over Q; returns a row of Fractions or None.

    Deterministic: pivots are chosen left to right, free variables are zero.
    Here ``a`` is m x n, ``b`` has length n, and ``x`` has length m.
    """
    m = len(a)
    if m == 0:
        return [] if all(x == 0 for x in b) else None
    n = len(a[0])
    if len(b) != n:
        raise LatticeError("dimension mismatch")
    # Work with the transposed system a^T x^T = b^T via augmented elimination.
    aug = [[Fraction(a[i][j]) for i in range(m)] + [Fraction(b[j])] for j in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][m] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = aug[i][m]
    return x


def sublattice_index(gens_a, gens_b):
    """Index of the lattice spanned by ``gens_b`` inside the one spanned by ``gens_a``.

    Returns ``math.inf`` when the ranks differ; raises LatticeError when some
    generator of B does not lie in the lattice A.
    """
    ha, _ = hnf(gens_a)
    basis = [row for row in ha if any(row)]
    coords = []
    for row in gens_b:
        x = solve_rational(basis, row)
        if x is None:
            raise LatticeError("generator outside the span of A")
        if any(c.denominator != 1 for c in x):
            raise LatticeError("generator outside the lattice A")
        coords.append([int(c) for c in x])
    invs = snf(coords).invariants
    if len(invs) < len(basis):
        return inf
    idx = 1
    for x in invs:
        idx *= abs(x)
    return idx


def charpoly(a):
    """Characteristic polynomial of a square rational matrix.

    Returns coefficients [c_0, ..., c_n] of det(x*I - a), leading coefficient
    last, computed by the Faddeev-LeVerrier recurrence.
    """
    n = len(a)
    a = [[Fraction(x) for x in row] for row in a]
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    m = identity_matrix(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


def det_rational(a):
    """Exact determinant of a square rational matrix."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def lcm_list(xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out
