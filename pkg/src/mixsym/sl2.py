"""Coset and cusp combinatorics for Gamma0(N) and Gamma1(N) inside SL2(Z).

Matrices are 4-tuples (a, b, c, d) of integers with determinant 1.  All coset
bookkeeping is done in PSL2(Z): a group element and its negative label the
same coset, which is harmless here because every symbol considered later is
invariant under sign changes of its entries.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

MAT_ID = (1, 0, 0, 1)
MAT_S = (0, -1, 1, 0)
MAT_T = (1, 1, 0, 1)
MAT_T_INV = (1, -1, 0, 1)
MAT_U = (1, -1, 1, 0)          # T * S, order 3 in PSL2
MAT_TAU = (0, -1, 1, 1)        # S * T, order 3 in PSL2


class InvalidSpecError(Exception):
    """Raised for congruence-group descriptions that make no sense."""


def det(m):
    return m[0] * m[3] - m[1] * m[2]


def mmul(*ms):
    out = MAT_ID
    for m in ms:
        a, b, c, d = out
        p, q, r, s = m
        out = (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
    return out


def minv(m):
    """Inverse of a determinant-1 matrix."""
    a, b, c, d = m
    return (d, -b, -c, a)


def mneg(m):
    return (-m[0], -m[1], -m[2], -m[3])


def mpow_t(n):
    return (1, n, 0, 1)


def conj_entries(m):
    """Negate the off-diagonal entries; the effect of conjugating z -> -zbar."""
    a, b, c, d = m
    return (a, -b, -c, d)


def gcdex(a, b):
    """Return (x, y, g) with a*x + b*y == g == gcd(a, b) and g >= 0."""
    if b == 0:
        return (1, 0, a) if a >= 0 else (-1, 0, -a)
    q, r = divmod(a, b)
    x, y, g = gcdex(b, r)
    return y, x - y * q, g


@dataclass(frozen=True)
class GroupSpec:
    """A congruence group: Gamma0(N), Gamma1(N), or all of SL2(Z)."""

    family: str  # "gamma0" | "gamma1" | "full"
    level: int = 1

    def __post_init__(self):
        if self.family not in ("gamma0", "gamma1", "full"):
            raise InvalidSpecError(f"unknown family {self.family!r}")
        if self.level < 1:
            raise InvalidSpecError("level must be a positive integer")
        if self.family == "full" and self.level != 1:
            raise InvalidSpecError("the full group has level 1")

    def contains(self, m):
        """Membership of a determinant-1 matrix, up to sign for gamma1."""
        if det(m) != 1:
            return False
        if self.family == "full" or self.level == 1:
            return True
        a, b, c, d = m
        n = self.level
        if c % n != 0:
            return False
        if self.family == "gamma0":
            return True
        return (a % n == 1 and d % n == 1) or (a % n == n - 1 and d % n == n - 1)

    def label(self):
        if self.family == "full":
            return "SL2(Z)"
        name = "Gamma0" if self.family == "gamma0" else "Gamma1"
        return f"{name}({self.level})"


def _units(n):
    return [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [1]


def _coset_key(spec, c, d):
    """Canonical label of the coset containing a matrix with bottom row (c, d).

    For gamma0 this is the lexicographically least unit multiple of
    (c, d) mod N; for gamma1 the least of +-(c, d) mod N.
    """
    n = spec.level
    if spec.family == "full" or n == 1:
        return (0, 0)
    c %= n
    d %= n
    if spec.family == "gamma0":
        return min(((u * c) % n, (u * d) % n) for u in _units(n))
    return min((c, d), ((-c) % n, (-d) % n))


def _lift_bottom_row(n, c, d):
    """A matrix in SL2(Z) whose bottom row is congruent to (c, d) mod n."""
    if n == 1:
        return MAT_ID
    c %= n
    d %= n
    if c == 0 and d == 1:
        return MAT_ID
    cc = c if c else n
    dd = d
    while gcd(cc, dd) != 1:
        dd += n
    x, y, g = gcdex(dd, cc)
    assert g == 1
    m = (x, -y, cc, dd)
    assert det(m) == 1
    return m


@dataclass
class CosetTable:
    """Right cosets Gamma\\SL2(Z) with a fixed list of representatives.

    ``action[name][i]`` is the index of coset i right-multiplied by the
    generator ``name`` in ("S", "T", "Tinv", "U").
    """

    spec: GroupSpec
    reps: list
    key_to_index: dict
    action: dict = field(default_factory=dict)  # name -> list of (idx', gamma, sign)

    @property
    def index(self):
        return len(self.reps)

    def coset_of(self, g):
        """Return (i, gamma, sign) with sign*g == gamma * reps[i], gamma in Gamma."""
        if det(g) != 1:
            raise InvalidSpecError("matrix must have determinant 1")
        i = self.key_to_index[_coset_key(self.spec, g[2], g[3])]
        gamma = mmul(g, minv(self.reps[i]))
        sign = 1
        if self.spec.family == "gamma1" and self.spec.level > 2:
            # exactly one of +-gamma has diagonal congruent to (1, 1)
            if gamma[0] % self.spec.level != 1:
                gamma, sign = mneg(gamma), -1
        else:
            a, b = gamma[0], gamma[1]
            if a < 0 or (a == 0 and b < 0):
                gamma, sign = mneg(gamma), -1
        assert self.spec.contains(gamma)
        return i, gamma, sign

    def act(self, i, name):
        """(idx', gamma, sign) with reps[i] * generator = sign * gamma * reps[idx']."""
        return self.action[name][i]


_GENERATOR_MATS = {"S": MAT_S, "T": MAT_T, "Tinv": MAT_T_INV, "U": MAT_U,
                   "U2": mmul(MAT_U, MAT_U)}


def enumerate_cosets(spec):
    """Deterministic coset table for Gamma\\SL2(Z), sorted by coset label."""
    n = spec.level
    keys = set()
    if spec.family == "full" or n == 1:
        keys.add((0, 0))
    else:
        for c in range(n):
            for d in range(n):
                if gcd(gcd(c, d), n) == 1:
                    keys.add(_coset_key(spec, c, d))
    ordered = sorted(keys)
    reps = [_lift_bottom_row(n, c, d) for c, d in ordered]
    table = CosetTable(spec, reps, {k: i for i, k in enumerate(ordered)})
    for name, m in _GENERATOR_MATS.items():
        table.action[name] = [table.coset_of(mmul(rep, m)) for rep in reps]
    return table


def stword_decompose(g):
    """Write g as sign * T^(a_0) S T^(a_1) S ... with S, T the standard generators.

    Returns (word, sign) where word is a list of ("T", k) and ("S",) tokens and
    multiplying them out (with sign) reproduces g exactly.
    """
    if det(g) != 1:
        raise InvalidSpecError("matrix must have determinant 1")
    word = []
    m = g
    # peel generators off the left (m = T^q * S * m') while the bottom-left
    # entry is nonzero, running the Euclidean algorithm on the first column
    while m[2] != 0:
        a, b, c, d = m
        q = a // c
        if q:
            word.append(("T", q))
            a, b = a - q * c, b - q * d
        word.append(("S",))
        # S^-1 * (a,b,c,d) = (c, d, -a, -b)
        m = (c, d, -a, -b)
    sign = 1 if m[0] == 1 else -1
    k = sign * m[1]
    if k:
        word.append(("T", k))
    return word, sign


def word_to_matrix(word, sign):
    m = MAT_ID
    for tok in word:
        m = mmul(m, mpow_t(tok[1])) if tok[0] == "T" else mmul(m, MAT_S)
    return m if sign == 1 else mneg(m)


@dataclass
class CuspTable:
    """Cusps of Gamma as orbits of the right T-translation on cosets.

    ``orbits[k]`` lists the coset indices of cusp class k in T-order;
    ``widths[k]`` is the ramification index of that cusp; ``cusp_of[i]`` maps
    a coset index to its cusp class; ``points[k]`` is the representative in
    P^1(Q), either a Fraction or None for the cusp at infinity.
    """

    orbits: list
    widths: list
    cusp_of: list
    points: list

    @property
    def count(self):
        return len(self.orbits)

    @property
    def gcd_of_widths(self):
        g = 0
        for w in self.widths:
            g = gcd(g, w)
        return g


def _cusp_point(rep):
    a, c = rep[0], rep[2]
    if c == 0:
        return None
    return Fraction(a, c)


def cusp_table(table):
    """Group the cosets into cusp classes and pick canonical representatives."""
    seen = [False] * table.index
    raw = []
    for start in range(table.index):
        if seen[start]:
            continue
        orbit = []
        i = start
        while not seen[i]:
            seen[i] = True
            orbit.append(i)
            i = table.act(i, "T")[0]
        assert i == start
        pts = [_cusp_point(table.reps[j]) for j in orbit]
        best = None
        for j, p in zip(orbit, pts):
            key = (0, 0, 0) if p is None else (1, p.denominator, p.numerator)
            if best is None or key < best[0]:
                best = (key, j, p)
        raw.append((best[0], best[2], orbit))
    raw.sort(key=lambda t: t[0])
    orbits = [orbit for _, _, orbit in raw]
    points = [p for _, p, _ in raw]
    widths = [len(orbit) for orbit in orbits]
    cusp_of = [0] * table.index
    for k, orbit in enumerate(orbits):
        for i in orbit:
            cusp_of[i] = k
    return CuspTable(orbits, widths, cusp_of, points)


def genus(table, cusps):
    """Genus of the modular curve for Gamma, from the coset table."""
    mu = table.index
    e2 = sum(1 for i in range(mu) if table.act(i, "S")[0] == i)
    e3 = sum(1 for i in range(mu) if table.act(i, "U")[0] == i)
    val = Fraction(1) + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3) \
        - Fraction(cusps.count, 2)
    assert val.denominator == 1, "inconsistent coset table"
    return int(val)


def minus_id_in_group(spec):
    """Whether -Id lies in Gamma as a subgroup of SL2(Z).

    Strict membership, unlike ``GroupSpec.contains`` which identifies a matrix
    with its negative; -Id is missing exactly from Gamma1(N) with N > 2.
    """
    return spec.family != "gamma1" or spec.level <= 2
