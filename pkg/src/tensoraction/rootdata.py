"""Root systems, weight lattices and Weyl reflection machinery for simple Lie types.

Weights are plain integer tuples holding coefficients in the fundamental-weight
basis.  Simple-root coordinates are derived on demand through the inverse
Cartan matrix with exact rational arithmetic, so every pairing used downstream
(Weyl dimension, Freudenthal, dot-action) is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError

Weight = tuple  # integer coefficients in the fundamental-weight basis

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

DEFAULT_MAX_RANK = 8

#: classical Weyl group orders, used by invariant checks
WEYL_ORDER = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2**n * factorial(n),
    "C": lambda n: 2**n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def _cartan_and_symmetrizers(family: str, rank: int):
    """Cartan matrix (row i = simple root alpha_i in fundamental-weight
    coordinates) and integer symmetrizers d with d[i] proportional to
    (alpha_i, alpha_i)/2."""
    n = rank
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2

    def chain(edges):
        for i, j in edges:
            C[i][j] = -1
            C[j][i] = -1

    if family == "A":
        chain((i, i + 1) for i in range(n - 1))
        d = [1] * n
    elif family == "B":
        # last simple root short
        chain((i, i + 1) for i in range(n - 1))
        C[n - 2][n - 1] = -2
        d = [2] * (n - 1) + [1]
    elif family == "C":
        # last simple root long
        chain((i, i + 1) for i in range(n - 1))
        C[n - 1][n - 2] = -2
        d = [1] * (n - 1) + [2]
    elif family == "D":
        chain((i, i + 1) for i in range(n - 2))
        chain([(n - 3, n - 1)])
        d = [1] * n
    elif family == "E":
        # Bourbaki: branch node 1 (0-indexed) hangs off node 3
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        edges += [(i, i + 1) for i in range(5, n - 1)]
        chain(edges)
        d = [1] * n
    elif family == "F":
        chain([(0, 1), (2, 3)])
        C[1][2] = -2
        C[2][1] = -1
        d = [2, 2, 1, 1]
    elif family == "G":
        C[0][1] = -1
        C[1][0] = -3
        d = [1, 3]
    else:  # pragma: no cover - validated earlier
        raise DomainError(f"unknown family {family!r}")
    return tuple(tuple(row) for row in C), tuple(d)


def _validate_type(family: str, rank: int, max_rank: int):
    if family not in FAMILIES:
        raise DomainError(f"unknown type family {family!r}; expected one of {FAMILIES}")
    if not isinstance(rank, int) or rank < 1:
        raise DomainError(f"rank must be a positive integer, got {rank!r}")
    if rank > max_rank:
        raise DomainError(f"rank {rank} exceeds the configured cap {max_rank}")
    low = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}[family]
    if rank < low:
        raise DomainError(f"type {family} requires rank >= {low}, got {rank}")
    if family == "E" and rank not in (6, 7, 8):
        raise DomainError(f"type E exists only for rank 6, 7, 8, got {rank}")
    if family == "F" and rank != 4:
        raise DomainError(f"type F exists only for rank 4, got {rank}")
    if family == "G" and rank != 2:
        raise DomainError(f"type G exists only for rank 2, got {rank}")


def _invert_transpose(C):
    """Exact inverse of C^T; row-major Fractions.  Converts fundamental-weight
    coordinates to simple-root coordinates by left multiplication."""
    n = len(C)
    a = [[Fraction(C[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system data for one simple type.

    positive_roots carries fundamental-weight coordinates; the parallel
    tuple positive_roots_alpha carries the same roots in simple-root
    coordinates (always non-negative integers).
    """

    family: str
    rank: int
    cartan: tuple
    simple_roots: tuple
    positive_roots: tuple
    positive_roots_alpha: tuple
    rho: tuple
    symmetrizers: tuple
    inv_cartan_t: tuple = field(repr=False)
    gram_num: tuple = field(repr=False)
    gram_den: int = field(repr=False)

    def to_alpha(self, w: Weight) -> tuple:
        """Simple-root coordinates of a weight (exact Fractions)."""
        F = self.inv_cartan_t
        return tuple(sum(F[i][j] * w[j] for j in range(self.rank)) for i in range(self.rank))

    def pairing(self, w: Weight, alpha_coords) -> int:
        """Scaled invariant form (w, alpha) for w in fundamental-weight
        coordinates and alpha in simple-root coordinates."""
        d = self.symmetrizers
        return sum(w[j] * alpha_coords[j] * d[j] for j in range(self.rank))

    def norm_num(self, w: Weight) -> int:
        """Scaled squared length gram_den * (w, w); integer-valued."""
        g = self.gram_num
        n = self.rank
        return sum(w[i] * g[i][j] * w[j] for i in range(n) for j in range(n))

    def is_dominant(self, w: Weight) -> bool:
        return all(c >= 0 for c in w)

    def check_weight(self, w) -> Weight:
        w = tuple(w)
        if len(w) != self.rank or not all(isinstance(c, int) for c in w):
            raise DomainError(f"expected {self.rank} integer coordinates, got {w!r}")
        return w

    def weyl_order(self) -> int:
        return WEYL_ORDER[self.family](self.rank)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int, max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """Construct the root system of a simple type.

    Positive roots are produced by the standard root-string closure from the
    Cartan matrix, level by level in root height.
    """
    _validate_type(family, rank, max_rank)
    C, d = _cartan_and_symmetrizers(family, rank)
    n = rank

    def unit(i):
        return tuple(int(j == i) for j in range(n))

    # alpha-coords -> weight-coords for every positive root found so far
    roots = {unit(i): C[i] for i in range(n)}
    current = list(roots.keys())
    while current:
        nxt = []
        for a in current:
            w = roots[a]
            for i in range(n):
                # p = number of root-string steps below a in direction alpha_i
                p = 0
                down = list(a)
                while True:
                    down[i] -= 1
                    if down[i] < 0 or tuple(down) not in roots:
                        break
                    p += 1
                if p - w[i] > 0:
                    up = list(a)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots[up] = tuple(x + y for x, y in zip(w, C[i]))
                        nxt.append(up)
        current = nxt

    expected = _POSITIVE_ROOT_COUNT[family](rank)
    if len(roots) != expected:
        raise AssertionError(
            f"root closure for {family}{rank} found {len(roots)} roots, expected {expected}")

    ordered = sorted(roots.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    pos_alpha = tuple(a for a, _ in ordered)
    pos_w = tuple(w for _, w in ordered)

    rho = tuple([1] * n)
    half_sum = [Fraction(s, 2) for s in (sum(w[j] for w in pos_w) for j in range(n))]
    if half_sum != [Fraction(1)] * n:
        raise AssertionError(f"half-sum of positive roots is {half_sum}, not rho")

    F = _invert_transpose(C)
    # Gram[i][j] = (w_i, w_j) = C^{-1}[i][j] * d[j]; store scaled to integers
    gram = [[F[j][i] * d[j] for j in range(n)] for i in range(n)]
    den = 1
    for row in gram:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    gram_num = tuple(tuple(int(x * den) for x in row) for row in gram)
    for i in range(n):
        for j in range(n):
            if gram_num[i][j] != gram_num[j][i]:
                raise AssertionError("Gram matrix of fundamental weights not symmetric")

    return RootSystem(
        family=family,
        rank=rank,
        cartan=C,
        simple_roots=tuple(C[i] for i in range(n)),
        positive_roots=pos_w,
        positive_roots_alpha=pos_alpha,
        rho=rho,
        symmetrizers=d,
        inv_cartan_t=F,
        gram_num=gram_num,
        gram_den=den,
    )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def reflect(rs: RootSystem, w: Weight, i: int) -> Weight:
    """Simple reflection s_i(w) = w - w[i] * alpha_i."""
    c = w[i]
    if c == 0:
        return w
    row = rs.cartan[i]
    return tuple(w[j] - c * row[j] for j in range(rs.rank))


def dominant_rep(rs: RootSystem, w: Weight) -> Weight:
    """Dominant representative of the linear Weyl orbit of w."""
    w = tuple(w)
    while True:
        for i in range(rs.rank):
            if w[i] < 0:
                w = reflect(rs, w, i)
                break
        else:
            return w


def weyl_orbit(rs: RootSystem, w: Weight) -> frozenset:
    """Full orbit of w under the Weyl group, by reflection closure."""
    w = rs.check_weight(w)
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                u = reflect(rs, v, i)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(seen)


def dot_dominant(rs: RootSystem, w: Weight):
    """Dominant representative of w under the dot-action w' = s.(w) = s(w+rho)-rho.

    Returns (weight, sign) where sign is the determinant of the minimal Weyl
    element moving w+rho to the dominant chamber, or 0 when w+rho lies on a
    wall (the returned weight is then meaningless and must be ignored).
    """
    v = tuple(c + 1 for c in w)
    sign = 1
    while True:
        for i in range(rs.rank):
            if v[i] < 0:
                v = reflect(rs, v, i)
                sign = -sign
                break
        else:
            break
    if any(c == 0 for c in v):
        return tuple(c - 1 for c in v), 0
    return tuple(c - 1 for c in v), sign
