"""McKay correspondence pipeline for the finite subgroups of SL2(C).

Groups are generated as explicit 2x2 matrices with entries in a cyclotomic
field Q(zeta_m), m the group exponent, represented as integer coefficient
vectors with a common denominator and reduced modulo the m-th cyclotomic
polynomial.  No floating point enters any certified value.

Character tables are computed, not hard-coded: linear characters come from
the abelianization, everything else from tensor-peeling against the defining
module using exact inner products (remainders that are not yet irreducible
are themselves genuine module characters and get peeled again, which resolves
the branch vertices of the exceptional graphs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .actiongraph import ActionGraph, simplify_mixed
from .diagramcat import AFFINE_SIMPLY_LACED, DiagramId, mixed_to_edge_graph, smith_classify
from .errors import DomainError, InternalConsistencyError

GROUP_FAMILIES = ("cyclic", "binary_dihedral", "binary_tetrahedral",
                  "binary_octahedral", "binary_icosahedral")

_EXPECTED_ORDER = {
    "cyclic": lambda n: n,
    "binary_dihedral": lambda n: 4 * n,
    "binary_tetrahedral": lambda n: 24,
    "binary_octahedral": lambda n: 48,
    "binary_icosahedral": lambda n: 120,
}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int | None = None

    def __post_init__(self):
        if self.family not in GROUP_FAMILIES:
            raise DomainError(f"unknown group family {self.family!r}")
        if self.family == "cyclic":
            if self.n is None or self.n < 1:
                raise DomainError("cyclic groups need n >= 1")
        elif self.family == "binary_dihedral":
            if self.n is None or self.n < 2:
                raise DomainError("binary dihedral groups need n >= 2")
        elif self.n is not None:
            raise DomainError(f"{self.family} takes no parameter")

    def label(self) -> str:
        return f"{self.family}({self.n})" if self.n is not None else self.family


# ---------------------------------------------------------------------------
# cyclotomic arithmetic

def _poly_divide_exact(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1]:
            raise InternalConsistencyError("inexact cyclotomic polynomial division")
        c //= den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise InternalConsistencyError("nonzero remainder in cyclotomic division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int):
    """Coefficients of Phi_m, constant term first."""
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


class Cyclo:
    """The field Q(zeta_m) with basis 1, zeta, ..., zeta^(phi(m)-1)."""

    _instances = {}

    def __new__(cls, m):
        if m not in cls._instances:
            cls._instances[m] = super().__new__(cls)
            cls._instances[m]._setup(m)
        return cls._instances[m]

    def _setup(self, m):
        self.m = m
        phi = cyclotomic_poly(m)
        self.deg = len(phi) - 1
        # reduction rows: x^(deg + k) mod Phi_m for k = 0 .. deg - 2
        rows = []
        prev = [-c for c in phi[:-1]]  # x^deg
        rows.append(tuple(prev))
        for _ in range(self.deg - 2):
            shifted = [0] + prev  # multiply by x; length deg + 1
            top = shifted[self.deg]
            nxt = shifted[: self.deg]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, rows[0])]
            rows.append(tuple(nxt))
            prev = nxt
        self.red_rows = rows
        # zeta^j for all j mod m
        powers = []
        cur = (1,) + (0,) * (self.deg - 1)
        for _ in range(m):
            powers.append(cur)
            shifted = (0,) + cur
            cur = tuple(self._reduce(list(shifted)))
        self.zeta_powers = powers
        self.zero = CycNum(self, (0,) * self.deg, 1)
        self.one = CycNum(self, (1,) + (0,) * (self.deg - 1), 1)

    def _reduce(self, coeffs):
        for k in range(len(coeffs) - 1, self.deg - 1, -1):
            c = coeffs[k]
            if c:
                row = self.red_rows[k - self.deg]
                for j, r in enumerate(row):
                    coeffs[j] += c * r
            coeffs.pop()
        while len(coeffs) < self.deg:
            coeffs.append(0)
        return coeffs

    def num(self, coeffs, den=1):
        return CycNum(self, tuple(coeffs) + (0,) * (self.deg - len(coeffs)), den)

    def zeta(self, j=1):
        return CycNum(self, self.zeta_powers[j % self.m], 1)

    def rational(self, q):
        q = Fraction(q)
        return CycNum(self, (q.numerator,) + (0,) * (self.deg - 1), q.denominator)


class CycNum:
    """Element of Q(zeta_m): integer coefficient vector over a common denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den

    def key(self):
        return (self.num, self.den)

    def __eq__(self, other):
        return isinstance(other, CycNum) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def __add__(self, other):
        a, b = self, other
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycNum(a.field, tuple(x * fa + y * fb for x, y in zip(a.num, b.num)), den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CycNum(self.field, tuple(-x for x in self.num), self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.field, tuple(x * other for x in self.num), self.den)
        f = self.field
        a, b = self.num, other.num
        conv = [0] * (2 * f.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycNum(f, tuple(f._reduce(conv)), self.den * other.den)

    def conj(self):
        """Complex conjugation zeta -> zeta^(m-1)."""
        f = self.field
        acc = [0] * f.deg
        for j, c in enumerate(self.num):
            if c:
                p = f.zeta_powers[(f.m - j) % f.m]
                for k, v in enumerate(p):
                    acc[k] += c * v
        return CycNum(f, tuple(acc), self.den)

    def divide_by_int(self, k: int):
        return CycNum(self.field, self.num, self.den * k)

    def is_rational(self):
        return not any(self.num[1:])

    def to_int(self) -> int:
        if not self.is_rational() or self.num[0] % self.den:
            raise InternalConsistencyError(f"value {self.num}/{self.den} is not a rational integer")
        return self.num[0] // self.den


# ---------------------------------------------------------------------------
# 2x2 matrices over the field

class Mat2:
    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = (a.key(), b.key(), c.key(), d.key())

    def __eq__(self, other):
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __mul__(self, o):
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inv_unimodular(self):
        return Mat2(self.d, -self.b, -self.c, self.a)


def _quaternion_matrix(f: Cyclo, a, b, c, d):
    """Unit quaternion a + bi + cj + dk as an SU(2) matrix over Q(zeta_m)."""
    i = f.zeta(f.m // 4)
    return Mat2(a + b * i, c + d * i, -c + d * i, a - b * i)


def _generators(spec: GroupSpec):
    fam, n = spec.family, spec.n
    if fam == "cyclic":
        m = max(n, 1)
        f = Cyclo(m)
        return f, [Mat2(f.zeta(1), f.zero, f.zero, f.zeta(m - 1))]
    if fam == "binary_dihedral":
        m = lcm(2 * n, 4)
        f = Cyclo(m)
        k = m // (2 * n)
        a = Mat2(f.zeta(k), f.zero, f.zero, f.zeta(m - k))
        b = Mat2(f.zero, f.one, -f.one, f.zero)
        return f, [a, b]
    half = Fraction(1, 2)
    if fam == "binary_tetrahedral":
        f = Cyclo(12)
        i_mat = _quaternion_matrix(f, f.rational(0), f.one, f.rational(0), f.rational(0))
        omega = _quaternion_matrix(f, *(f.rational(half),) * 4)
        return f, [i_mat, omega]
    if fam == "binary_octahedral":
        f = Cyclo(24)
        omega = _quaternion_matrix(f, *(f.rational(half),) * 4)
        # (1 + i)/sqrt(2): 1/sqrt(2) = (zeta_8 - zeta_8^3)/2
        inv_sqrt2 = (f.zeta(3) - f.zeta(9)).divide_by_int(2)
        s = _quaternion_matrix(f, inv_sqrt2, inv_sqrt2, f.rational(0), f.rational(0))
        return f, [omega, s]
    # binary icosahedral, inside Q(zeta_60)
    f = Cyclo(60)
    omega = _quaternion_matrix(f, *(f.rational(half),) * 4)
    sqrt5 = f.zeta(12) - f.zeta(24) - f.zeta(36) + f.zeta(48)
    phi_golden = (sqrt5 + f.one).divide_by_int(2)
    phi_inv = (sqrt5 - f.one).divide_by_int(2)
    g2 = _quaternion_matrix(f, phi_golden.divide_by_int(2), phi_inv.divide_by_int(2),
                            f.rational(half), f.rational(0))
    return f, [omega, g2]


@dataclass(frozen=True)
class GroupData:
    spec: GroupSpec
    field: Cyclo
    elements: tuple
    classes: tuple  # tuple of tuples of Mat2
    class_reps: tuple
    class_sizes: tuple
    char_table: tuple  # irreducibles x classes, CycNum entries
    dims: tuple

    @property
    def order(self):
        return len(self.elements)

    def chi_V(self):
        return tuple(rep.trace() for rep in self.class_reps)


def _mulclose(gens, cap=10_000):
    els = {g for g in gens}
    frontier = list(els)
    while frontier:
        nxt = []
        for a in gens:
            for b in frontier:
                c = a * b
                if c not in els:
                    els.add(c)
                    nxt.append(c)
                    if len(els) > cap:
                        raise DomainError(f"group closure exceeded the cap of {cap} elements")
        frontier = nxt
    return els


def _conjugacy_classes(elements, gens):
    pool = dict.fromkeys(sorted(elements, key=lambda e: e._key))
    classes = []
    while pool:
        start = next(iter(pool))
        del pool[start]
        cls = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g * x * g.inv_unimodular()
                    if y not in cls:
                        cls.add(y)
                        if y in pool:
                            del pool[y]
                        nxt.append(y)
            frontier = nxt
        classes.append(tuple(sorted(cls, key=lambda e: e._key)))
    return classes


def _element_order(e, identity):
    k = 1
    cur = e
    while cur != identity:
        cur = cur * e
        k += 1
        if k > 10_000:  # pragma: no cover
            raise InternalConsistencyError("runaway element order")
    return k


def _inner(gd_sizes, order, a, b):
    total = None
    for size, x, y in zip(gd_sizes, a, b):
        term = (x * y.conj()) * size
        total = term if total is None else total + term
    return total.divide_by_int(order)


def _char_mul(a, b):
    return tuple(x * y for x, y in zip(a, b))


def _linear_characters(field, elements, gens, identity, class_reps):
    """All 1-dimensional characters, from the abelianization."""
    # commutator subgroup: normal closure of generator commutators
    base = set()
    for a in gens:
        for b in gens:
            base.add(a * b * a.inv_unimodular() * b.inv_unimodular())
    K = set(base) | {identity}
    changed = True
    while changed:
        changed = False
        for x in list(K):
            for y in list(K):
                z = x * y
                if z not in K:
                    K.add(z)
                    changed = True
            for g in gens:
                z = g * x * g.inv_unimodular()
                if z not in K:
                    K.add(z)
                    changed = True
    # cosets
    coset_of = {}
    reps = []
    for g in sorted(elements, key=lambda e: e._key):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for k in K:
            coset_of[g * k] = idx
    q = len(reps)
    mul = [[coset_of[reps[i] * reps[j]] for j in range(q)] for i in range(q)]
    ident_c = coset_of[identity]

    def coset_order(i):
        k, cur = 1, i
        while cur != ident_c:
            cur = mul[cur][i]
            k += 1
        return k

    m = field.m
    chars_on_q = []
    if q == 1:
        chars_on_q = [[field.one]]
    else:
        orders = [coset_order(i) for i in range(q)]
        g1 = max(range(q), key=lambda i: orders[i])
        o1 = orders[g1]
        # span of g1
        expr = {ident_c: 0}
        cur = ident_c
        for k in range(1, o1):
            cur = mul[cur][g1]
            expr[cur] = k
        if len(expr) == q:
            for s in range(o1):
                chars_on_q.append([field.zeta((m // o1) * s * expr[i]) for i in range(q)])
        else:
            g2 = next(i for i in range(q) if i not in expr)
            o2 = orders[g2]
            expr2 = {}
            for i, k in expr.items():
                cur, b = i, 0
                while True:
                    expr2.setdefault(cur, (k, b))
                    cur = mul[cur][g2]
                    b += 1
                    if cur in expr2 and b > o2:
                        break
            if len(expr2) != q:
                raise InternalConsistencyError("abelianization needs more than two generators")
            for s in range(o1):
                for t in range(o2):
                    vals = [field.zeta((m // o1) * s * expr2[i][0])
                            * field.zeta((m // o2) * t * expr2[i][1]) for i in range(q)]
                    ok = all(vals[mul[i][j]] == vals[i] * vals[j]
                             for i in range(q) for j in range(q))
                    if ok:
                        chars_on_q.append(vals)
            if len(chars_on_q) != q:
                raise InternalConsistencyError(
                    f"found {len(chars_on_q)} linear characters, expected {q}")
    return [tuple(vals[coset_of[rep]] for rep in class_reps) for vals in chars_on_q]


def build_group(spec: GroupSpec, cap: int = 10_000) -> GroupData:
    """Generate the group, its conjugacy classes and its full character table.

    All GroupData invariants (determinant 1, sum of squared dimensions,
    exact orthogonality of rows and columns) are verified here.
    """
    field, gens = _generators(spec)
    identity = Mat2(field.one, field.zero, field.zero, field.one)
    elements = _mulclose(gens + [identity], cap=cap)
    expected = _EXPECTED_ORDER[spec.family](spec.n)
    if len(elements) != expected:
        raise InternalConsistencyError(
            f"{spec.label()} closed to {len(elements)} elements, expected {expected}")
    one = field.one
    for e in elements:
        if e.det() != one:
            raise InternalConsistencyError("group element with determinant != 1")
        if field.m % _element_order(e, identity):
            raise InternalConsistencyError("element order does not divide the field exponent")

    classes = _conjugacy_classes(elements, gens)
    classes.sort(key=lambda cls: (_element_order(cls[0], identity), len(cls),
                                  cls[0]._key))
    class_reps = tuple(cls[0] for cls in classes)
    class_sizes = tuple(len(cls) for cls in classes)
    order = len(elements)

    chi_v = tuple(rep.trace() for rep in class_reps)
    linears = _linear_characters(field, elements, gens, identity, class_reps)

    def inner(a, b):
        return _inner(class_sizes, order, a, b)

    def inner_int(a, b):
        return inner(a, b).to_int()

    known = []

    def push(ch):
        if ch not in known:
            known.append(ch)

    for ch in linears:
        push(ch)
    if inner_int(chi_v, chi_v) == 1:
        push(chi_v)

    def reduce_char(ch):
        rem = list(ch)
        for psi in known:
            c = inner_int(tuple(rem), psi)
            if c < 0:
                raise InternalConsistencyError("negative constituent multiplicity")
            if c:
                rem = [r - psi[i] * c for i, r in enumerate(rem)]
        return tuple(rem)

    def dims_sq():
        return sum(ch[0].to_int() ** 2 for ch in known)

    stuck = []
    rounds = 0
    while dims_sq() < order:
        rounds += 1
        if rounds > 50:
            raise InternalConsistencyError("tensor-peeling stalled")
        progress = False
        for ch in list(known):
            for ell in linears:
                t = _char_mul(ch, ell)
                if t not in known:
                    push(t)
                    progress = True
        sources = list(known) + stuck
        new_stuck = []
        for src in sources:
            rem = reduce_char(_char_mul(chi_v, src))
            if not any(rem):
                continue
            norm = inner_int(rem, rem)
            if norm == 1:
                push(rem)
                progress = True
            elif rem not in new_stuck:
                new_stuck.append(rem)
        stuck = [reduce_char(r) for r in new_stuck]
        stuck = [r for r in stuck if any(r)]
        if not progress and dims_sq() < order:
            raise InternalConsistencyError("tensor-peeling made no progress")

    if len(known) != len(classes):
        raise InternalConsistencyError(
            f"character count {len(known)} != class count {len(classes)}")

    known.sort(key=lambda ch: (ch[0].to_int(), [v.key() for v in ch]))
    zero, fone = field.zero, field.one
    for i, a in enumerate(known):
        for j, b in enumerate(known):
            if inner(a, b) != (fone if i == j else zero):
                raise InternalConsistencyError("character row orthogonality failed")
    k = len(classes)
    for ci in range(k):
        for cj in range(k):
            s = None
            for ch in known:
                term = ch[ci] * ch[cj].conj()
                s = term if s is None else s + term
            want = field.rational(Fraction(order, class_sizes[ci])) if ci == cj else zero
            if s != want:
                raise InternalConsistencyError("character column orthogonality failed")

    dims = tuple(ch[0].to_int() for ch in known)
    return GroupData(spec=spec, field=field, elements=tuple(sorted(elements, key=lambda e: e._key)),
                     classes=tuple(classes), class_reps=class_reps,
                     class_sizes=class_sizes, char_table=tuple(known), dims=dims)


# ---------------------------------------------------------------------------
# McKay graphs

def mckay_multiplicities(gd: GroupData) -> ActionGraph:
    """Graph with arrow i -> j of multiplicity [V (x) L_i : L_j]."""
    chi_v = gd.chi_V()
    k = len(gd.char_table)
    arrows = {}
    for i, chi in enumerate(gd.char_table):
        prod = _char_mul(chi_v, chi)
        for j, psi in enumerate(gd.char_table):
            m = _inner(gd.class_sizes, gd.order, prod, psi).to_int()
            if m < 0:
                raise InternalConsistencyError("negative McKay multiplicity")
            if m:
                arrows[(("L", i), ("L", j))] = m
    vertices = tuple(("L", i) for i in range(k))
    return ActionGraph(kind="mckay", vertices=vertices, arrows=arrows,
                       interior=frozenset(vertices),
                       notes={"group": gd.spec.label(), "dims": list(gd.dims)})


@dataclass(frozen=True)
class McKayReport:
    group: str
    order: int
    class_count: int
    dims: tuple
    matrix: tuple
    diagram: DiagramId

    def to_json(self) -> str:
        obj = {
            "group": self.group,
            "order": self.order,
            "class_count": self.class_count,
            "dims": list(self.dims),
            "mckay_matrix": [list(r) for r in self.matrix],
            "diagram": self.diagram.display(),
        }
        return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def mckay_certify(spec: GroupSpec, cap: int = 10_000) -> McKayReport:
    """Full pipeline: group, multiplicity graph, simplification, affine-ADE id.

    Fails loudly when the simplified graph is not a simply laced affine
    diagram (that would contradict the correspondence).
    """
    gd = build_group(spec, cap=cap)
    g = mckay_multiplicities(gd)
    k = len(gd.char_table)
    matrix = tuple(tuple(g.arrows.get((("L", i), ("L", j)), 0) for j in range(k))
                   for i in range(k))
    for i in range(k):
        if matrix[i][i]:
            raise InternalConsistencyError("McKay graph has a loop")
        for j in range(k):
            if matrix[i][j] != matrix[j][i]:
                raise InternalConsistencyError("McKay multiplicity matrix is not symmetric")
        if sum(matrix[i][j] * gd.dims[j] for j in range(k)) != 2 * gd.dims[i]:
            raise InternalConsistencyError("dimension balance failed in V (x) L_i")
    mixed = simplify_mixed(g)
    if mixed.directed:
        raise InternalConsistencyError("simplified McKay graph still has directed arrows")
    eg, _ = mixed_to_edge_graph(mixed)
    verdict = smith_classify(eg)
    if verdict.category != "critical" or verdict.diagram is None \
            or verdict.diagram.family not in AFFINE_SIMPLY_LACED:
        raise InternalConsistencyError(
            f"McKay graph of {spec.label()} classified as {verdict.category}, "
            "not a simply laced affine diagram")
    return McKayReport(group=spec.label(), order=gd.order, class_count=k,
                       dims=gd.dims, matrix=matrix, diagram=verdict.diagram)
