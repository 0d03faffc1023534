"""Exact linear algebra over the rationals: rank, kernel, characteristic polynomial.

Small dense matrices only (windows, diagram adjacency, subalgebra modules).
Everything here is division-safe Fraction arithmetic or integer-only.
"""

from __future__ import annotations

from fractions import Fraction


def frac_rows(mat):
    return [[Fraction(x) for x in row] for row in mat]


def rank(mat) -> int:
    """Rank over Q by Gaussian elimination."""
    a = frac_rows(mat)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def kernel_basis(mat):
    """Basis of the right kernel over Q; list of Fraction vectors."""
    a = frac_rows(mat)
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def image_basis(vectors):
    """Row-reduce a list of vectors to an independent spanning subset (echelon form)."""
    basis = []
    for v in vectors:
        v = [Fraction(x) for x in v]
        for b in basis:
            lead = next((j for j, x in enumerate(b) if x), None)
            if lead is not None and v[lead]:
                f = v[lead] / b[lead]
                v = [x - f * y for x, y in zip(v, b)]
        if any(v):
            basis.append(v)
    return basis


def power_ranks(mat, upto: int):
    """Ranks of mat^1 .. mat^upto via iterated images (no entry blow-up).

    Returns a list of `upto` integers.  Stops early once the rank hits zero
    and pads with zeros.
    """
    n = len(mat)
    a = frac_rows(mat)
    cols = [[a[i][j] for i in range(n)] for j in range(n)]
    basis = image_basis(cols)
    ranks = [len(basis)]
    while len(ranks) < upto and basis:
        nxt = []
        for v in basis:
            nxt.append([sum(a[i][j] * v[j] for j in range(n)) for i in range(n)])
        basis = image_basis(nxt)
        ranks.append(len(basis))
    while len(ranks) < upto:
        ranks.append(0)
    return ranks


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def charpoly_int(A):
    """Characteristic polynomial det(xI - A) of an integer matrix.

    Division-free Berkowitz algorithm; returns integer coefficients
    [1, c_{n-1}, ..., c_0] from the leading power down.
    """
    n = len(A)
    if n == 0:
        return [1]
    vec = [1, -A[0][0]]
    for k in range(1, n):
        R = A[k][:k]
        Ccol = [A[i][k] for i in range(k)]
        a_kk = A[k][k]
        # t_j = R . M^j . Ccol for the k x k leading block M
        t = []
        v = Ccol[:]
        for j in range(k):
            t.append(sum(R[i] * v[i] for i in range(k)))
            if j < k - 1:
                v = [sum(A[i][l] * v[l] for l in range(k)) for i in range(k)]
        col = [1, -a_kk] + [-x for x in t]
        new = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                ci = i - j
                if ci < len(col):
                    s += vec[j] * col[ci]
            new[i] = s
        vec = new
    return vec


def eval_poly(coeffs, x):
    """Evaluate a polynomial given leading-first coefficients."""
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def shift_poly(coeffs, s):
    """Coefficients (leading first) of p(x + s) for integer/rational s."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        new = [out[0]]
        for i in range(1, len(out)):
            new.append(out[i] + s * out[i - 1])
        new.append(c + s * out[-1])
        out = new
    return out


def descartes_positive_roots(coeffs) -> int:
    """Number of strictly positive roots of a real-rooted polynomial
    (sign changes in the coefficient sequence; exact when all roots are real)."""
    signs = [c for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))
