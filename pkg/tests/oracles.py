"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the algorithms used by the package: characters come
from the Weyl character formula as an exact quotient of signed orbit sums,
and Jordan structures come from conjugate partitions of rank drops of
explicit matrix powers.
"""

from fractions import Fraction

from tensoraction.rootdata import reflect


def signed_orbit(rs, v):
    """Signed Weyl orbit {w(v): det(w)} of a regular weight v."""
    signs = {tuple(v): 1}
    frontier = [tuple(v)]
    while frontier:
        nxt = []
        for u in frontier:
            for i in range(rs.rank):
                r = reflect(rs, u, i)
                if r == u:
                    raise ValueError(f"{v} is not regular")
                s = -signs[u]
                if r in signs:
                    assert signs[r] == s, "inconsistent orbit signs"
                else:
                    signs[r] = s
                    nxt.append(r)
        frontier = nxt
    return signs


def _lead(poly):
    return max(poly)


def poly_divide_exact(num, den):
    """Exact division in the group ring Z[weight lattice] (sparse dicts)."""
    num = dict(num)
    quot = {}
    dlead = _lead(den)
    dcoef = den[dlead]
    while num:
        nlead = _lead(num)
        shift = tuple(a - b for a, b in zip(nlead, dlead))
        c = Fraction(num[nlead], dcoef)
        assert c.denominator == 1
        c = int(c)
        quot[shift] = quot.get(shift, 0) + c
        for w, m in den.items():
            t = tuple(a + b for a, b in zip(w, shift))
            s = num.get(t, 0) - c * m
            if s:
                num[t] = s
            elif t in num:
                del num[t]
    return {w: m for w, m in quot.items() if m}


def wcf_character(rs, lam):
    """Character of L(lam) via the Weyl character formula quotient."""
    lam_rho = tuple(c + 1 for c in lam)
    num = signed_orbit(rs, lam_rho)
    den = signed_orbit(rs, rs.rho)
    return poly_divide_exact(num, den)


def jordan_blocks_from_powers(mat, eigenvalue):
    """Jordan block sizes of `mat` at `eigenvalue`, from explicit powers.

    Computes X = mat - eigenvalue*I, takes ranks of X^j by plain Gaussian
    elimination on the explicitly multiplied powers, and reads block sizes off
    the conjugate partition of the rank-drop sequence.
    """
    n = len(mat)
    x = [[Fraction(mat[i][j]) - (eigenvalue if i == j else 0) for j in range(n)]
         for i in range(n)]

    def gauss_rank(a):
        a = [row[:] for row in a]
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, n) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(r + 1, n):
                if a[i][c]:
                    f = a[i][c] / a[r][c]
                    a[i] = [u - f * v for u, v in zip(a[i], a[r])]
            r += 1
        return r

    ranks = [n]
    power = [row[:] for row in x]
    while True:
        r = gauss_rank(power)
        ranks.append(r)
        if r == ranks[-2]:
            break
        power = [[sum(power[i][k] * x[k][j] for k in range(n)) for j in range(n)]
                 for i in range(n)]
    # drops[j] = # blocks of size >= j; conjugate partition gives sizes
    drops = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    blocks = []
    for j, d in enumerate(drops, start=1):
        following = drops[j] if j < len(drops) else 0
        blocks.extend([j] * (d - following))
    return sorted(blocks, reverse=True)
