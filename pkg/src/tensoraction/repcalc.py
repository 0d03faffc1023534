"""Characters, weight multiplicities, dimensions and tensor decompositions.

The primary multiplicity algorithm is Freudenthal's recursion (division only
by positive integers, exact with big integers); tensor products are
decomposed by the signed-reflection rule: reflect lam + nu dot-dominantly
over all weights nu of the second factor and accumulate signs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InternalConsistencyError
from .rootdata import RootSystem, dominant_rep, dot_dominant, weyl_orbit

Character = dict  # Weight -> integer multiplicity (virtual characters may be negative)
Decomposition = dict  # dominant Weight -> multiplicity >= 1


def _require_dominant(rs: RootSystem, w, name="weight"):
    w = rs.check_weight(w)
    if not rs.is_dominant(w):
        raise DomainError(f"{name} {w} is not dominant")
    return w


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def weyl_dimension(rs: RootSystem, lam) -> int:
    """dim L(lam) by the Weyl product formula, evaluated exactly."""
    lam = _require_dominant(rs, lam)
    lam_rho = _add(lam, rs.rho)
    num = 1
    den = 1
    for alpha in rs.positive_roots_alpha:
        num *= rs.pairing(lam_rho, alpha)
        den *= rs.pairing(rs.rho, alpha)
    d = Fraction(num, den)
    if d.denominator != 1 or d <= 0:
        raise InternalConsistencyError(f"Weyl dimension of {lam} evaluated to {d}")
    return int(d)


@lru_cache(maxsize=4096)
def _dominant_mults(rs: RootSystem, lam):
    """Multiplicities of the dominant weights of L(lam), by Freudenthal.

    Returns a tuple of (weight, multiplicity) pairs sorted by depth below lam.
    """
    n = rs.rank
    lam_rho = _add(lam, rs.rho)
    ball = rs.norm_num(lam_rho)

    # All weights nu = lam - (nonneg root sum) with |nu + rho| <= |lam + rho|;
    # this region contains the full support of L(lam).
    seen = {lam}
    stack = [lam]
    dominants = []
    while stack:
        v = stack.pop()
        if rs.is_dominant(v):
            dominants.append(v)
        for i in range(n):
            child = _sub(v, rs.cartan[i])
            if child not in seen and rs.norm_num(_add(child, rs.rho)) <= ball:
                seen.add(child)
                stack.append(child)

    def depth(mu):
        coords = rs.to_alpha(_sub(lam, mu))
        ht = sum(coords)
        if any(c.denominator != 1 or c < 0 for c in coords):
            raise InternalConsistencyError(f"{mu} is not below {lam} in the root lattice")
        return int(ht)

    dominants.sort(key=lambda mu: (depth(mu), mu))
    mults = {lam: 1}
    line_memo = {}
    pos_w = rs.positive_roots
    pos_a = rs.positive_roots_alpha

    def mult_of(w):
        return mults.get(w if rs.is_dominant(w) else dominant_rep(rs, w), 0)

    def line_sum(v0, ri):
        # sum_{k>=1} m(v0 + k*alpha) * (v0 + k*alpha, alpha), walked upward
        alpha_w = pos_w[ri]
        alpha_a = pos_a[ri]
        chain = []
        v = v0
        while True:
            key = (v, ri)
            if key in line_memo:
                acc = line_memo[key]
                break
            up = _add(v, alpha_w)
            m_up = mult_of(up)
            if m_up == 0:
                line_memo[key] = 0
                acc = 0
                break
            chain.append((key, up, m_up))
            v = up
        for key, up, m_up in reversed(chain):
            acc += m_up * rs.pairing(up, pos_a[ri])
            line_memo[key] = acc
        return line_memo[(v0, ri)]

    for mu in dominants:
        if mu == lam:
            continue
        total = 0
        for ri in range(len(pos_w)):
            total += line_sum(mu, ri)
        denom = ball - rs.norm_num(_add(mu, rs.rho))
        if denom <= 0:
            raise InternalConsistencyError(f"Freudenthal denominator {denom} at {mu}")
        num = 2 * rs.gram_den * total
        if num % denom:
            raise InternalConsistencyError(f"Freudenthal division failed at {mu}")
        m = num // denom
        if m <= 0:
            raise InternalConsistencyError(f"Freudenthal produced multiplicity {m} at {mu}")
        mults[mu] = m

    return tuple(sorted(mults.items()))


@lru_cache(maxsize=1024)
def _full_char_items(rs: RootSystem, lam):
    items = []
    for mu, m in _dominant_mults(rs, lam):
        for w in weyl_orbit(rs, mu):
            items.append((w, m))
    items.sort()
    return tuple(items)


def weight_multiplicities(rs: RootSystem, lam) -> Character:
    """Full character of L(lam): every weight mapped to its multiplicity."""
    lam = _require_dominant(rs, lam)
    return dict(_full_char_items(rs, lam))


def dominant_multiplicities(rs: RootSystem, lam) -> Character:
    """Dominant-chamber part of the character of L(lam)."""
    lam = _require_dominant(rs, lam)
    return dict(_dominant_mults(rs, lam))


def tensor_decompose(rs: RootSystem, lam, mu) -> Decomposition:
    """Decompose L(lam) (x) L(mu) into simple summands.

    Signed reflection over the weights of the smaller factor: each weight nu
    of L(mu) contributes sign(w) at the dot-dominant representative of
    lam + nu; wall hits contribute nothing.
    """
    lam = _require_dominant(rs, lam, "lam")
    mu = _require_dominant(rs, mu, "mu")
    if weyl_dimension(rs, mu) > weyl_dimension(rs, lam):
        lam, mu = mu, lam
    acc = {}
    for nu, m in _full_char_items(rs, mu):
        w, sign = dot_dominant(rs, _add(lam, nu))
        if sign:
            acc[w] = acc.get(w, 0) + sign * m
    out = {}
    for w, m in acc.items():
        if m < 0:
            raise InternalConsistencyError(
                f"negative multiplicity {m} at {w} in L{lam} (x) L{mu}")
        if m:
            out[w] = m
    return out


def char_product_oracle(a: Character, b: Character) -> Character:
    """Pointwise convolution of two characters; the independent expansion used
    to verify tensor decompositions."""
    out = {}
    for u, ma in a.items():
        for v, mb in b.items():
            w = _add(u, v)
            s = out.get(w, 0) + ma * mb
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return out


def decomposition_character(rs: RootSystem, dec: Decomposition) -> Character:
    """Multiplicity-weighted sum of the constituent characters."""
    out = {}
    for lam, m in dec.items():
        for w, k in _full_char_items(rs, lam):
            s = out.get(w, 0) + m * k
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return out


def character_dimension(ch: Character) -> int:
    return sum(ch.values())


def dual_weight(rs: RootSystem, lam) -> tuple:
    """Highest weight of L(lam)*: the dominant conjugate of -lam."""
    lam = _require_dominant(rs, lam)
    return dominant_rep(rs, tuple(-c for c in lam))
