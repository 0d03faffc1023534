"""Dynkin-diagram catalogs, window recognition, and the spectral-radius classifier.

The catalog stores every diagram in two synchronized forms:

* a mixed form (unoriented edges, leftover directed arrows, loops) encoding
  the arrow asymmetries of multiply laced diagrams at the action-graph level:
  a B-style double edge is one unoriented edge plus one directed arrow toward
  the short end, G-style adds two arrows, the quadruple rank-1 diagram three;
* an undirected collapse for spectral work, where a multiply laced bond
  contributes its larger directed total and a loop adds 2 to the adjacency
  diagonal.

Criticality decisions (spectral radius vs 2) never trust floating point: the
characteristic polynomial is evaluated at 2 in exact integer arithmetic, root
counts above 2 come from Descartes' rule (exact for real-rooted polynomials),
and an eigenvalue 2 is certified as the Perron root by the sign of an exact
kernel vector.  Floating-point spectral radii are advisory output only.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._linalg import (
    charpoly_int,
    descartes_positive_roots,
    eval_poly,
    kernel_basis,
    shift_poly,
)
from .actiongraph import MixedGraph
from .errors import DomainError, InternalConsistencyError

INFINITE_FAMILIES = ("Ainf", "Ainfinf", "Binf", "Cinf", "Dinf", "Tinf")

_DISPLAY = {
    "A": "A{r}", "B": "B{r}", "C": "C{r}", "D": "D{r}", "E": "E{r}",
    "F": "F{r}", "G": "G{r}",
    "At": "Ã{r}", "At11": "Ã11", "At12": "Ã12",
    "Bt": "B̃{r}", "BCt": "B̃C{r}", "Ct": "C̃{r}",
    "BDt": "B̃D{r}", "Dt": "D̃{r}", "CDt": "C̃D{r}",
    "E6t": "Ẽ6", "E7t": "Ẽ7", "E8t": "Ẽ8",
    "F41t": "F̃41", "F42t": "F̃42",
    "G21t": "G̃21", "G22t": "G̃22",
    "Lt": "L̃{r}", "BLt": "B̃L{r}", "CLt": "C̃L{r}",
    "DLt": "D̃L{r}",
    "Ainf": "A∞", "Ainfinf": "A∞∞", "Binf": "B∞",
    "Cinf": "C∞", "Dinf": "D∞", "Tinf": "T∞",
}

#: rank bounds per family: (min_rank, max_rank) with None for parameterless
_RANK_RULES = {
    "A": (1, None), "B": (2, None), "C": (2, None), "D": (4, None),
    "E": (6, 8), "F": (4, 4), "G": (2, 2),
    "At": (2, None), "At11": None, "At12": None,
    "Bt": (3, None), "BCt": (2, None), "Ct": (2, None), "BDt": (3, None),
    "Dt": (4, None), "CDt": (3, None),
    "E6t": None, "E7t": None, "E8t": None,
    "F41t": None, "F42t": None, "G21t": None, "G22t": None,
    "Lt": (2, None), "BLt": (2, None), "CLt": (2, None), "DLt": (4, None),
    "Ainf": None, "Ainfinf": None, "Binf": None, "Cinf": None,
    "Dinf": None, "Tinf": None,
}

FINITE_SIMPLY_LACED = ("A", "D", "E")
AFFINE_SIMPLY_LACED = ("At", "At12", "Dt", "E6t", "E7t", "E8t")


@dataclass(frozen=True)
class DiagramId:
    family: str
    rank: int | None = None

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise DomainError(f"unknown diagram family {self.family!r}")
        rule = _RANK_RULES[self.family]
        if rule is None:
            if self.rank is not None:
                raise DomainError(f"family {self.family} takes no rank parameter")
        else:
            lo, hi = rule
            if self.rank is None or self.rank < lo or (hi is not None and self.rank > hi):
                raise DomainError(
                    f"family {self.family} needs rank in [{lo}, {hi or 'inf'}], got {self.rank}")

    def display(self) -> str:
        t = _DISPLAY[self.family]
        return t.format(r=self.rank) if "{r}" in t else t


@dataclass(frozen=True)
class EdgeGraph:
    """Finite undirected multigraph with loops; vertices are 0..n-1."""

    n: int
    edges: dict  # (i, j) with i < j -> multiplicity >= 1
    loops: dict  # vertex -> loop count >= 1

    def __post_init__(self):
        for (i, j), m in self.edges.items():
            if not (0 <= i < j < self.n) or m < 1:
                raise DomainError(f"bad edge ({i},{j}) x{m} on {self.n} vertices")
        for v, m in self.loops.items():
            if not 0 <= v < self.n or m < 1:
                raise DomainError(f"bad loop at {v}")

    def adjacency(self):
        a = [[0] * self.n for _ in range(self.n)]
        for (i, j), m in self.edges.items():
            a[i][j] = a[j][i] = m
        for v, m in self.loops.items():
            a[v][v] = 2 * m  # loops count 2 on the diagonal
        return a

    def neighbor_sets(self):
        nbr = [set() for _ in range(self.n)]
        for (i, j) in self.edges:
            nbr[i].add(j)
            nbr[j].add(i)
        return nbr

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        nbr = self.neighbor_sets()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in nbr[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_simple(self) -> bool:
        return not self.loops and all(m == 1 for m in self.edges.values())


def _mixed(n, unoriented=(), directed=(), loops=()):
    for a, b, _ in tuple(unoriented) + tuple(directed):
        if not (0 <= a < n and 0 <= b < n):
            raise InternalConsistencyError(f"catalog edge ({a},{b}) outside {n} vertices")
    for v in dict(loops):
        if not 0 <= v < n:
            raise InternalConsistencyError(f"catalog loop at {v} outside {n} vertices")
    return MixedGraph(
        vertices=tuple(range(n)),
        unoriented={(min(a, b), max(a, b)): m for a, b, m in unoriented},
        directed={(a, b): m for a, b, m in directed},
        loops=dict(loops),
        interior=frozenset(range(n)),
    )


def _path(n, extra_un=(), directed=(), loops=(), path_len=None):
    """Mixed graph on n vertices whose first `path_len` (default all) form a path."""
    k = n if path_len is None else path_len
    un = [(i, i + 1, 1) for i in range(k - 1)]
    return _mixed(n, tuple(un) + tuple(extra_un), directed, loops)


def catalog_mixed(did: DiagramId, size: int | None = None) -> MixedGraph:
    """Mixed-form catalog graph.

    For finite and affine families `size` must equal the diagram's vertex
    count (rank, rank+1 for the affine series); for infinite families `size`
    sets the truncation length measured from the distinguished end (the
    two-sided path yields 2*size+1 vertices around its base).
    """
    f, r = did.family, did.rank
    if f in ("A", "B", "C", "D", "E", "F", "G"):
        n = r
        if size is not None and size != n:
            raise DomainError(f"finite family {f} has exactly rank={n} vertices")
        if f == "A":
            return _path(n)
        if f == "B":
            return _path(n, directed=[(1, 0, 1)])
        if f == "C":
            return _path(n, directed=[(0, 1, 1)])
        if f == "D":
            return _path(n, extra_un=[(1, n - 1, 1)], path_len=n - 1)
        if f == "E":
            return _path(n, extra_un=[(2, n - 1, 1)], path_len=n - 1)
        if f == "F":
            return _path(4, directed=[(1, 2, 1)])
        return _mixed(2, unoriented=[(0, 1, 1)], directed=[(0, 1, 2)])  # G2
    if f == "At":
        n = r + 1
        _check_size(f, size, n)
        return _mixed(n, unoriented=[(i, (i + 1) % n, 1) for i in range(n)])
    if f == "At11":
        _check_size(f, size, 2)
        return _mixed(2, unoriented=[(0, 1, 1)], directed=[(0, 1, 3)])
    if f == "At12":
        _check_size(f, size, 2)
        return _mixed(2, unoriented=[(0, 1, 2)])
    if f == "Bt":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, directed=[(1, 0, 1), (n - 2, n - 1, 1)])
    if f == "BCt":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, directed=[(1, 0, 1), (n - 1, n - 2, 1)])
    if f == "Ct":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, directed=[(0, 1, 1), (n - 1, n - 2, 1)])
    if f == "BDt":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, extra_un=[(1, n - 1, 1)], directed=[(n - 3, n - 2, 1)],
                     path_len=n - 1)
    if f == "Dt":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, extra_un=[(1, n - 2, 1), (n - 4, n - 1, 1)], path_len=n - 2)
    if f == "CDt":
        n = r + 1
        _check_size(f, size, n)
        return _path(n, extra_un=[(1, n - 1, 1)], directed=[(n - 2, n - 3, 1)],
                     path_len=n - 1)
    if f in ("E6t", "E7t", "E8t"):
        n = {"E6t": 7, "E7t": 8, "E8t": 9}[f]
        _check_size(f, size, n)
        if f == "E6t":
            return _path(7, extra_un=[(2, 5, 1), (5, 6, 1)], path_len=5)
        if f == "E7t":
            return _path(8, extra_un=[(3, 7, 1)], path_len=7)
        return _path(9, extra_un=[(2, 8, 1)], path_len=8)
    if f == "F41t":
        _check_size(f, size, 5)
        return _path(5, directed=[(2, 3, 1)])
    if f == "F42t":
        _check_size(f, size, 5)
        return _path(5, directed=[(1, 2, 1)])
    if f == "G21t":
        _check_size(f, size, 3)
        return _path(3, directed=[(1, 2, 2)])
    if f == "G22t":
        _check_size(f, size, 3)
        return _path(3, directed=[(0, 1, 2)])
    if f == "Lt":
        n = r
        _check_size(f, size, n)
        return _path(n, loops={0: 1, n - 1: 1})
    if f == "BLt":
        n = r
        _check_size(f, size, n)
        return _path(n, directed=[(1, 0, 1)], loops={n - 1: 1})
    if f == "CLt":
        n = r
        _check_size(f, size, n)
        return _path(n, directed=[(0, 1, 1)], loops={n - 1: 1})
    if f == "DLt":
        n = r
        _check_size(f, size, n)
        return _path(n, extra_un=[(1, n - 1, 1)], loops={n - 2: 1}, path_len=n - 1)
    # infinite families: size = truncation size from the distinguished end
    if size is None or size < 1:
        raise DomainError(f"infinite family {f} needs a positive truncation size")
    if f == "Ainf":
        return _path(size)
    if f == "Ainfinf":
        return _path(2 * size + 1)
    if f == "Binf":
        if size < 2:
            raise DomainError("Binf truncation needs >= 2 vertices")
        return _path(size, directed=[(1, 0, 1)])
    if f == "Cinf":
        if size < 2:
            raise DomainError("Cinf truncation needs >= 2 vertices")
        return _path(size, directed=[(0, 1, 1)])
    if f == "Dinf":
        if size < 3:
            raise DomainError("Dinf truncation needs >= 3 vertices")
        # antennas 0 and 1 both attached to the path 2-3-...
        un = [(0, 2, 1), (1, 2, 1)] + [(i, i + 1, 1) for i in range(2, size - 1)]
        return _mixed(size, unoriented=un)
    if f == "Tinf":
        return _path(size, loops={0: 1})
    raise DomainError(f"unknown family {f!r}")  # pragma: no cover


def _check_size(f, size, n):
    if size is not None and size != n:
        raise DomainError(f"family {f} has exactly {n} vertices, got size {size}")


def base_vertex(family: str) -> int:
    """Distinguished base vertex of an infinite family's truncation."""
    if family == "Ainfinf":
        raise DomainError("Ainfinf base depends on the truncation size")
    return 0


def mixed_to_edge_graph(m: MixedGraph):
    """Undirected collapse: each bond contributes the larger of its two
    directed totals; loops are kept.  Returns (EdgeGraph, vertex order)."""
    order = tuple(sorted(m.vertices))
    pos = {v: i for i, v in enumerate(order)}
    totals = {}
    for (a, b), u in m.unoriented.items():
        key = (min(pos[a], pos[b]), max(pos[a], pos[b]))
        totals[key] = [u, u]
    for (a, b), d in m.directed.items():
        i, j = pos[a], pos[b]
        key = (min(i, j), max(i, j))
        t = totals.setdefault(key, [0, 0])
        t[0 if i < j else 1] += d
    edges = {k: max(t) for k, t in totals.items()}
    loops = {pos[v]: c for v, c in m.loops.items()}
    return EdgeGraph(n=len(order), edges=edges, loops=loops), order


def catalog_graph(did: DiagramId, size: int | None = None) -> EdgeGraph:
    """Undirected catalog diagram (the spectral-side form)."""
    eg, _ = mixed_to_edge_graph(catalog_mixed(did, size))
    return eg


# ---------------------------------------------------------------------------
# mixed-graph isomorphism (exact backtracking on small graphs)

def _mixed_maps(m: MixedGraph):
    un = {}
    for (a, b), c in m.unoriented.items():
        un[(a, b)] = un[(b, a)] = c
    return un, dict(m.directed), dict(m.loops)


def _mixed_profile(m, un, di, loops, v):
    u = sum(c for (a, b), c in m.unoriented.items() if v in (a, b))
    o = sum(c for (a, b), c in di.items() if a == v)
    i = sum(c for (a, b), c in di.items() if b == v)
    return (u, o, i, loops.get(v, 0))


def mixed_isomorphic(g: MixedGraph, h: MixedGraph, pin: tuple | None = None) -> bool:
    """Exact isomorphism of mixed multigraphs; `pin` optionally forces a
    base-vertex correspondence (gv, hv)."""
    gv, hv = sorted(g.vertices), sorted(h.vertices)
    if len(gv) != len(hv):
        return False
    gun, gdi, glo = _mixed_maps(g)
    hun, hdi, hlo = _mixed_maps(h)
    gprof = {v: _mixed_profile(g, gun, gdi, glo, v) for v in gv}
    hprof = {v: _mixed_profile(h, hun, hdi, hlo, v) for v in hv}
    if sorted(gprof.values()) != sorted(hprof.values()):
        return False

    gadj = {v: set() for v in gv}
    for (a, b) in list(gun) + list(gdi):
        gadj[a].add(b)
        gadj[b].add(a)

    # order: pinned vertex first, then by connectivity to already-ordered part
    order = []
    placed = set()
    start = pin[0] if pin else gv[0]
    queue = [start]
    while len(order) < len(gv):
        if not queue:
            queue = [v for v in gv if v not in placed][:1]
        v = queue.pop(0)
        if v in placed:
            continue
        placed.add(v)
        order.append(v)
        queue.extend(sorted(gadj[v] - placed))

    mapping = {}
    used = set()

    def consistent(v, w):
        if gprof[v] != hprof[w]:
            return False
        if glo.get(v, 0) != hlo.get(w, 0):
            return False
        for u, x in mapping.items():
            if gun.get((v, u), 0) != hun.get((w, x), 0):
                return False
            if gdi.get((v, u), 0) != hdi.get((w, x), 0):
                return False
            if gdi.get((u, v), 0) != hdi.get((x, w), 0):
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        cands = [pin[1]] if (pin and v == pin[0]) else hv
        for w in cands:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)


def edge_graphs_isomorphic(g: EdgeGraph, h: EdgeGraph) -> bool:
    def as_mixed(eg):
        return _mixed(eg.n, unoriented=[(i, j, m) for (i, j), m in eg.edges.items()],
                      loops=eg.loops)
    return mixed_isomorphic(as_mixed(g), as_mixed(h))


# ---------------------------------------------------------------------------
# window classification

@dataclass(frozen=True)
class WindowVerdict:
    diagram: DiagramId | None
    certified_radius: int
    note: str = ""

    def to_json(self) -> str:
        obj = {
            "id": self.diagram.display() if self.diagram else "Unknown",
            "family": self.diagram.family if self.diagram else None,
            "rank": self.diagram.rank if self.diagram else None,
            "certified_radius": self.certified_radius,
            "note": self.note,
        }
        return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _mixed_adjacency(m: MixedGraph):
    adj = {v: set() for v in m.vertices}
    for (a, b) in m.unoriented:
        adj[a].add(b)
        adj[b].add(a)
    for (a, b) in m.directed:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _bfs_layers(adj, base):
    dist = {base: 0}
    frontier = [base]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in sorted(adj[v]):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def _induced_mixed(m: MixedGraph, keep):
    keep = set(keep)
    return MixedGraph(
        vertices=tuple(sorted(keep)),
        unoriented={k: c for k, c in m.unoriented.items() if k[0] in keep and k[1] in keep},
        directed={k: c for k, c in m.directed.items() if k[0] in keep and k[1] in keep},
        loops={v: c for v, c in m.loops.items() if v in keep},
        interior=frozenset(v for v in m.interior if v in keep),
    )


def classify_window(m: MixedGraph, base, max_radius: int | None = None) -> WindowVerdict:
    """Identify the infinite Dynkin family whose ball around its distinguished
    vertex matches the window's ball around `base`, radius by radius.

    The certified radius is the window distance from `base` to the nearest
    frontier vertex (all strictly closer vertices carry complete
    neighborhoods).  A verdict is returned only when exactly one family
    matches; radius <= 1 balls cannot separate the families and come back
    Unknown.  Finite and affine diagrams are recognised by whole-graph
    isomorphism in the Smith classifier instead, since no finite-radius ball
    distinguishes a long finite path from a truncated infinite one.
    """
    if base not in m.vertices:
        raise DomainError(f"base vertex {base!r} not in the window")
    if base not in m.interior:
        raise DomainError(f"base vertex {base!r} lies on the window frontier")
    adj = _mixed_adjacency(m)
    dist = _bfs_layers(adj, base)
    frontier_d = [d for v, d in dist.items() if v not in m.interior]
    radius = min(frontier_d) if frontier_d else (max(dist.values()) + 1)
    if max_radius is not None:
        radius = min(radius, max_radius)
    if radius < 2:
        return WindowVerdict(None, radius, "radius too small to certify a family")
    ball = [v for v, d in dist.items() if d <= radius]
    gball = _induced_mixed(m, ball)

    matches = []
    for fam in INFINITE_FAMILIES:
        if fam == "Ainfinf":
            cat = catalog_mixed(DiagramId(fam), radius + 2)
            cbase = radius + 2  # center of the two-sided path
        else:
            size = radius + 3 if fam == "Dinf" else radius + 2
            cat = catalog_mixed(DiagramId(fam), size)
            cbase = 0
        cdist = _bfs_layers(_mixed_adjacency(cat), cbase)
        cball = _induced_mixed(cat, [v for v, d in cdist.items() if d <= radius])
        if mixed_isomorphic(gball, cball, pin=(base, cbase)):
            matches.append(fam)
    if len(matches) == 1:
        return WindowVerdict(DiagramId(matches[0]), radius, "")
    if not matches:
        return WindowVerdict(None, radius, "no infinite family matches")
    return WindowVerdict(None, radius, f"ambiguous between {matches}")


# ---------------------------------------------------------------------------
# spectral classification

@dataclass(frozen=True)
class SpectralValue:
    value: float
    error_bound: float


def spectral_radius(g: EdgeGraph) -> SpectralValue:
    """Largest adjacency eigenvalue with an a-posteriori residual bound."""
    if g.n == 0:
        raise DomainError("empty graph")
    if not g.is_connected():
        raise DomainError("spectral classification requires a connected graph")
    a = np.array(g.adjacency(), dtype=float)
    vals, vecs = np.linalg.eigh(a)
    idx = int(np.argmax(vals))
    lam = float(vals[idx])
    v = vecs[:, idx]
    residual = float(np.linalg.norm(a @ v - lam * v) / np.linalg.norm(v))
    if residual > 1e-9:
        raise InternalConsistencyError(f"eigenvalue residual {residual} above bound")
    return SpectralValue(value=lam, error_bound=residual)


@dataclass(frozen=True)
class SmithVerdict:
    category: str  # "subcritical" | "critical" | "supercritical"
    diagram: DiagramId | None
    rho: float  # advisory floating value

    def to_json(self) -> str:
        obj = {
            "category": {"subcritical": "SubCritical-ADE",
                         "critical": "Critical-AffineADE",
                         "supercritical": "SuperCritical"}[self.category],
            "id": self.diagram.display() if self.diagram else None,
            "rho_advisory": round(self.rho, 9),
        }
        return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _critical_candidates(n):
    out = []
    if n >= 3:
        out.append(DiagramId("At", n - 1))
    if n == 2:
        out.append(DiagramId("At12"))
    if n >= 5:
        out.append(DiagramId("Dt", n - 1))
    for fam, size in (("E6t", 7), ("E7t", 8), ("E8t", 9)):
        if n == size:
            out.append(DiagramId(fam))
    return out


def _subcritical_candidates(n):
    out = [DiagramId("A", n)]
    if n >= 4:
        out.append(DiagramId("D", n))
    if n in (6, 7, 8):
        out.append(DiagramId("E", n))
    return out


def smith_classify(g: EdgeGraph) -> SmithVerdict:
    """Exact trichotomy of the spectral radius against 2, with the matching
    catalog diagram for the sub/critical cases."""
    if not g.is_connected():
        raise DomainError("Smith classification requires a connected graph")
    a = g.adjacency()
    rho = spectral_radius(g).value
    p = charpoly_int(a)
    p2 = eval_poly(p, 2)
    if p2 < 0:
        return SmithVerdict("supercritical", None, rho)
    if p2 > 0:
        shifted = shift_poly(p, 2)  # q(y) = p(y + 2); roots are eigenvalues - 2
        if descartes_positive_roots(shifted) > 0:
            return SmithVerdict("supercritical", None, rho)
        category = "subcritical"
    else:
        m = [[(2 if i == j else 0) - a[i][j] for j in range(g.n)] for i in range(g.n)]
        basis = kernel_basis(m)
        if len(basis) != 1:
            return SmithVerdict("supercritical", None, rho)
        v = basis[0]
        if all(x > 0 for x in v) or all(x < 0 for x in v):
            category = "critical"
        else:
            return SmithVerdict("supercritical", None, rho)

    candidates = (_subcritical_candidates(g.n) if category == "subcritical"
                  else _critical_candidates(g.n))
    for did in candidates:
        if edge_graphs_isomorphic(g, catalog_graph(did)):
            return SmithVerdict(category, did, rho)
    if g.is_simple():
        raise InternalConsistencyError(
            f"connected simple graph with category {category} matches no catalog diagram")
    return SmithVerdict(category, None, rho)


# ---------------------------------------------------------------------------
# exhaustive enumeration of small connected graphs (up to isomorphism)

def _edge_slots(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _perm_slot_maps(n):
    slots = _edge_slots(n)
    slot_index = {s: k for k, s in enumerate(slots)}
    maps = []
    for perm in itertools.permutations(range(n)):
        maps.append([slot_index[(min(perm[i], perm[j]), max(perm[i], perm[j]))]
                     for (i, j) in slots])
    return np.array(maps, dtype=np.int64)


def _connected_masks(n):
    k = n * (n - 1) // 2
    slots = _edge_slots(n)
    out = []
    chunk = 1 << 16
    for start in range(0, 1 << k, chunk):
        masks = np.arange(start, min(start + chunk, 1 << k), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(k)) & 1).astype(np.uint8)
        adj = np.zeros((len(masks), n, n), dtype=np.uint8)
        for s, (i, j) in enumerate(slots):
            adj[:, i, j] = bits[:, s]
            adj[:, j, i] = bits[:, s]
        reach = adj | np.eye(n, dtype=np.uint8)
        for _ in range(3):  # (n <= 8) => 3 squarings reach everything
            reach = (np.matmul(reach, reach) > 0).astype(np.uint8)
        good = reach[:, 0, :].all(axis=1)
        out.append(masks[good])
        del bits, adj, reach
    return np.concatenate(out) if out else np.array([], dtype=np.int64)


def connected_graphs_upto(max_n: int):
    """All connected simple graphs with 1..max_n vertices, one representative
    per isomorphism class, generated by brute force over labeled graphs with
    exact permutation-orbit sweeping."""
    reps = []
    for n in range(1, max_n + 1):
        if n == 1:
            reps.append(EdgeGraph(n=1, edges={}, loops={}))
            continue
        k = n * (n - 1) // 2
        slots = _edge_slots(n)
        perm_maps = _perm_slot_maps(n)
        weights = (1 << np.arange(k, dtype=np.int64))
        masks = sorted(_connected_masks(n).tolist())
        swept = set()
        for mask in masks:
            if mask in swept:
                continue
            bits = ((mask >> np.arange(k)) & 1).astype(np.int64)
            orbit = np.unique((bits[perm_maps] * weights).sum(axis=1))
            swept.update(orbit.tolist())
            edges = {slots[s]: 1 for s in range(k) if (mask >> s) & 1}
            reps.append(EdgeGraph(n=n, edges=edges, loops={}))
    return reps


# ---------------------------------------------------------------------------
# catalog dump

def catalog_families():
    """All catalog families with their rank rules and encoding conventions."""
    fams = []
    for fam, rule in _RANK_RULES.items():
        fams.append({
            "family": fam,
            "display": _DISPLAY[fam].replace("{r}", "n"),
            "rank": None if rule is None else {"min": rule[0], "max": rule[1]},
            "infinite": fam in INFINITE_FAMILIES,
        })
    return fams


def catalog_entry_json(did: DiagramId, size: int | None = None) -> str:
    m = catalog_mixed(did, size)
    eg, order = mixed_to_edge_graph(m)
    obj = {
        "id": did.display(),
        "family": did.family,
        "rank": did.rank,
        "vertices": len(order),
        "mixed": {
            "unoriented": [[a, b, c] for (a, b), c in sorted(m.unoriented.items())],
            "directed": [[a, b, c] for (a, b), c in sorted(m.directed.items())],
            "loops": [[v, c] for v, c in sorted(m.loops.items())],
        },
        "undirected_collapse": {
            "edges": [[i, j, c] for (i, j), c in sorted(eg.edges.items())],
            "loops": [[v, c] for v, c in sorted(eg.loops.items())],
        },
        "conventions": {
            "multi_edge": "double edge = unoriented + 1 directed arrow; triple adds 2; "
                          "the quadruple rank-1 bond adds 3",
            "loop_diagonal": 2,
            "collapse": "bond multiplicity = max of the two directed totals",
        },
    }
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def catalog_entry_dot(did: DiagramId, size: int | None = None) -> str:
    from .actiongraph import mixed_to_dot

    return mixed_to_dot(catalog_mixed(did, size))
