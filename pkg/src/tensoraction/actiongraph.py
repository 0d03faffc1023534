"""Action graphs on finite windows, mixed-graph simplification, SCCs, matrices.

An action graph records, for a fixed generator module, the summand
multiplicities of tensoring against every object in a finite window of the
(infinite) set of indecomposables.  Truncation artifacts are quarantined by
interior/frontier flags: an interior vertex has its complete out-neighborhood
inside the window, so assertions downstream restrict to interior vertices.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError
from .repcalc import tensor_decompose, weight_multiplicities
from .rootdata import RootSystem

Label = tuple  # opaque hashable vertex label; weight tuple for weight graphs


@dataclass(frozen=True)
class ActionGraph:
    """Directed multigraph with multiplicities and window bookkeeping."""

    kind: str
    vertices: tuple
    arrows: dict  # (src, dst) -> multiplicity >= 1
    interior: frozenset
    rs: RootSystem | None = None
    generator: tuple | None = None
    window: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        vset = set(self.vertices)
        for (a, b), m in self.arrows.items():
            if m < 1:
                raise DomainError(f"arrow {a}->{b} has multiplicity {m}")
            if a not in vset or b not in vset:
                raise DomainError(f"arrow {a}->{b} has an endpoint outside the window")

    def out_arrows(self, v):
        return {b: m for (a, b), m in self.arrows.items() if a == v}

    def frontier(self):
        return frozenset(self.vertices) - self.interior


@dataclass(frozen=True)
class MixedGraph:
    """Simplified form: opposite arrow pairs merged into unoriented edges."""

    vertices: tuple
    unoriented: dict  # (a, b) with a <= b, a != b -> count
    directed: dict  # (src, dst) -> count
    loops: dict  # vertex -> count (kept unoriented)
    interior: frozenset
    notes: dict = field(default_factory=dict)

    def degree_profile(self, v):
        un = sum(m for (a, b), m in self.unoriented.items() if v in (a, b))
        out = sum(m for (a, b), m in self.directed.items() if a == v)
        inc = sum(m for (a, b), m in self.directed.items() if b == v)
        return (un, out, inc, self.loops.get(v, 0))


@dataclass(frozen=True)
class ActionMatrix:
    """Matrix of an action graph: entry (j, i) is the arrow multiplicity
    vertex_i -> vertex_j, so columns index the source object."""

    vertices: tuple
    entries: tuple  # tuple of row tuples

    def transpose(self):
        n = len(self.vertices)
        return ActionMatrix(self.vertices,
                            tuple(tuple(self.entries[j][i] for j in range(n))
                                  for i in range(n)))

    def restrict(self, keep):
        idx = [i for i, v in enumerate(self.vertices) if v in keep]
        return ActionMatrix(tuple(self.vertices[i] for i in idx),
                            tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def mul(self, other):
        if self.vertices != other.vertices:
            raise DomainError("matrix product needs identical vertex windows")
        n = len(self.vertices)
        a, b = self.entries, other.entries
        return ActionMatrix(self.vertices, tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)))


def _char_shifts(rs, gen):
    return sorted(weight_multiplicities(rs, gen))


def _box_vertices(rank, lo, hi):
    verts = [()]
    for _ in range(rank):
        verts = [v + (c,) for v in verts for c in range(lo, hi + 1)]
    return sorted(verts)


def regular_graph(rs: RootSystem, gen, window: int, jobs: int = 1) -> ActionGraph:
    """Action graph of tensoring by L(gen) on the dominant weights with all
    coordinates <= window (the regular action, truncated)."""
    gen = rs.check_weight(gen)
    if not rs.is_dominant(gen):
        raise DomainError(f"generator {gen} is not dominant")
    if window < 0:
        raise DomainError("empty window")
    vertices = _box_vertices(rs.rank, 0, window)
    shifts = _char_shifts(rs, gen)
    max_up = [max(s[i] for s in shifts) for i in range(rs.rank)]
    interior = frozenset(v for v in vertices
                         if all(v[i] + max_up[i] <= window for i in range(rs.rank)))

    def out(v):
        return [(v, t, m) for t, m in sorted(tensor_decompose(rs, gen, v).items())
                if all(c <= window for c in t)]

    arrows = {}
    rows = _map_vertices(out, vertices, jobs)
    for row in rows:
        for v, t, m in row:
            arrows[(v, t)] = m
    return ActionGraph(kind="regular", vertices=tuple(vertices), arrows=arrows,
                       interior=interior, rs=rs, generator=gen,
                       window={"shape": "dominant-box", "bound": window})


def generic_graph(rs: RootSystem, gen, window: int, jobs: int = 1) -> ActionGraph:
    """Action graph of a generic block: vertices are all integral weights in
    the centered box, and the multiplicity of mu -> nu is the weight
    multiplicity of nu - mu in L(gen)."""
    gen = rs.check_weight(gen)
    if not rs.is_dominant(gen):
        raise DomainError(f"generator {gen} is not dominant")
    if window < 0:
        raise DomainError("empty window")
    vertices = _box_vertices(rs.rank, -window, window)
    ch = weight_multiplicities(rs, gen)
    shifts = sorted(ch)
    lo = [min(s[i] for s in shifts) for i in range(rs.rank)]
    hi = [max(s[i] for s in shifts) for i in range(rs.rank)]
    interior = frozenset(
        v for v in vertices
        if all(-window <= v[i] + lo[i] and v[i] + hi[i] <= window for i in range(rs.rank)))

    def out(v):
        row = []
        for s in shifts:
            t = tuple(a + b for a, b in zip(v, s))
            if all(-window <= c <= window for c in t):
                row.append((v, t, ch[s]))
        return row

    arrows = {}
    for row in _map_vertices(out, vertices, jobs):
        for v, t, m in row:
            arrows[(v, t)] = m
    return ActionGraph(kind="generic", vertices=tuple(vertices), arrows=arrows,
                       interior=interior, rs=rs, generator=gen,
                       window={"shape": "centered-box", "bound": window})


def _map_vertices(fn, vertices, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, vertices))
    return [fn(v) for v in vertices]


def dual_graph(g: ActionGraph) -> ActionGraph:
    """The graph built from the dual generator on the same window."""
    if g.rs is None or g.generator is None:
        raise DomainError("graph carries no generator provenance")
    from .repcalc import dual_weight

    gen_star = dual_weight(g.rs, g.generator)
    bound = g.window["bound"]
    if g.kind == "regular":
        return regular_graph(g.rs, gen_star, bound)
    if g.kind == "generic":
        return generic_graph(g.rs, gen_star, bound)
    raise DomainError(f"dual graph undefined for kind {g.kind!r}")


def simplify_mixed(g: ActionGraph) -> MixedGraph:
    """Replace each pair of opposite arrows by one unoriented edge.

    Loops are self-paired and reported as unoriented loop counts.  For each
    vertex pair, arrow count is conserved: directed + 2 * unoriented equals
    the original multiplicity sum of both directions.
    """
    unoriented = {}
    directed = {}
    loops = {}
    seen = set()
    for (a, b), m in g.arrows.items():
        if a == b:
            loops[a] = loops.get(a, 0) + m
            continue
        key = (a, b) if a <= b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        fwd = g.arrows.get(key, 0)
        bwd = g.arrows.get((key[1], key[0]), 0)
        u = min(fwd, bwd)
        if u:
            unoriented[key] = u
        if fwd - u:
            directed[key] = fwd - u
        if bwd - u:
            directed[(key[1], key[0])] = bwd - u
    return MixedGraph(vertices=g.vertices, unoriented=unoriented, directed=directed,
                      loops=loops, interior=g.interior, notes=dict(g.notes))


@dataclass(frozen=True)
class SCCResult:
    components: tuple  # tuple of sorted vertex tuples, in topological order
    component_of: dict  # vertex -> component index
    order: tuple  # edges (i, j) of the condensation, i before j
    certified: bool  # True when every component is entirely interior


def scc(g: ActionGraph) -> SCCResult:
    """Strongly connected components (Tarjan, iterative) plus the induced
    partial order on components.  Component counts are certified only when
    every component avoids the frontier."""
    adj = {v: [] for v in g.vertices}
    for (a, b) in g.arrows:
        adj[a].append(b)
    for v in adj:
        adj[v].sort()

    index = {}
    low = {}
    onstack = set()
    stack = []
    components = []
    counter = [0]

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in onstack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))

    # Tarjan emits components in reverse topological order
    components.reverse()
    comp_of = {}
    for ci, comp in enumerate(components):
        for v in comp:
            comp_of[v] = ci
    order = set()
    for (a, b) in g.arrows:
        ca, cb = comp_of[a], comp_of[b]
        if ca != cb:
            order.add((ca, cb))
    certified = all(set(comp) <= g.interior for comp in components)
    return SCCResult(components=tuple(components), component_of=comp_of,
                     order=tuple(sorted(order)), certified=certified)


def action_matrix(g: ActionGraph) -> ActionMatrix:
    """Matrix form of the graph; column = source object."""
    vs = g.vertices
    pos = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    rows = [[0] * n for _ in range(n)]
    for (a, b), m in g.arrows.items():
        rows[pos[b]][pos[a]] = m
    return ActionMatrix(vertices=vs, entries=tuple(tuple(r) for r in rows))


def _label_str(v) -> str:
    if isinstance(v, tuple) and v and all(isinstance(c, int) for c in v):
        return ",".join(str(c) for c in v)
    if isinstance(v, tuple):
        return v[0] + "(" + ",".join(str(c) for c in v[1:]) + ")"
    return str(v)


def graph_to_json(g: ActionGraph) -> str:
    obj = {
        "kind": g.kind,
        "family": g.rs.family if g.rs else None,
        "rank": g.rs.rank if g.rs else None,
        "generator": list(g.generator) if g.generator is not None else None,
        "window": g.window,
        "vertices": [{"label": _label_str(v),
                      "coords": list(v) if g.rs else None,
                      "interior": v in g.interior}
                     for v in g.vertices],
        "arrows": [{"src": _label_str(a), "dst": _label_str(b), "mult": m}
                   for (a, b), m in sorted(g.arrows.items())],
        "notes": g.notes,
    }
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def graph_to_dot(g: ActionGraph) -> str:
    lines = ["digraph action {"]
    for v in g.vertices:
        shape = "" if v in g.interior else " [style=dashed]"
        lines.append(f'  "{_label_str(v)}"{shape};')
    for (a, b), m in sorted(g.arrows.items()):
        label = f" [label={m}]" if m > 1 else ""
        lines.append(f'  "{_label_str(a)}" -> "{_label_str(b)}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def mixed_to_dot(g: MixedGraph) -> str:
    lines = ["graph mixed {"]
    for v in g.vertices:
        shape = "" if v in g.interior else " [style=dashed]"
        lines.append(f'  "{_label_str(v)}"{shape};')
    for (a, b), m in sorted(g.unoriented.items()):
        label = f" [label={m}]" if m > 1 else ""
        lines.append(f'  "{_label_str(a)}" -- "{_label_str(b)}"{label};')
    for v, m in sorted(g.loops.items()):
        label = f" [label={m}]" if m > 1 else ""
        lines.append(f'  "{_label_str(v)}" -- "{_label_str(v)}"{label};')
    for (a, b), m in sorted(g.directed.items()):
        label = f"label={m}, " if m > 1 else ""
        lines.append(f'  "{_label_str(a)}" -- "{_label_str(b)}" [{label}dir=forward];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_json(text: str) -> ActionGraph:
    """Rebuild an action graph from the JSON interchange format (labels kept
    as opaque strings)."""
    try:
        obj = json.loads(text)
        vertices = tuple(v["label"] for v in obj["vertices"])
        interior = frozenset(v["label"] for v in obj["vertices"] if v.get("interior"))
        arrows = {(a["src"], a["dst"]): int(a["mult"]) for a in obj["arrows"]}
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise DomainError(f"malformed graph JSON: {exc}") from None
    return ActionGraph(kind=obj.get("kind", "json"), vertices=vertices, arrows=arrows,
                       interior=interior, rs=None, generator=None,
                       window=obj.get("window") or {}, notes=obj.get("notes") or {})
