"""Root systems of simply-laced graphs and of their foldings.

Vectors are integer tuples in the order of `Graph.vertices`; dicts keyed by
vertex id are accepted wherever a vector is expected.

Enumeration goes height by height.  Every positive root of height > 1
is beta + eps_i for a root beta one level down, so the candidates at the
next level are those sums.  A candidate with a positive pairing against
some eps_i reflects to a strictly lower vector; it is a root exactly when
that vector is a known root.  A candidate with no positive pairing is a
root exactly when its support is connected, and is then imaginary.
The folded lattice is handled the same way with s_o and beta_o.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Graph, GraphError
from .quiver import FoldingData

REAL = "Real"
IMAGINARY = "Imaginary"
NOT_A_ROOT = "NotARoot"


class RootError(ValueError):
    pass


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class GCM:
    labels: tuple
    matrix: tuple    # tuple of row tuples

    def __post_init__(self):
        n = len(self.labels)
        a = self.matrix
        if len(a) != n or any(len(r) != n for r in a):
            raise RootError("GCM must be square and match its labels")
        for i in range(n):
            if a[i][i] != 2:
                raise RootError(f"diagonal entry {i} is {a[i][i]}, not 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise RootError(f"entries ({i},{j}) violate the GCM sign pattern")

    def __getitem__(self, ij):
        return self.matrix[ij[0]][ij[1]]

    @property
    def n(self) -> int:
        return len(self.labels)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


def gcm_from_graph(g: Graph) -> GCM:
    n = g.n
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for u, v, m in g.edges:
        i, j = g.index(u), g.index(v)
        a[i][j] -= m
        a[j][i] -= m
    return GCM(tuple(g.vertices), tuple(tuple(r) for r in a))


def vec(g: Graph, alpha) -> tuple:
    if isinstance(alpha, dict):
        if set(alpha) != set(g.vertices):
            raise RootError(f"vector keys {sorted(alpha)} do not match vertices {list(g.vertices)}")
        return tuple(int(alpha[v]) for v in g.vertices)
    t = tuple(int(x) for x in alpha)
    if len(t) != g.n:
        raise RootError(f"vector of length {len(t)} on a graph with {g.n} vertices")
    return t


def as_dict(g: Graph, alpha) -> dict:
    return dict(zip(g.vertices, vec(g, alpha)))


def height(alpha) -> int:
    return sum(alpha.values()) if isinstance(alpha, dict) else sum(alpha)


def support(g: Graph, alpha) -> list:
    return [v for v, x in zip(g.vertices, vec(g, alpha)) if x != 0]


def simple_root(g: Graph, i) -> tuple:
    k = g.index(i) if i in g.vertices else int(i)
    return tuple(1 if t == k else 0 for t in range(g.n))


class _Ctx:
    """Cached integer GCM plus adjacency for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.a = gcm_from_graph(g).matrix

    def apair(self, alpha) -> list[int]:
        # (A alpha)_i = 2 <alpha, eps_i>
        return [sum(r[j] * alpha[j] for j in range(self.n) if alpha[j]) for r in self.a]

    def connected_support(self, alpha) -> bool:
        sup = [self.g.vertices[k] for k in range(self.n) if alpha[k]]
        return bool(sup) and self.g.is_connected(sup)


def tits_pairing(g: Graph, alpha, beta) -> Fraction:
    a, b = vec(g, alpha), vec(g, beta)
    m = gcm_from_graph(g).matrix
    s = sum(a[i] * m[i][j] * b[j] for i in range(g.n) for j in range(g.n))
    return Fraction(s, 2)


def reflect(g: Graph, i, alpha) -> tuple:
    a = vec(g, alpha)
    k = g.index(i) if i in g.vertices else int(i)
    m = gcm_from_graph(g).matrix
    c = sum(m[k][j] * a[j] for j in range(g.n))
    out = list(a)
    out[k] -= c
    return tuple(out)


def _descent(ctx: _Ctx, alpha) -> str:
    a = list(alpha)
    n = ctx.n
    while True:
        if sum(a) == 1:
            return REAL
        ap = ctx.apair(a)
        k = next((i for i in range(n) if ap[i] > 0), None)
        if k is None:
            return IMAGINARY if ctx.connected_support(a) else NOT_A_ROOT
        a[k] -= ap[k]
        if a[k] < 0:
            return NOT_A_ROOT


def classify_root(g: Graph, alpha) -> str:
    a = vec(g, alpha)
    if any(x < 0 for x in a) or not any(a):
        raise RootError("classify_root needs a nonzero nonnegative vector")
    return _descent(_Ctx(g), a)


def _level_enumerate(n, bound, steps, reflect_down, is_fundamental, simples):
    """Shared level-by-level enumeration.

    steps: list of (step vector, step height); reflect_down(v) -> (lower
    vector or None if it leaves the cone, was_reflected); is_fundamental(v).
    """
    found: dict = {}
    by_height: dict = {}
    for s, h in simples:
        if h <= bound:
            found[s] = REAL
            by_height.setdefault(h, set()).add(s)
    for h in range(1, bound + 1):
        for root in sorted(by_height.get(h, ())):
            for step, sh in steps:
                nh = h + sh
                if nh > bound:
                    continue
                cand = tuple(x + y for x, y in zip(root, step))
                if cand in found or cand in by_height.get(nh, ()):
                    continue
                lower, reflected = reflect_down(cand)
                if reflected:
                    if lower is None or lower not in found:
                        continue
                    kind = found[lower]
                elif is_fundamental(cand):
                    kind = IMAGINARY
                else:
                    continue
                found[cand] = kind
                by_height.setdefault(nh, set()).add(cand)
    return found


def enumerate_roots(g: Graph, bound: int) -> dict:
    """{root tuple: Real | Imaginary} for all positive roots of height <= bound."""
    if bound < 1:
        raise RootError("height bound must be at least 1")
    ctx = _Ctx(g)
    n = ctx.n
    simples = [(simple_root(g, k), 1) for k in range(n)]

    def down(v):
        ap = ctx.apair(v)
        for k in range(n):
            if ap[k] > 0:
                w = list(v)
                w[k] -= ap[k]
                return (tuple(w) if w[k] >= 0 else None), True
        return None, False

    return _level_enumerate(n, bound, simples, down, ctx.connected_support, simples)


def filter_height(roots: dict, bound: int) -> dict:
    return {r: k for r, k in roots.items() if sum(r) <= bound}


# -- folding -------------------------------------------------------------------------------
@dataclass
class FoldedSystem:
    graph: Graph
    data: FoldingData
    orbits: list          # list of tuples of vertex ids
    simple: list          # beta_o as tuples, in orbit order
    gcm: GCM
    edges: list = field(default_factory=list)   # (o1, o2, "simple" | "double") ; double points o1 => o2

    def orbit_of(self, v) -> int:
        for k, orb in enumerate(self.orbits):
            if v in orb:
                return k
        raise KeyError(v)

    @property
    def labels(self) -> tuple:
        return self.gcm.labels

    def diagram(self) -> list[str]:
        out = []
        for a, b, kind in self.edges:
            la, lb = self.labels[a], self.labels[b]
            out.append(f"{la} - {lb}" if kind == "simple" else f"{la} => {lb}")
        return out


def _orbit_label(orb) -> str:
    return "|".join(str(x) for x in orb)


def fold(g: Graph, f: FoldingData) -> FoldedSystem:
    pi = f.pi
    if set(pi) != set(g.vertices):
        raise FoldingError("involution must be defined on every vertex")
    for u, v, m in g.edges:
        if g.multiplicity(pi[u], pi[v]) != m:
            raise FoldingError(f"involution is not a graph automorphism at edge {u}-{v}")
        if {pi[u], pi[v]} == {u, v}:
            raise FoldingError(f"edge {u}-{v} is stable under the involution")
    orbits, seen = [], set()
    for v in g.vertices:
        if v in seen:
            continue
        orb = (v,) if pi[v] == v else (v, pi[v])
        seen.update(orb)
        orbits.append(orb)
    n = g.n
    simple = []
    for orb in orbits:
        b = [0] * n
        if len(orb) == 2:
            b[g.index(orb[0])] = b[g.index(orb[1])] = 1
        else:
            b[g.index(orb[0])] = 1 if f.sigma[orb[0]] == 1 else 2
        simple.append(tuple(b))

    # GCM from the pairings of the folded simple roots
    m = len(orbits)
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        nii = tits_pairing(g, simple[i], simple[i])
        for j in range(m):
            x = 2 * tits_pairing(g, simple[i], simple[j]) / nii
            if x.denominator != 1:
                raise FoldingError("folded Cartan entry is not an integer")
            a[i][j] = int(x)
    gcm = GCM(tuple(_orbit_label(o) for o in orbits), tuple(tuple(r) for r in a))

    # edge rules, per orbit of edges; they must reproduce the same matrix
    edges, rule = [], [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    done = set()
    where = {v: k for k, orb in enumerate(orbits) for v in orb}
    for u, v, mult in g.edges:
        key = frozenset((frozenset((u, v)), frozenset((pi[u], pi[v]))))
        if key in done:
            continue
        done.add(key)
        ou, ov = where[u], where[v]
        fu, fv = len(orbits[ou]) == 1, len(orbits[ov]) == 1
        for _ in range(mult):
            if not fu and not fv:
                rule[ou][ov] -= 1
                rule[ov][ou] -= 1
                edges.append((ou, ov, "simple"))
            else:
                free, fixed = (ou, ov) if fv else (ov, ou)
                if f.sigma[orbits[fixed][0]] == 1:
                    rule[free][fixed] -= 1
                    rule[fixed][free] -= 2
                    edges.append((free, fixed, "double"))
                else:
                    rule[free][fixed] -= 2
                    rule[fixed][free] -= 1
                    edges.append((fixed, free, "double"))
    if [list(r) for r in gcm.matrix] != rule:
        raise FoldingError("folded Cartan matrix disagrees with the edge rules")
    return FoldedSystem(g, f, orbits, simple, gcm, edges)


def fold_quiver(q):
    """fold() applied to folding_data(q); returns Unsupported unchanged."""
    from .quiver import folding_data
    res = folding_data(q)
    if not res:
        return res
    g, f = res
    return fold(g, f)


def in_lattice(fs: FoldedSystem, alpha) -> bool:
    g = fs.graph
    a = vec(g, alpha)
    for orb in fs.orbits:
        if len(orb) == 2 and a[g.index(orb[0])] != a[g.index(orb[1])]:
            return False
        if len(orb) == 1 and fs.data.sigma[orb[0]] == -1 and a[g.index(orb[0])] % 2:
            return False
    return True


def pi_image(fs: FoldedSystem, alpha) -> tuple:
    g = fs.graph
    a = vec(g, alpha)
    return tuple(a[g.index(fs.data.pi[v])] for v in g.vertices)


def bar(fs: FoldedSystem, alpha) -> tuple:
    a = vec(fs.graph, alpha)
    if in_lattice(fs, a):
        return a
    return tuple(x + y for x, y in zip(a, pi_image(fs, a)))


def folded_reflect(fs: FoldedSystem, o: int, alpha) -> tuple:
    """s_o: r_i r_pi(i) on a 2-orbit, r_i on a fixed vertex."""
    g = fs.graph
    a = vec(g, alpha)
    for v in fs.orbits[o]:
        a = reflect(g, v, a)
    return a


def project(fs: FoldedSystem, alpha) -> tuple:
    """Coordinates of a lattice vector in the basis beta_o."""
    g = fs.graph
    a = vec(g, alpha)
    if not in_lattice(fs, a):
        raise RootError("vector is not in the folded lattice")
    out = []
    for orb, b in zip(fs.orbits, fs.simple):
        k = g.index(orb[0])
        out.append(a[k] // b[k])
    return tuple(out)


def _folded_ctx(fs: FoldedSystem):
    ctx = _Ctx(fs.graph)
    g = fs.graph
    reps = [g.index(orb[0]) for orb in fs.orbits]
    idx = [[g.index(v) for v in orb] for orb in fs.orbits]
    steps = [(b, sum(b)) for b in fs.simple]

    def down(v):
        ap = ctx.apair(v)
        for o, k in enumerate(reps):
            if ap[k] > 0:
                w = list(v)
                for t in idx[o]:
                    # the two reflections of a 2-orbit commute and act on disjoint coordinates
                    w[t] -= ap[t]
                return (tuple(w) if all(w[t] >= 0 for t in idx[o]) else None), True
        return None, False

    return ctx, steps, down


def classify_folded_root(fs: FoldedSystem, alpha) -> str:
    a = vec(fs.graph, alpha)
    if any(x < 0 for x in a) or not any(a) or not in_lattice(fs, a):
        raise RootError("folded classification needs a nonzero positive lattice vector")
    ctx, steps, down = _folded_ctx(fs)
    simples = set(fs.simple)
    while True:
        if a in simples:
            return REAL
        lower, reflected = down(a)
        if not reflected:
            return IMAGINARY if ctx.connected_support(a) else NOT_A_ROOT
        if lower is None:
            return NOT_A_ROOT
        a = lower


def enumerate_folded_roots(fs: FoldedSystem, bound: int) -> dict:
    """{root: Real | Imaginary} for the folded system, unfolded height <= bound."""
    if bound < 1:
        raise RootError("height bound must be at least 1")
    ctx, steps, down = _folded_ctx(fs)
    return _level_enumerate(ctx.n, bound, steps, down, ctx.connected_support, steps)


@dataclass
class FoldingReport:
    height: int
    unfolded_height: int
    folded: dict
    barred: dict              # bar image -> set of unfolded preimages
    missing: list             # folded roots not hit by bar
    extra: list               # bar images that are not folded roots
    bad_preimages: list       # (folded real root, number of preimage orbits, kinds)

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra

    @property
    def ok(self) -> bool:
        return self.equal and not self.bad_preimages


def verify_folding_lemma(fs: FoldedSystem, bound: int, unfolded_height: int | None = None) -> FoldingReport:
    if unfolded_height is None:
        unfolded_height = 2 * bound
    unfolded = enumerate_roots(fs.graph, unfolded_height)
    barred: dict = {}
    for r in unfolded:
        b = bar(fs, r)
        if sum(b) <= bound:
            barred.setdefault(b, set()).add(r)
    folded = enumerate_folded_roots(fs, bound)
    missing = sorted(set(folded) - set(barred))
    extra = sorted(set(barred) - set(folded))
    bad = []
    for g_root, kind in sorted(folded.items()):
        if kind != REAL or g_root not in barred:
            continue
        pre = barred[g_root]
        orbits = {min(r, pi_image(fs, r)) for r in pre}
        kinds = sorted({unfolded[r] for r in pre})
        if len(orbits) != 1 or kinds != [REAL]:
            bad.append((g_root, len(orbits), kinds))
    return FoldingReport(bound, unfolded_height, folded, barred, missing, extra, bad)


__all__ = ["GCM", "gcm_from_graph", "tits_pairing", "reflect", "classify_root", "enumerate_roots",
           "fold", "fold_quiver", "bar", "enumerate_folded_roots", "verify_folding_lemma", "FoldedSystem",
           "FoldingReport", "REAL", "IMAGINARY", "NOT_A_ROOT", "RootError", "FoldingError", "GraphError",
           "height", "support", "vec", "as_dict", "in_lattice", "project", "classify_folded_root",
           "folded_reflect", "pi_image", "simple_root", "filter_height"]
