"""Explicit indecomposables for the finite and tame signed quivers.

Canonical quivers (ids are strings):

* B_n / C_n: path 1 -> 2 -> ... -> n, vertex n signed.
* cycle families with index n: path 1 -> ... -> n+1, both ends signed; the
  double is the cycle 1, 2, ..., n+1, n*, ..., 2*.
* Z_n: path 1 -> ... -> n -> 1*, with 1 and 1* twins.
* D-type families with index n: chi: 1 -> 3, psi: 2 -> 3, then 3 -> ... -> n+1
  with n+1 signed (for n = 2 the vertex 3 is itself the signed centre).
* relatives: Del at the signed leaves of the base quiver.

Roots not covered by a closed formula are realised by a verified search:
random representations first, then random extensions of smaller
indecomposables.  Only results graded Certainly indecomposable are kept;
for a real root the indecomposable is unique, so any hit is the right one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .classify import FamilyTag, classify_family, family_tag_from_label
from .decompose import Verdict, is_indecomposable
from .forms import FormFound, Inconclusive, NoForm, presentation_oracle, solve_signed_form
from .graphs import shape_type
from .linalg import QQ, Field, Mat, block_matrix, hstack, vstack
from .quiver import (SignedQuiver, SymmetricQuiver, del_quiver, double, folding_data, ins_quiver,
                     is_sign_matched, signed_quiver)
from .reps import Representation, hyperbolic
from .roots import (IMAGINARY, REAL, classify_folded_root, classify_root, enumerate_roots, fold, in_lattice,
                    pi_image)

DEFAULT_LAMBDAS = (0, 1, -1, 2)


class CatalogError(ValueError):
    pass


# -- special matrices ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SpecialMatrix:
    kind: str        # "Jordan", "Step", "CoStep", "Identity"
    a: int
    b: object = 0    # lambda for Jordan, s for Step/CoStep

    def realize(self, f: Field = QQ) -> Mat:
        return special_matrix(self, f)


def jordan(d: int, lam, f: Field = QQ) -> Mat:
    if d < 0:
        raise CatalogError("Jordan block size must be nonnegative")
    m = Mat.scalar(f, d, lam)
    e = m.tolist()
    for i in range(d - 1):
        e[i][i + 1] = f.one
    return Mat(f, d, d, [x for r in e for x in r])


def step(r: int, s: int, f: Field = QQ) -> Mat:
    """s x r; the first min(r, s) standard vectors as the first columns."""
    if r < 0 or s < 0:
        raise CatalogError("Step sizes must be nonnegative")
    p = min(r, s)
    return Mat(f, s, r, [1 if (i == j and j < p) else 0 for i in range(s) for j in range(r)])


def costep(r: int, s: int, f: Field = QQ) -> Mat:
    """s x r; the last min(r, s) standard vectors as the last columns."""
    if r < 0 or s < 0:
        raise CatalogError("CoStep sizes must be nonnegative")
    p = min(r, s)
    ent = [0] * (r * s)
    for k in range(p):
        i, j = s - p + k, r - p + k
        ent[i * r + j] = 1
    return Mat(f, s, r, ent)


def special_matrix(spec: SpecialMatrix, f: Field = QQ) -> Mat:
    if spec.kind == "Jordan":
        return jordan(spec.a, spec.b, f)
    if spec.kind == "Step":
        return step(spec.a, int(spec.b), f)
    if spec.kind == "CoStep":
        return costep(spec.a, int(spec.b), f)
    if spec.kind == "Identity":
        return Mat.identity(f, spec.a)
    raise CatalogError(f"unknown special matrix kind {spec.kind!r}")


# -- canonical quivers ----------------------------------------------------------------------------
def _path(n: int, signs: dict):
    verts = [(str(i), signs.get(i, 0)) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return verts, arrows


def finite_quiver(family: str, n: int) -> SignedQuiver:
    if n < 1:
        raise CatalogError("finite families need n >= 1")
    s = 1 if family == "B" else -1
    return signed_quiver(*_path(n, {n: s}))


def cycle_quiver(family: str, n: int) -> SignedQuiver:
    if n < 1:
        raise CatalogError("cycle families need n >= 1")
    ends = {"D2": (1, 1), "C1": (-1, -1), "A2": (-1, 1)}[family]
    return signed_quiver(*_path(n + 1, {1: ends[0], n + 1: ends[1]}))


def z_quiver(n: int) -> SignedQuiver:
    if n < 1:
        raise CatalogError("Z_n needs n >= 1")
    verts = [("1", 0, "1*")] + [(str(i), 0) for i in range(2, n + 1)] + [("1*", 0, "1")]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)] + [(f"a{n}", str(n), "1*")]
    return signed_quiver(verts, arrows)


def dtilde_quiver(family: str, n: int) -> SignedQuiver:
    if n < 2:
        raise CatalogError("D-type families need n >= 2")
    s = 1 if family == "B1" else -1
    verts = [("1", 0), ("2", 0)] + [(str(i), s if i == n + 1 else 0) for i in range(3, n + 2)]
    arrows = [("chi", "1", "3"), ("psi", "2", "3")] + [(f"b{i}", str(i), str(i + 1)) for i in range(3, n + 1)]
    return signed_quiver(verts, arrows)


def loop_quiver(family: str, sign: str) -> SignedQuiver:
    vs = 1 if family == "O" else -1
    return signed_quiver([("1", vs)], [("phi", "1", "1", 1 if sign == "+" else -1)])


def family_quiver(tag) -> SignedQuiver:
    """The canonical signed quiver of a family tag (or label such as 'C_3,-')."""
    if isinstance(tag, str):
        tag = family_tag_from_label(tag)
    f, n, rel = tag.family, tag.n, tag.relative
    if f in ("O", "Sp"):
        return loop_quiver(f, rel)
    if f in ("B", "C"):
        if rel:
            return del_quiver(finite_quiver(f, n), str(n))
        return finite_quiver(f, n)
    if f == "Z":
        return z_quiver(n)
    if f in ("D2", "C1", "A2"):
        q = cycle_quiver(f, n)
        first, last = str(1), str(n + 1)
        dels = []
        if f == "A2":
            if "+" in rel:
                dels.append(last)
            if "-" in rel:
                dels.append(first)
        else:
            dels = [first, last][:len(rel)]
        for v in dels:
            q = del_quiver(q, v)
        return q
    if f in ("B1", "A21"):
        if rel:
            if n < 3:
                raise CatalogError("the edge-centred D-type relatives need n >= 3")
            return del_quiver(dtilde_quiver(f, n), str(n + 1))
        return dtilde_quiver(f, n)
    raise CatalogError(f"no canonical quiver for {tag.label}")


# -- cycles ------------------------------------------------------------------------------------
def cycle_order(sq: SymmetricQuiver) -> list:
    """Vertices of a cycle double in clockwise order, starting at the first vertex."""
    g = sq.graph()
    start = g.vertices[0]
    nbrs = g.neighbors(start)
    if len(g.vertices) == 2:
        return list(g.vertices)
    order = [start, nbrs[0]]
    while len(order) < g.n:
        nxt = [w for w in g.neighbors(order[-1]) if w != order[-2]]
        order.append(nxt[0])
    return order


def cycle_arrows(sq: SymmetricQuiver, order: list) -> list:
    """phi_i joining order[i] and order[i+1] (indices mod length)."""
    out = []
    m = len(order)
    for i in range(m):
        u, v = order[i], order[(i + 1) % m]
        cands = [a.id for a in sq.quiver.arrows if {a.tail, a.head} == {u, v}]
        out.append(cands[0])
    return out


def canonical_cycle_order(sq: SymmetricQuiver) -> list:
    """Clockwise order for the canonical cycle and Z quivers: 1, 2, ..."""
    g = sq.graph()
    if "1" not in g.vertices or "2" not in g.vertices or "2" not in g.neighbors("1"):
        return cycle_order(sq)
    order = ["1", "2"]
    while len(order) < g.n:
        nxt = [w for w in g.neighbors(order[-1]) if w != order[-2]]
        order.append(nxt[0])
    return order


def jordan_cycle_rep(sq: SymmetricQuiver, d: int, lam, f: Field = QQ, order=None) -> Representation:
    """V_lambda^d: J_d(lambda) on phi_1, identities elsewhere (any orientation)."""
    order = order or canonical_cycle_order(sq)
    arrows = cycle_arrows(sq, order)
    dims = {v: d for v in sq.vertex_ids}
    mats = {a: Mat.identity(f, d) for a in sq.arrow_ids}
    mats[arrows[0]] = jordan(d, lam, f)
    return Representation(sq, dims, mats, f)


def cycle_interval_dims(order: list, k: int, l: int, d: int) -> dict:
    """alpha^{k,l,d}: d delta plus 1 on positions k..l clockwise (0-based positions)."""
    m = len(order)
    dims = {v: d for v in order}
    i = k
    while True:
        dims[order[i]] += 1
        if i == l:
            break
        i = (i + 1) % m
    return dims


def real_cycle_rep(sq: SymmetricQuiver, k: int, l: int, d: int, f: Field = QQ, order=None) -> Representation:
    """V^{k,l,d}: Step matrices everywhere, CoStep on phi_l."""
    order = order or canonical_cycle_order(sq)
    arrows = cycle_arrows(sq, order)
    dims = cycle_interval_dims(order, k, l, d)
    if all(dims[v] == d + 1 for v in order):
        raise CatalogError("the interval covers the whole cycle (imaginary root)")
    mats = {}
    for a in sq.quiver.arrows:
        r, s = dims[a.tail], dims[a.head]
        mats[a.id] = costep(r, s, f) if a.id == arrows[l] else step(r, s, f)
    return Representation(sq, dims, mats, f)


# -- D-type -------------------------------------------------------------------------------------
def _dtilde_names(sq: SymmetricQuiver):
    base = sq.base
    chi, psi = base.arrow("chi"), base.arrow("psi")
    return chi.id, psi.id, sq.astar["chi"], sq.astar["psi"]


def dtilde_imaginary_rep(sq: SymmetricQuiver, d: int, lam, f: Field = QQ) -> Representation:
    chi, psi, chis, psis = _dtilde_names(sq)
    arms = {"1", "2", sq.vstar["1"], sq.vstar["2"]}
    dims = {v: d if v in arms else 2 * d for v in sq.vertex_ids}
    i, z = Mat.identity(f, d), Mat.zeros(f, d, d)
    mats = {a: Mat.identity(f, 2 * d) for a in sq.arrow_ids}
    mats[chi] = vstack(f, [i, z], cols=d)
    mats[psi] = vstack(f, [z, i], cols=d)
    mats[chis] = hstack(f, [i, i], rows=d)
    mats[psis] = hstack(f, [i, jordan(d, lam, f)], rows=d)
    return Representation(sq, dims, mats, f)


def dtilde_real_rep(sq: SymmetricQuiver, d: int, f: Field = QQ) -> Representation:
    """Dimension (d, d, 2d+1, d, d) on the five-vertex double."""
    if len(sq.vertex_ids) != 5:
        raise CatalogError("this real family is stated for the five-vertex double")
    chi, psi, chis, psis = _dtilde_names(sq)
    dims = {v: 2 * d + 1 if v == "3" else d for v in sq.vertex_ids}
    i = Mat.identity(f, d)
    zc = Mat.zeros(f, d + 1, d)
    mats = {}
    mats[chi] = vstack(f, [i, zc], cols=d)
    mats[psi] = vstack(f, [i, step(d + 1, d, f).T], cols=d)
    mats[chis] = hstack(f, [i, zc.T], rows=d)
    mats[psis] = hstack(f, [i, costep(d + 1, d, f)], rows=d)
    return Representation(sq, dims, mats, f)


# -- finite -------------------------------------------------------------------------------------
def interval_rep(sq: SymmetricQuiver, dims: dict, f: Field = QQ) -> Representation:
    """0/1 dimension vector with connected support; identity maps inside the support."""
    if any(x not in (0, 1) for x in dims.values()):
        raise CatalogError("interval representations need a 0/1 dimension vector")
    mats = {}
    for a in sq.quiver.arrows:
        r, c = dims[a.head], dims[a.tail]
        mats[a.id] = Mat.identity(f, 1) if r == c == 1 else Mat.zeros(f, r, c)
    return Representation(sq, dims, mats, f)


@dataclass
class HyperbolicOnly:
    w: Representation

    def symmetric(self):
        return hyperbolic(self.w)


def finite_symmetric_rep(q: SignedQuiver, root: dict, seed: int = 0):
    """(rep, form) for a sign-matched root of B_n; HyperbolicOnly(W) otherwise."""
    tag = classify_family(q)
    if tag.family not in ("B", "C") or tag.relative:
        raise CatalogError("finite_symmetric_rep needs a B_n or C_n quiver")
    sq = double(q)
    g = sq.graph()
    res = folding_data(q)
    fs = fold(*res)
    gamma = tuple(root[v] for v in g.vertices)
    if classify_folded_root(fs, gamma) != REAL:
        raise CatalogError(f"{root} is not a root of {tag.label}")
    if classify_root(g, gamma) == REAL:
        rep = interval_rep(sq, dict(zip(g.vertices, gamma)))
        res = solve_signed_form(rep, seed)
        if isinstance(res, FormFound):
            return rep, res.form
        return HyperbolicOnly(rep)
    for alpha in enumerate_roots(g, sum(gamma)):
        if tuple(x + y for x, y in zip(alpha, pi_image(fs, alpha))) == gamma:
            return HyperbolicOnly(interval_rep(sq, dict(zip(g.vertices, alpha))))
    raise CatalogError(f"no preimage found for {root}")


# -- family specs -------------------------------------------------------------------------------
@dataclass(frozen=True)
class FamilySpec:
    tag: FamilyTag
    d: int = 1
    lam: object = 0
    k: int | None = None
    l: int | None = None
    kind: str = "imaginary"     # "imaginary" or "real"

    @classmethod
    def of(cls, label, **kw):
        tag = family_tag_from_label(label) if isinstance(label, str) else label
        return cls(tag, **kw)


def tame_family_rep(spec: FamilySpec, f: Field = QQ) -> Representation:
    tag = spec.tag
    if not tag.is_base:
        raise CatalogError("explicit families are given for base quivers; use Del for relatives")
    if spec.d < 0 or (spec.kind == "imaginary" and spec.d < 1):
        raise CatalogError("illegal multiplicity d")
    sq = double(family_quiver(tag))
    if tag.family in ("D2", "C1", "A2", "Z"):
        if spec.kind == "imaginary":
            return jordan_cycle_rep(sq, spec.d, spec.lam, f)
        m = len(sq.vertex_ids)
        if spec.k is None or spec.l is None or not (0 <= spec.k < m and 0 <= spec.l < m):
            raise CatalogError("real cycle family needs positions 0 <= k, l < cycle length")
        return real_cycle_rep(sq, spec.k, spec.l, spec.d, f)
    if tag.family in ("B1", "A21"):
        if spec.kind == "imaginary":
            return dtilde_imaginary_rep(sq, spec.d, spec.lam, f)
        return dtilde_real_rep(sq, spec.d, f)
    if tag.family in ("O", "Sp"):
        if spec.kind != "imaginary":
            raise CatalogError("loop families only have Jordan blocks")
        m = jordan(spec.d, spec.lam, f)
        return Representation(sq, {"1": spec.d}, {"phi": m}, f)
    raise CatalogError(f"{tag.label} is not a tame family")


def zn_odd_witness(n: int, m: int, f: Field = QQ):
    """W + W* of dimension (2m+1) delta on Z_n, with W = m+1 on 1..n and m on the starred half."""
    if m < 0:
        raise CatalogError("m must be nonnegative")
    sq = double(z_quiver(n))
    w = real_cycle_rep(sq, 0, n - 1, m, f)
    return hyperbolic(w)


def zn_symmetric_condition(d: int, lam, n: int = 2, seed: int = 0) -> bool:
    if d < 1:
        raise CatalogError("d must be positive")
    sq = double(z_quiver(n))
    rep = jordan_cycle_rep(sq, d, lam)
    return isinstance(solve_signed_form(rep, seed), FormFound)


# -- orientation ---------------------------------------------------------------------------------
def reorient_quiver(q: SignedQuiver, arrow_id: str) -> SignedQuiver:
    a = q.arrow(arrow_id)
    if a.sign != 0 or a.is_loop:
        raise CatalogError("only unsigned non-loop arrows can be reversed")
    arrows = [(b.id, b.head, b.tail, b.sign) if b.id == arrow_id else (b.id, b.tail, b.head, b.sign)
              for b in q.arrows]
    return signed_quiver([(v.id, v.sign, v.twin) for v in q.vertices], arrows)


def reorient(rep: Representation, arrow_id: str) -> Representation:
    """Reverse arrow_id (and its star) of the base quiver by inverting both maps."""
    sq = rep.quiver
    if sq.base is None:
        raise CatalogError("representation has no base quiver")
    star = sq.astar[arrow_id]
    for b in (arrow_id, star):
        if not rep.mats[b].is_square or not rep.mats[b].is_invertible():
            raise CatalogError(f"map on {b} is not invertible")
    nq = double(reorient_quiver(sq.base, arrow_id))
    mats = dict(rep.mats)
    mats[arrow_id] = rep.mats[arrow_id].inverse()
    mats[star] = rep.mats[star].inverse()
    return Representation(nq, dict(rep.dims), mats, rep.field)


# -- verified search for indecomposables ---------------------------------------------------------
def extension(u: Representation, w: Representation, e: dict) -> Representation:
    """The representation [[U, E], [0, W]] (U a subrepresentation, W the quotient)."""
    sq, f = u.quiver, u.field
    dims = {i: u.dims[i] + w.dims[i] for i in sq.vertex_ids}
    mats = {}
    for a in sq.quiver.arrows:
        t, h = a.tail, a.head
        mats[a.id] = block_matrix(f, [[u.mats[a.id], e[a.id]],
                                      [Mat.zeros(f, w.dims[h], u.dims[t]), w.mats[a.id]]])
    return Representation(sq, dims, mats, f)


def random_extension(u: Representation, w: Representation, rng: random.Random) -> Representation:
    f = u.field
    e = {}
    for a in u.quiver.quiver.arrows:
        r, c = u.dims[a.head], w.dims[a.tail]
        e[a.id] = Mat(f, r, c, [rng.randint(-2, 2) for _ in range(r * c)])
    return extension(u, w, e)


class RootRealizer:
    """Indecomposable representations of a given dimension vector on a Dynkin or affine double."""

    def __init__(self, sq: SymmetricQuiver, seed: int = 0, lambdas=DEFAULT_LAMBDAS, field_: Field = QQ):
        self.sq = sq
        self.g = sq.graph()
        self.kind, self.shape = shape_type(self.g.vertices, [(u, v) for u, v, m in self.g.edges
                                                              for _ in range(m)])
        if self.kind == "wild":
            raise CatalogError("no realisation of roots for wild graphs")
        self.rng = random.Random(seed)
        self.lambdas = tuple(lambdas)
        self.f = field_
        self.pool: dict = {}
        self.real_cache: dict = {}
        self.imag_cache: dict = {}
        self.roots: dict = {}
        self._is_cycle = self.kind == "affine" and self.shape.startswith("A_")
        self._canonical_d = (self.kind == "affine" and self.shape.startswith("D_") and sq.base is not None
                             and sq.base.has_arrow("chi") and sq.base.has_arrow("psi")
                             and sq.base.arrow("chi").head == "3" and sq.base.arrow("psi").head == "3")
        self._delta = None
        if self.kind == "affine":
            self._delta = self._null_root()

    def _null_root(self):
        for h in range(1, 4 * self.g.n + 1):
            for r, k in enumerate_roots(self.g, h).items():
                if k == IMAGINARY:
                    return r
        raise CatalogError("no imaginary root found")

    def vec(self, dims) -> tuple:
        return tuple(dims[v] for v in self.g.vertices)

    def todims(self, t) -> dict:
        return dict(zip(self.g.vertices, t))

    def _root_kind(self, t):
        if t not in self.roots:
            self.roots[t] = classify_root(self.g, t)
        return self.roots[t]

    def _accept(self, rep: Representation, seed: int) -> bool:
        return is_indecomposable(rep, seed) is Verdict.CERTAINLY

    def _remember(self, t, rep):
        self.pool.setdefault(t, [])
        if all(rep != r for r in self.pool[t]):
            self.pool[t].append(rep)

    def real(self, dims) -> Representation:
        t = self.vec(dims) if isinstance(dims, dict) else tuple(dims)
        if t in self.real_cache:
            return self.real_cache[t]
        if self._root_kind(t) != REAL:
            raise CatalogError(f"{t} is not a real root")
        rep = self._real_search(t)
        self.real_cache[t] = rep
        self._remember(t, rep)
        return rep

    def _explicit_real(self, t):
        d = self.todims(t)
        if self.kind == "finite" and all(x in (0, 1) for x in t):
            yield interval_rep(self.sq, d, self.f)
        if self._is_cycle:
            order = canonical_cycle_order(self.sq)
            m = len(order)
            base = min(d[v] for v in order)
            ones = [i for i, v in enumerate(order) if d[v] == base + 1]
            if all(d[v] in (base, base + 1) for v in order) and ones:
                # the positions carrying base + 1 must form one clockwise interval
                for k in ones:
                    if order[(k - 1) % m] not in [order[i] for i in ones]:
                        length = len(ones)
                        l = (k + length - 1) % m
                        try:
                            yield real_cycle_rep(self.sq, k, l, base, self.f, order)
                        except CatalogError:
                            pass
                        break
        if self._canonical_d and self.g.n == 5:
            dd = t[self.g.index("1")]
            if t == tuple(2 * dd + 1 if v == "3" else dd for v in self.g.vertices):
                yield dtilde_real_rep(self.sq, dd, self.f)

    def _real_search(self, t):
        for k, rep in enumerate(self._explicit_real(t)):
            if rep.dims == self.todims(t) and self._accept(rep, k):
                return rep
        for trial in range(4):
            rep = self._random_rep(t)
            if self._accept(rep, trial):
                return rep
        rep = self._extension_search(t)
        if rep is None:
            raise CatalogError(f"could not realise the real root {t}")
        return rep

    def _random_rep(self, t):
        d = self.todims(t)
        f = self.f
        mats = {}
        for a in self.sq.quiver.arrows:
            r, c = d[a.head], d[a.tail]
            mats[a.id] = Mat(f, r, c, [self.rng.randint(-2, 2) for _ in range(r * c)])
        return Representation(self.sq, d, mats, f)

    def _smaller_roots(self, t):
        h = sum(t)
        roots = enumerate_roots(self.g, h - 1)
        out = []
        for r in roots:
            rest = tuple(x - y for x, y in zip(t, r))
            if all(x >= 0 for x in rest) and any(rest) and rest in roots:
                out.append((r, rest))
        out.sort(key=lambda p: (-max(sum(p[0]), sum(p[1])), p))
        return out

    def members(self, t) -> list:
        """Known indecomposables of dimension t (realising it first if needed)."""
        if self._root_kind(t) == REAL:
            self.real(t)
        else:
            self.imaginary(t)
        return self.pool.get(t, [])

    def _extension_search(self, t):
        for sub, quo in self._smaller_roots(t):
            for u in self.members(sub):
                for w in self.members(quo):
                    for trial in range(2):
                        rep = random_extension(u, w, self.rng)
                        if self._accept(rep, trial):
                            return rep
        return None

    def imaginary(self, dims, count: int | None = None) -> list:
        """Sample indecomposables of an imaginary root dimension."""
        t = self.vec(dims) if isinstance(dims, dict) else tuple(dims)
        if t in self.imag_cache:
            return self.imag_cache[t]
        if self._root_kind(t) != IMAGINARY:
            raise CatalogError(f"{t} is not an imaginary root")
        delta = self._delta
        mult = t[0] // delta[0] if delta and delta[0] else None
        out = []
        if delta and mult and tuple(mult * x for x in delta) == t:
            if self._is_cycle:
                out = [jordan_cycle_rep(self.sq, mult, lam, self.f) for lam in self.lambdas]
            elif self._canonical_d:
                out = [dtilde_imaginary_rep(self.sq, mult, lam, self.f) for lam in self.lambdas]
        if not out:
            out = self._generic_imaginary(t, count or len(self.lambdas))
        out = [r for k, r in enumerate(out) if self._accept(r, k)]
        if not out:
            raise CatalogError(f"could not realise the imaginary root {t}")
        self.imag_cache[t] = out
        for r in out:
            self._remember(t, r)
        # non-homogeneous tube modules: extensions of real roots, pooled for later searches
        for sub, quo in self._smaller_roots(t):
            if self._root_kind(sub) != REAL or self._root_kind(quo) != REAL:
                continue
            rep = random_extension(self.real(sub), self.real(quo), self.rng)
            if self._accept(rep, 0):
                self._remember(t, rep)
        return out

    def _generic_imaginary(self, t, count):
        delta = self._delta
        mult = t[0] // delta[0] if delta and delta[0] else 1
        out = []
        if mult == 1:
            tries = 0
            while len(out) < count and tries < 4 * count:
                tries += 1
                rep = self._random_rep(t)
                if self._accept(rep, tries):
                    out.append(rep)
            return out
        # self-extensions of a member one level down by a member of dimension delta
        lower = tuple((mult - 1) * x for x in delta)
        bases = self.imaginary(lower)
        tops = self.imaginary(delta)
        for k, u in enumerate(bases):
            w = tops[k % len(tops)]
            for trial in range(3):
                rep = random_extension(u, u if mult == 2 else w, self.rng)
                if self._accept(rep, trial):
                    out.append(rep)
                    break
        return out


# -- dimension sets ------------------------------------------------------------------------------
@dataclass
class DimEntry:
    dims: dict
    split: bool = False
    hyperbolic: bool = False
    tag: str = "Family"          # "Unique" or "Family"
    root: str = IMAGINARY        # folded root type
    witnesses: list = field(default_factory=list, repr=False, compare=False)

    @property
    def height(self) -> int:
        return sum(self.dims.values())

    @property
    def kinds(self) -> str:
        return "/".join(k for k, on in (("Split", self.split), ("Hyperbolic", self.hyperbolic)) if on)


@dataclass
class DimensionSet:
    quiver: SymmetricQuiver
    height: int
    entries: list
    inconclusive: list = field(default_factory=list)

    @property
    def vertices(self) -> list:
        return list(self.quiver.vertex_ids)

    def vectors(self) -> set:
        return {tuple(e.dims[v] for v in self.vertices) for e in self.entries}

    def get(self, dims) -> DimEntry | None:
        t = tuple(dims[v] for v in self.vertices) if isinstance(dims, dict) else tuple(dims)
        for e in self.entries:
            if tuple(e.dims[v] for v in self.vertices) == t:
                return e
        return None

    def restricted(self, box: dict) -> DimensionSet:
        keep = [e for e in self.entries if all(e.dims[v] <= box[v] for v in self.vertices)]
        return DimensionSet(self.quiver, self.height, keep, self.inconclusive)


class _Collector:
    def __init__(self, sq):
        self.sq = sq
        self.by_key: dict = {}

    def add(self, dims: dict, kind: str, witness=None):
        key = tuple(dims[v] for v in self.sq.vertex_ids)
        e = self.by_key.get(key)
        if e is None:
            e = self.by_key[key] = DimEntry(dict(dims))
        if kind == "Split":
            e.split = True
        else:
            e.hyperbolic = True
        if witness is not None:
            e.witnesses.append((kind, witness[0], witness[1]))
        return e

    def entries(self) -> list:
        return [self.by_key[k] for k in sorted(self.by_key, key=lambda k: (sum(k), k))]


def _form_verdict(rep, seed, inconclusive):
    res = solve_signed_form(rep, seed)
    if isinstance(res, Inconclusive):
        inconclusive.append((dict(rep.dims), res.reason))
    return res


def _loop_dims(q: SignedQuiver, bound: int, seed: int, lambdas) -> DimensionSet:
    sq = double(q)
    col = _Collector(sq)
    inconc = []
    neg = sq.sign("1") == -1
    for n in range(1, bound + 1):
        for k, lam in enumerate(lambdas):
            rep = Representation(sq, {"1": n}, {"phi": jordan(n, lam)})
            res = None if (neg and n % 2) else _form_verdict(rep, seed + k, inconc)
            if isinstance(res, FormFound):
                col.add({"1": n}, "Split", (rep, res.form))
            elif 2 * n <= bound:
                col.add({"1": 2 * n}, "Hyperbolic", hyperbolic(rep))
    for e in col.by_key.values():
        e.root = IMAGINARY
        e.tag = "Unique" if len(e.witnesses) == 1 else "Family"
    return DimensionSet(sq, bound, col.entries(), inconc)


def _plain_dims(q: SignedQuiver, bound: int) -> DimensionSet:
    sq = double(q)
    col = _Collector(sq)
    if any(a.is_loop for a in q.arrows):
        if len(q.vertex_ids) != 1 or len(q.arrows) != 1:
            raise CatalogError("plain quivers with loops are only handled for the one-loop quiver")
        v = q.vertex_ids[0]
        vs = sq.vstar[v]
        for n in range(1, bound // 2 + 1):
            e = col.add({v: n, vs: n}, "Hyperbolic")
            e.root, e.tag = IMAGINARY, "Family"
        return DimensionSet(sq, bound, col.entries())
    from .graphs import Graph
    g = Graph.from_pairs(q.vertex_ids, q.edge_pairs())
    for r, kind in enumerate_roots(g, max(1, bound // 2)).items():
        d = dict(zip(g.vertices, r))
        full = {v: d[v] if v in d else d[sq.vstar[v]] for v in sq.vertex_ids}
        e = col.add(full, "Hyperbolic")
        e.root = kind
        e.tag = "Unique" if kind == REAL else "Family"
    return DimensionSet(sq, bound, col.entries())


def _folded_dims(q: SignedQuiver, bound: int, seed: int, lambdas, witnesses: bool) -> DimensionSet:
    res = folding_data(q)
    if not res:
        raise CatalogError(f"no folding for this quiver: {res.reason}")
    g, fdata = res
    fs = fold(g, fdata)
    sq = double(q)
    realizer = RootRealizer(sq, seed, lambdas)
    col = _Collector(sq)
    inconc = []
    roots = enumerate_roots(g, bound)
    for k, (alpha, kind) in enumerate(sorted(roots.items(), key=lambda p: (sum(p[0]), p[0]))):
        if not in_lattice(fs, alpha):
            pa = pi_image(fs, alpha)
            gamma = tuple(x + y for x, y in zip(alpha, pa))
            # W + W* and its mirror are isometric; count the orbit once
            if alpha <= pa and sum(gamma) <= bound:
                wit = None
                if witnesses:
                    w = realizer.real(alpha) if kind == REAL else realizer.imaginary(alpha)[0]
                    wit = hyperbolic(w)
                col.add(dict(zip(g.vertices, gamma)), "Hyperbolic", wit)
            continue
        reps = [realizer.real(alpha)] if kind == REAL else realizer.imaginary(alpha)
        for j, rep in enumerate(reps):
            r = _form_verdict(rep, seed + 7 * k + j, inconc)
            if isinstance(r, FormFound):
                col.add(dict(zip(g.vertices, alpha)), "Split", (rep, r.form) if witnesses else None)
            elif isinstance(r, NoForm) and 2 * sum(alpha) <= bound:
                double_dims = dict(zip(g.vertices, (2 * x for x in alpha)))
                col.add(double_dims, "Hyperbolic", hyperbolic(rep) if witnesses else None)
    for e in col.by_key.values():
        t = tuple(e.dims[v] for v in g.vertices)
        e.root = classify_folded_root(fs, t)
        e.tag = "Unique" if e.root == REAL else "Family"
    return DimensionSet(sq, bound, col.entries(), inconc)


def _relative_dims(q: SignedQuiver, bound: int, seed: int, lambdas) -> DimensionSet:
    """Indecomposable symmetric reps of q are Del of those W on the Ins-completion with W(psi) onto."""
    from .functors import del_rep
    base, inserted = q, []
    for a in q.arrows:
        if a.sign != 0 and not a.is_loop:
            before = set(base.vertex_ids)
            base = ins_quiver(base, a.id)
            new = [v for v in base.vertex_ids if v not in before]
            inserted.append((new[0], a.id))
    # Del drops the inserted coordinate, which is at most the one before psi
    full = _folded_dims(base, 2 * bound, seed, lambdas, witnesses=True)
    sq = double(q)
    col = _Collector(sq)
    sources: dict = {}
    for e in full.entries:
        for kind, rep, form in e.witnesses:
            if any(rep.mats[arrow].rank() != rep.dims[v] for v, arrow in inserted):
                continue
            cur, cj = rep, form
            for v, _ in reversed(inserted):
                cur, cj = del_rep(cur, v, cj)
            if set(cur.quiver.vertex_ids) != set(sq.vertex_ids):
                raise CatalogError("Del did not return to the original vertex set")
            if sum(cur.dims.values()) > bound:
                continue
            ne = col.add(cur.dims, kind, (cur, cj))
            ne.root, ne.tag = e.root, e.tag
            sources.setdefault(id(ne), set()).add(id(e))
    for ne in col.by_key.values():
        # distinct classes from different base dimensions can collapse onto one vector
        if len(sources[id(ne)]) > 1:
            ne.tag = "Family"
    return DimensionSet(sq, bound, col.entries(), full.inconclusive)


def symmetric_dimension_set(q: SignedQuiver, height: int, seed: int = 0,
                            lambdas=DEFAULT_LAMBDAS) -> DimensionSet:
    """Dimensions of indecomposable symmetric representations of height <= `height`."""
    if height < 1:
        raise CatalogError("height bound must be at least 1")
    tag = classify_family(q)
    if tag.kind == "wild":
        raise CatalogError("wild quivers have no finite description")
    if tag.family in ("FiniteQuiver", "TameQuiver"):
        return _plain_dims(q, height)
    if tag.family in ("O", "Sp"):
        return _loop_dims(q, height, seed, lambdas)
    if any(a.sign != 0 for a in q.arrows):
        return _relative_dims(q, height, seed, lambdas)
    return _folded_dims(q, height, seed, lambdas, witnesses=False)


def folded_reference(q: SignedQuiver, height: int) -> dict:
    """The folded root system of q (vectors on the double) truncated at `height`."""
    from .roots import enumerate_folded_roots
    res = folding_data(q)
    if not res:
        raise CatalogError(res.reason)
    return enumerate_folded_roots(fold(*res), height)


from .oracle import BudgetExceeded, brute_force_oracle  # noqa: E402  (re-exported)

__all__ = ["brute_force_oracle", "BudgetExceeded", "reorient", "reorient_quiver", "zn_odd_witness", "SpecialMatrix", "special_matrix", "jordan", "step", "costep", "family_quiver", "FamilySpec",
           "tame_family_rep", "finite_symmetric_rep", "HyperbolicOnly", "presentation_oracle",
           "zn_symmetric_condition", "symmetric_dimension_set", "DimensionSet", "DimEntry", "RootRealizer",
           "interval_rep", "jordan_cycle_rep", "real_cycle_rep", "dtilde_imaginary_rep", "dtilde_real_rep",
           "cycle_order", "canonical_cycle_order", "cycle_arrows", "extension", "random_extension",
           "folded_reference", "CatalogError", "is_sign_matched"]
