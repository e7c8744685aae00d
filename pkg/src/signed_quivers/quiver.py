"""Signed quivers, their symmetric doubles, and the Del / Ins operations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph


# -- errors -------------------------------------------------------------------
class QuiverError(ValueError):
    """Base class; `violations` lists every problem found, first one raised."""

    def __init__(self, message: str, element: str | None = None):
        super().__init__(message)
        self.element = element
        self.violations = [self]


class Axiom1Violation(QuiverError):
    """A vertex with a twin carries a sign."""


class Axiom2Violation(QuiverError):
    """Non-loop arrow sign disagrees with its endpoints being twins."""


class Axiom3Violation(QuiverError):
    """Loop sign disagrees with its vertex sign."""


class DanglingTwin(QuiverError):
    """Twin pairing is not a fixed-point-free involution."""


class UnknownEndpoint(QuiverError):
    """Arrow endpoint is not a vertex."""


class DuplicateId(QuiverError):
    pass


class BadSign(QuiverError):
    pass


class OperationError(QuiverError):
    """Precondition of del/ins/double not met."""


# -- data -----------------------------------------------------------------------
@dataclass(frozen=True)
class Vertex:
    id: str
    sign: int = 0
    twin: str | None = None


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str
    sign: int = 0

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


def _violations(vertices, arrows) -> list[QuiverError]:
    out: list[QuiverError] = []
    vmap = {}
    for v in vertices:
        if v.id in vmap:
            out.append(DuplicateId(f"vertex id {v.id!r} used twice", v.id))
        vmap[v.id] = v
        if v.sign not in (-1, 0, 1):
            out.append(BadSign(f"vertex {v.id}: sign {v.sign} not in -1,0,1", v.id))
    for v in vertices:
        if v.twin is None:
            continue
        t = vmap.get(v.twin)
        if t is None or t.twin != v.id or v.twin == v.id:
            out.append(DanglingTwin(f"vertex {v.id}: twin {v.twin!r} does not pair back", v.id))
        if v.sign != 0:
            out.append(Axiom1Violation(f"vertex {v.id} has twin {v.twin} but sign {v.sign}", v.id))
    seen_arrows = set()
    for a in arrows:
        if a.id in seen_arrows:
            out.append(DuplicateId(f"arrow id {a.id!r} used twice", a.id))
        seen_arrows.add(a.id)
        if a.sign not in (-1, 0, 1):
            out.append(BadSign(f"arrow {a.id}: sign {a.sign} not in -1,0,1", a.id))
        missing = [x for x in (a.tail, a.head) if x not in vmap]
        if missing:
            out.append(UnknownEndpoint(f"arrow {a.id}: unknown endpoint {missing[0]!r}", a.id))
            continue
        if a.is_loop:
            if (a.sign != 0) != (vmap[a.tail].sign != 0):
                out.append(Axiom3Violation(
                    f"loop {a.id} has sign {a.sign} at vertex {a.tail} of sign {vmap[a.tail].sign}", a.id))
        else:
            twins = vmap[a.tail].twin == a.head
            if twins and a.sign == 0:
                out.append(Axiom2Violation(f"arrow {a.id} joins twins {a.tail},{a.head} but is unsigned", a.id))
            if not twins and a.sign != 0:
                out.append(Axiom2Violation(
                    f"arrow {a.id} is signed but {a.tail},{a.head} are not twins", a.id))
    return out


@dataclass(frozen=True)
class SignedQuiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]
    _vmap: dict = field(default=None, compare=False, repr=False, hash=False)
    _amap: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        problems = _violations(self.vertices, self.arrows)
        if problems:
            first = problems[0]
            first.violations = problems
            raise first
        object.__setattr__(self, "_vmap", {v.id: v for v in self.vertices})
        object.__setattr__(self, "_amap", {a.id: a for a in self.arrows})

    # structural equality ignores listing order
    def key(self):
        return (frozenset(self.vertices), frozenset(self.arrows))

    def __eq__(self, other):
        if not isinstance(other, SignedQuiver):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def vertex_ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    @property
    def arrow_ids(self) -> list[str]:
        return [a.id for a in self.arrows]

    def vertex(self, v: str) -> Vertex:
        try:
            return self._vmap[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def arrow(self, a: str) -> Arrow:
        try:
            return self._amap[a]
        except KeyError:
            raise KeyError(f"unknown arrow {a!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vmap

    def has_arrow(self, a: str) -> bool:
        return a in self._amap

    def sign(self, v: str) -> int:
        return self.vertex(v).sign

    def twin(self, v: str) -> str | None:
        return self.vertex(v).twin

    def incident(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if v in (a.tail, a.head)]

    @property
    def twin_pair_count(self) -> int:
        return sum(1 for v in self.vertices if v.twin is not None) // 2

    def is_plain(self) -> bool:
        """No signs and no twins: an ordinary quiver."""
        return all(v.sign == 0 and v.twin is None for v in self.vertices) and all(
            a.sign == 0 for a in self.arrows)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: set() for v in self._vmap}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        start = self.vertices[0].id
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    def edge_pairs(self) -> list[tuple[str, str]]:
        return [(a.tail, a.head) for a in self.arrows]


def signed_quiver(vertices, arrows) -> SignedQuiver:
    """Build from loose tuples/dicts: (id, sign[, twin]) and (id, tail, head[, sign])."""
    vs = []
    for v in vertices:
        if isinstance(v, Vertex):
            vs.append(v)
        elif isinstance(v, dict):
            vs.append(Vertex(str(v["id"]), int(v.get("sign", 0)),
                             None if v.get("twin") is None else str(v["twin"])))
        elif isinstance(v, str):
            vs.append(Vertex(v))
        else:
            vs.append(Vertex(str(v[0]), int(v[1]) if len(v) > 1 else 0,
                             str(v[2]) if len(v) > 2 and v[2] is not None else None))
    ars = []
    for a in arrows:
        if isinstance(a, Arrow):
            ars.append(a)
        elif isinstance(a, dict):
            ars.append(Arrow(str(a["id"]), str(a["tail"]), str(a["head"]), int(a.get("sign", 0))))
        else:
            ars.append(Arrow(str(a[0]), str(a[1]), str(a[2]), int(a[3]) if len(a) > 3 else 0))
    return SignedQuiver(tuple(vs), tuple(ars))


def validate_signed_quiver(raw) -> SignedQuiver:
    """Accepts a SignedQuiver or a mapping {"vertices": [...], "arrows": [...]}.

    Raises the first violation; `exc.violations` lists them all.
    """
    if isinstance(raw, SignedQuiver):
        return raw
    if isinstance(raw, SymmetricQuiver):
        return raw.quiver
    return signed_quiver(raw.get("vertices", []), raw.get("arrows", []))


# -- star naming ------------------------------------------------------------------
def star_name(x: str) -> str:
    return x[:-1] if x.endswith("*") else x + "*"


def _fresh(base: str, used: set) -> str:
    name = base
    while name in used:
        name = name + "'"
    return name


# -- symmetric quivers --------------------------------------------------------------
@dataclass(frozen=True)
class SymmetricQuiver:
    """A signed quiver with an involution on vertices and arrows reversing arrows."""

    quiver: SignedQuiver
    vstar: dict
    astar: dict
    base: SignedQuiver | None = None

    def __post_init__(self):
        q = self.quiver
        for v in q.vertex_ids:
            w = self.vstar.get(v)
            if w is None or self.vstar.get(w) != v:
                raise OperationError(f"star is not an involution at vertex {v}", v)
        for a in q.arrows:
            b = self.astar.get(a.id)
            if b is None or self.astar.get(b) != a.id:
                raise OperationError(f"star is not an involution at arrow {a.id}", a.id)
            sb = q.arrow(b)
            if sb.tail != self.vstar[a.head] or sb.head != self.vstar[a.tail]:
                raise OperationError(f"star of arrow {a.id} does not reverse it", a.id)

    def __eq__(self, other):
        if not isinstance(other, SymmetricQuiver):
            return NotImplemented
        return self.quiver == other.quiver and self.vstar == other.vstar and self.astar == other.astar

    def __hash__(self):
        return hash(self.quiver)

    @property
    def vertex_ids(self) -> list[str]:
        return self.quiver.vertex_ids

    @property
    def arrow_ids(self) -> list[str]:
        return self.quiver.arrow_ids

    def arrow(self, a: str) -> Arrow:
        return self.quiver.arrow(a)

    def sign(self, v: str) -> int:
        return self.quiver.sign(v)

    def star(self, x: str) -> str:
        if x in self.vstar:
            return self.vstar[x]
        if x in self.astar:
            return self.astar[x]
        raise KeyError(f"unknown vertex or arrow {x!r}")

    def vertex_orbits(self) -> list[tuple[str, ...]]:
        """Star orbits of vertices, each listed once in vertex order."""
        seen, out = set(), []
        for v in self.vertex_ids:
            if v in seen:
                continue
            w = self.vstar[v]
            seen.update((v, w))
            out.append((v,) if v == w else (v, w))
        return out

    def arrow_orbits(self) -> list[tuple[str, ...]]:
        seen, out = set(), []
        for a in self.arrow_ids:
            if a in seen:
                continue
            b = self.astar[a]
            seen.update((a, b))
            out.append((a,) if a == b else (a, b))
        return out

    def graph(self) -> Graph:
        """Underlying graph; raises GraphError if there are loops."""
        return Graph.from_pairs(self.vertex_ids, self.quiver.edge_pairs())

    def half(self) -> SignedQuiver:
        """A signed quiver whose double is this one (one arrow per star orbit)."""
        keep = [self.arrow(orb[0]) for orb in self.arrow_orbits()]
        return SignedQuiver(self.quiver.vertices, tuple(keep))

    def equivalent(self, other: SymmetricQuiver) -> bool:
        """Same vertices, signs, vertex star and star-orbit arrow multiset."""
        if set(self.vertex_ids) != set(other.vertex_ids) or self.vstar != other.vstar:
            return False
        if any(self.sign(v) != other.sign(v) for v in self.vertex_ids):
            return False

        def orbit_key(sq):
            keys = []
            for orb in sq.arrow_orbits():
                keys.append(tuple(sorted((sq.arrow(x).tail, sq.arrow(x).head, sq.arrow(x).sign) for x in orb)))
            return sorted(keys)

        return orbit_key(self) == orbit_key(other)


def double(q) -> SymmetricQuiver:
    """Add a twin j* for every single unsigned vertex and phi*: q* -> p* per unsigned arrow."""
    if isinstance(q, SymmetricQuiver):
        return q
    used_v = set(q.vertex_ids)
    vstar, new_vertices = {}, []
    verts = {v.id: v for v in q.vertices}
    for v in q.vertices:
        if v.sign != 0:
            vstar[v.id] = v.id
        elif v.twin is not None:
            vstar[v.id] = v.twin
        elif v.id not in vstar:
            w = _fresh(star_name(v.id), used_v)
            used_v.add(w)
            vstar[v.id], vstar[w] = w, v.id
            verts[v.id] = Vertex(v.id, 0, w)
            new_vertices.append(Vertex(w, 0, v.id))
    vertices = tuple(verts[v.id] for v in q.vertices) + tuple(new_vertices)

    used_a = set(q.arrow_ids)
    astar, arrows = {}, list(q.arrows)
    for a in q.arrows:
        if a.sign != 0:
            astar[a.id] = a.id
            continue
        b = _fresh(star_name(a.id), used_a)
        used_a.add(b)
        astar[a.id], astar[b] = b, a.id
        arrows.append(Arrow(b, vstar[a.head], vstar[a.tail], 0))
    return SymmetricQuiver(SignedQuiver(vertices, tuple(arrows)), vstar, astar, base=q)


def s_sign(sq: SymmetricQuiver, phi: str) -> int:
    """-1 iff exactly one of sigma(phi) = -1, sigma(h phi) = -1."""
    a = sq.arrow(phi)
    neg_arrow = a.sign == -1
    neg_head = sq.sign(a.head) == -1
    return -1 if neg_arrow != neg_head else 1


def _check_keys(vertex_ids, alpha):
    if set(alpha) != set(vertex_ids):
        raise KeyError(f"dimension vector keys {sorted(alpha)} do not match vertices {sorted(vertex_ids)}")


def is_sign_matched(q, alpha: dict) -> bool:
    sq = q.quiver if isinstance(q, SymmetricQuiver) else q
    _check_keys(sq.vertex_ids, alpha)
    for v in sq.vertices:
        if v.twin is not None and alpha[v.id] != alpha[v.twin]:
            return False
        if v.sign == -1 and alpha[v.id] % 2:
            return False
    return True


def extend_dimension(q: SignedQuiver, alpha: dict) -> dict:
    if not is_sign_matched(q, alpha):
        raise ValueError("dimension vector is not sign-matched")
    sq = double(q)
    return {v: alpha[v] if v in alpha else alpha[sq.vstar[v]] for v in sq.vertex_ids}


# -- Del / Ins ---------------------------------------------------------------------------
def del_target(q: SignedQuiver, i: str) -> tuple[Arrow, str, str]:
    """(phi, j, j*) for Del at i, checking the preconditions."""
    v = q.vertex(i)
    if v.sign == 0:
        raise OperationError(f"Del needs a signed vertex, {i} is unsigned", i)
    inc = q.incident(i)
    if len(inc) != 1:
        raise OperationError(f"Del needs exactly one arrow at {i}, found {len(inc)}", i)
    phi = inc[0]
    if phi.is_loop:
        raise OperationError(f"the arrow {phi.id} at {i} is a loop", i)
    j = phi.head if phi.tail == i else phi.tail
    jv = q.vertex(j)
    if jv.sign != 0:
        jstar = j
    elif jv.twin is not None:
        jstar = jv.twin
    else:
        jstar = _fresh(star_name(j), set(q.vertex_ids) - {i})
    return phi, j, jstar


def del_quiver(q: SignedQuiver, i: str) -> SignedQuiver:
    """Replace the signed leaf i by j* and its arrow by a sigma(i)-signed arrow j -- j*."""
    phi, j, jstar = del_target(q, i)
    sign = q.sign(i)
    vertices = []
    for v in q.vertices:
        if v.id == i:
            continue
        if v.id == j and jstar != j:
            v = Vertex(j, 0, jstar)
        vertices.append(v)
    if jstar != j and not q.has_vertex(jstar):
        vertices.append(Vertex(jstar, 0, j))
    # psi runs t(gamma) -> h(gamma') where gamma has head i
    tail, head = (j, jstar) if phi.head == i else (jstar, j)
    arrows = [a for a in q.arrows if a.id != phi.id] + [Arrow(phi.id, tail, head, sign)]
    return SignedQuiver(tuple(vertices), tuple(arrows))


def ins_quiver(q: SignedQuiver, phi: str, vertex_id: str | None = None) -> SignedQuiver:
    """Insert a sigma(phi)-signed vertex a; phi becomes unsigned psi: t(phi) -> a."""
    a = q.arrow(phi)
    if a.sign == 0:
        raise OperationError(f"Ins needs a signed arrow, {phi} is unsigned", phi)
    if a.is_loop:
        raise OperationError(f"Ins needs a non-loop arrow, {phi} is a loop", phi)
    new = vertex_id or _fresh(f"{phi}.a", set(q.vertex_ids))
    if q.has_vertex(new):
        raise OperationError(f"vertex id {new!r} already used", new)
    l, lstar = a.tail, a.head
    arrows = [b for b in q.arrows if b.id != phi] + [Arrow(phi, l, new, 0)]
    lstar_isolated = not any(lstar in (b.tail, b.head) for b in arrows)
    vertices = []
    for v in q.vertices:
        if v.id == lstar and lstar_isolated:
            continue
        if v.id == l and lstar_isolated:
            v = Vertex(l, 0, None)
        vertices.append(v)
    vertices.append(Vertex(new, a.sign, None))
    return SignedQuiver(tuple(vertices), tuple(arrows))


# -- folding data -------------------------------------------------------------------------
@dataclass(frozen=True)
class FoldingData:
    pi: dict
    sigma: dict

    def __post_init__(self):
        for v, w in self.pi.items():
            if self.pi.get(w) != v:
                raise ValueError(f"pi is not an involution at {v}")
        for v in self.sigma:
            if self.pi.get(v) != v:
                raise ValueError(f"sign given at non-fixed vertex {v}")
            if self.sigma[v] not in (1, -1):
                raise ValueError(f"sign at {v} must be +1 or -1")
        for v, w in self.pi.items():
            if v == w and v not in self.sigma:
                raise ValueError(f"fixed vertex {v} needs a sign")


@dataclass(frozen=True)
class Unsupported:
    reason: str

    def __bool__(self):
        return False


def folding_data(q: SignedQuiver):
    """(graph of the double, FoldingData) or Unsupported(reason)."""
    for a in q.arrows:
        if a.is_loop:
            return Unsupported(f"arrow {a.id} is a loop")
        if a.sign != 0:
            return Unsupported(f"arrow {a.id} is signed")
        if q.sign(a.tail) != 0 and q.sign(a.head) != 0:
            return Unsupported(f"arrow {a.id} joins signed vertices {a.tail},{a.head}")
    sq = double(q)
    g = sq.graph()
    pi = dict(sq.vstar)
    for u, v, _ in g.edges:
        if {pi[u], pi[v]} == {u, v}:
            return Unsupported(f"edge {u}-{v} is stable under the involution")
    sigma = {v: sq.sign(v) for v in sq.vertex_ids if pi[v] == v}
    return g, FoldingData(pi, sigma)
