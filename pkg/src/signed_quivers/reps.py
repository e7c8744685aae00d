"""Representations of symmetric quivers, duals, signed forms and tau."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import (QQ, Field, LinalgError, Mat, block_diag, block_matrix, column_basis, hstack, in_span,
                     kernel_matrix, solve)
from .quiver import SymmetricQuiver, s_sign


class RepError(ValueError):
    pass


class Representation:
    """Dimension per vertex and a dims(h) x dims(t) matrix per arrow."""

    __slots__ = ("quiver", "field", "dims", "mats")

    def __init__(self, quiver: SymmetricQuiver, dims: dict, mats: dict, field: Field = QQ):
        if set(dims) != set(quiver.vertex_ids):
            raise RepError(f"dims keyed by {sorted(dims)}, quiver has {sorted(quiver.vertex_ids)}")
        if set(mats) != set(quiver.arrow_ids):
            raise RepError(f"matrices given for {sorted(mats)}, quiver has {sorted(quiver.arrow_ids)}")
        for a in quiver.quiver.arrows:
            m = mats[a.id]
            if m.field != field:
                raise RepError(f"arrow {a.id}: matrix over {m.field.name}, expected {field.name}")
            if m.shape != (dims[a.head], dims[a.tail]):
                raise RepError(f"arrow {a.id}: shape {m.shape}, expected {(dims[a.head], dims[a.tail])}")
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims[v]) for v in quiver.vertex_ids}
        self.mats = {a: mats[a] for a in quiver.arrow_ids}

    @classmethod
    def from_lists(cls, quiver: SymmetricQuiver, dims: dict, mats: dict, field: Field = QQ):
        out = {}
        for a in quiver.quiver.arrows:
            rows = mats.get(a.id)
            r, c = dims[a.head], dims[a.tail]
            if rows is None or r == 0 or c == 0:
                out[a.id] = Mat.zeros(field, r, c)
            else:
                out[a.id] = Mat.from_rows(rows, field)
        return cls(quiver, dims, out, field)

    @classmethod
    def zero(cls, quiver: SymmetricQuiver, field: Field = QQ, dims: dict | None = None):
        dims = dims or {v: 0 for v in quiver.vertex_ids}
        mats = {a.id: Mat.zeros(field, dims[a.head], dims[a.tail]) for a in quiver.quiver.arrows}
        return cls(quiver, dims, mats, field)

    def __getitem__(self, arrow: str) -> Mat:
        return self.mats[arrow]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero_dim(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and self.dims == other.dims and self.mats == other.mats)

    def __hash__(self):
        return hash((tuple(sorted(self.dims.items())), tuple(sorted((a, hash(m)) for a, m in self.mats.items()))))

    def __repr__(self) -> str:
        d = ",".join(f"{v}:{n}" for v, n in self.dims.items())
        return f"Representation(dims={{{d}}})"

    def with_mats(self, mats: dict) -> Representation:
        return Representation(self.quiver, self.dims, mats, self.field)


class SignedForm:
    """J_i : V(i) -> V(i*)^*, stored as dims(i*) x dims(i) matrices."""

    __slots__ = ("mats",)

    def __init__(self, mats: dict):
        self.mats = dict(mats)

    def __getitem__(self, v: str) -> Mat:
        return self.mats[v]

    def __eq__(self, other):
        return isinstance(other, SignedForm) and self.mats == other.mats

    def __repr__(self):
        return f"SignedForm({self.mats!r})"

    def problems(self, sq: SymmetricQuiver, dims: dict) -> list[str]:
        """Def 3.8 checks: shapes, twin transposes, (anti)symmetry, invertibility."""
        out = []
        if set(self.mats) != set(sq.vertex_ids):
            return [f"form keyed by {sorted(self.mats)}, expected {sorted(sq.vertex_ids)}"]
        for v in sq.vertex_ids:
            w = sq.vstar[v]
            j = self.mats[v]
            if j.shape != (dims[w], dims[v]):
                out.append(f"J_{v} has shape {j.shape}, expected {(dims[w], dims[v])}")
                continue
            if w == v:
                if j.T != j * sq.sign(v):
                    out.append(f"J_{v} transpose is not sigma({v}) * J_{v}")
            elif self.mats[w].shape == j.shape[::-1] and self.mats[w] != j.T:
                out.append(f"J_{w} is not the transpose of J_{v}")
            if not j.is_invertible():
                out.append(f"J_{v} is singular")
        return out

    def is_valid(self, sq: SymmetricQuiver, dims: dict) -> bool:
        return not self.problems(sq, dims)


# -- basic constructions ------------------------------------------------------------
def dual(v: Representation) -> Representation:
    sq = v.quiver
    dims = {i: v.dims[sq.vstar[i]] for i in sq.vertex_ids}
    mats = {}
    for a in sq.arrow_ids:
        mats[a] = v.mats[sq.astar[a]].T * s_sign(sq, a)
    return Representation(sq, dims, mats, v.field)


def _check_form_shapes(v: Representation, j: SignedForm):
    sq = v.quiver
    if set(j.mats) != set(sq.vertex_ids):
        raise RepError("form does not cover every vertex")
    for i in sq.vertex_ids:
        if j[i].shape != (v.dims[sq.vstar[i]], v.dims[i]):
            raise RepError(f"J_{i} has shape {j[i].shape}, expected {(v.dims[sq.vstar[i]], v.dims[i])}")


def tau(v: Representation, j: SignedForm) -> Representation:
    _check_form_shapes(v, j)
    d = dual(v)
    sq = v.quiver
    mats = {}
    for a in sq.quiver.arrows:
        try:
            jh_inv = j[a.head].inverse()
        except LinalgError:
            raise RepError(f"J_{a.head} is singular") from None
        mats[a.id] = jh_inv @ d.mats[a.id] @ j[a.tail]
    return Representation(sq, v.dims, mats, v.field)


def is_symmetric(v: Representation, j: SignedForm) -> bool:
    return first_asymmetric_arrow(v, j) is None


def first_asymmetric_arrow(v: Representation, j: SignedForm) -> str | None:
    _check_form_shapes(v, j)
    d = dual(v)
    for a in v.quiver.quiver.arrows:
        if j[a.head] @ v.mats[a.id] != d.mats[a.id] @ j[a.tail]:
            return a.id
    return None


def conjugate(v: Representation, g: dict) -> Representation:
    """Basis change: V'(phi) = g_h V(phi) g_t^{-1}."""
    sq = v.quiver
    mats = {a.id: g[a.head] @ v.mats[a.id] @ g[a.tail].inverse() for a in sq.quiver.arrows}
    return Representation(sq, v.dims, mats, v.field)


def transport_form(j: SignedForm, g: dict, sq: SymmetricQuiver) -> SignedForm:
    """Form matching conjugate(v, g): J'_i = g_{i*}^{-T} J_i g_i^{-1}."""
    return SignedForm({i: g[sq.vstar[i]].inverse().T @ j[i] @ g[i].inverse() for i in sq.vertex_ids})


def minus_at_negative(v: Representation) -> dict:
    """The basis change -Id at -1 vertices, Id elsewhere."""
    sq = v.quiver
    return {i: Mat.scalar(v.field, v.dims[i], -1 if sq.sign(i) == -1 else 1) for i in sq.vertex_ids}


def direct_sum(u: Representation, v: Representation, ju: SignedForm | None = None,
               jv: SignedForm | None = None):
    if u.quiver != v.quiver or u.field != v.field:
        raise RepError("direct sum needs the same quiver and field")
    sq = u.quiver
    dims = {i: u.dims[i] + v.dims[i] for i in sq.vertex_ids}
    mats = {a: block_diag(u.field, [u.mats[a], v.mats[a]]) for a in sq.arrow_ids}
    rep = Representation(sq, dims, mats, u.field)
    if ju is None or jv is None:
        return rep if ju is None and jv is None else (rep, None)
    form = SignedForm({i: block_diag(u.field, [ju[i], jv[i]]) for i in sq.vertex_ids})
    return rep, form


def direct_sum_many(reps, forms=None):
    reps = list(reps)
    if not reps:
        raise RepError("empty direct sum")
    sq, field = reps[0].quiver, reps[0].field
    dims = {i: sum(r.dims[i] for r in reps) for i in sq.vertex_ids}
    mats = {a: block_diag(field, [r.mats[a] for r in reps]) for a in sq.arrow_ids}
    rep = Representation(sq, dims, mats, field)
    if forms is None:
        return rep
    forms = list(forms)
    return rep, SignedForm({i: block_diag(field, [f[i] for f in forms]) for i in sq.vertex_ids})


def hyperbolic(w: Representation) -> tuple[Representation, SignedForm]:
    """W + W* with its canonical form.

    In the coordinates X(i) = W(i) + W*(i) and X(i*)^* = W*(i) + W(i) the
    form is [[0, I], [e_i I, 0]] with e_i = -1 at -1 vertices and +1
    elsewhere; this is the sign placement that makes every arrow equation
    hold under the standard dual basis (see the s_phi bookkeeping).
    """
    sq = w.quiver
    rep = direct_sum(w, dual(w))
    f = w.field
    form = {}
    for i in sq.vertex_ids:
        di, dis = w.dims[i], w.dims[sq.vstar[i]]
        e = -1 if sq.sign(i) == -1 else 1
        top = [Mat.zeros(f, dis, di), Mat.identity(f, dis)]
        bottom = [Mat.scalar(f, di, e), Mat.zeros(f, di, dis)]
        form[i] = block_matrix(f, [top, bottom])
    return rep, SignedForm(form)


# -- hom spaces -------------------------------------------------------------------------
def kron(a: Mat, b: Mat) -> Mat:
    f = a.field
    m = f._flint_mat(a.rows * b.rows, a.cols * b.cols)
    ae, be = a.tolist(), b.tolist()
    for i in range(a.rows):
        for j in range(a.cols):
            x = ae[i][j]
            if x == 0:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    y = be[k][l]
                    if y != 0:
                        m[i * b.rows + k, j * b.cols + l] = x * y
    return Mat._wrap(f, m)


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    basis: list   # list of dict vertex -> Mat (target dim x source dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> dict:
        sq = self.source.quiver
        f = self.source.field
        out = {}
        for i in sq.vertex_ids:
            acc = Mat.zeros(f, self.target.dims[i], self.source.dims[i])
            for c, h in zip(coeffs, self.basis):
                if c != 0:
                    acc = acc + h[i] * c
            out[i] = acc
        return out

    def random_element(self, rng: random.Random, bound: int = 7) -> dict:
        return self.combine([rng.randint(-bound, bound) for _ in self.basis])


def hom_system(u: Representation, v: Representation):
    """Coefficient matrix of V(phi) H(t) - H(h) U(phi) = 0 and the column offsets."""
    if u.quiver != v.quiver or u.field != v.field:
        raise RepError("hom needs the same quiver and field")
    sq, f = u.quiver, u.field
    offsets, col = {}, 0
    for i in sq.vertex_ids:
        offsets[i] = col
        col += v.dims[i] * u.dims[i]
    nrows = sum(v.dims[a.head] * u.dims[a.tail] for a in sq.quiver.arrows)
    m = f._flint_mat(nrows, col)
    row = 0
    for a in sq.quiver.arrows:
        t, h = a.tail, a.head
        r = v.dims[h] * u.dims[t]
        if r == 0:
            continue
        # row-major vec: vec(A X B) = (A kron B^T) vec(X)
        left = kron(v.mats[a.id], Mat.identity(f, u.dims[t]))
        right = kron(Mat.identity(f, v.dims[h]), u.mats[a.id].T)
        for blk, off, sgn in ((left, offsets[t], 1), (right, offsets[h], -1)):
            be = blk.tolist()
            for i in range(blk.rows):
                for j in range(blk.cols):
                    if be[i][j] != 0:
                        m[row + i, off + j] += be[i][j] if sgn > 0 else -be[i][j]
        row += r
    return Mat._wrap(f, m), offsets, col


def hom_basis(u: Representation, v: Representation) -> HomBasis:
    sq, f = u.quiver, u.field
    system, offsets, ncols = hom_system(u, v)
    if ncols == 0:
        return HomBasis(u, v, [])
    if system.rows == 0:
        k = Mat.identity(f, ncols)
    else:
        k = kernel_matrix(system)
    basis = []
    ke = k.tolist()
    for c in range(k.cols):
        h = {}
        for i in sq.vertex_ids:
            r, s = v.dims[i], u.dims[i]
            off = offsets[i]
            h[i] = Mat(f, r, s, [ke[off + x][c] for x in range(r * s)])
        basis.append(h)
    return HomBasis(u, v, basis)


def is_hom(u: Representation, v: Representation, h: dict) -> bool:
    return all(v.mats[a.id] @ h[a.tail] == h[a.head] @ u.mats[a.id] for a in u.quiver.quiver.arrows)


# -- subrepresentations ------------------------------------------------------------------
def is_subrepresentation(v: Representation, w: dict) -> bool:
    for a in v.quiver.quiver.arrows:
        img = v.mats[a.id] @ w[a.tail]
        if img.cols and not in_span(w[a.head], img):
            return False
    return True


def span_basis(m: Mat) -> Mat:
    return column_basis(m)


def perp(v: Representation, j: SignedForm, w: dict) -> dict:
    """W-perp at i is J_i^{-1}(annihilator of W_{i*}) = ker(B_{i*}^T J_i)."""
    sq = v.quiver
    if set(w) != set(sq.vertex_ids):
        raise RepError("subrepresentation must give a span at every vertex")
    if not is_subrepresentation(v, w):
        raise RepError("w is not a subrepresentation")
    out = {}
    for i in sq.vertex_ids:
        b = w[sq.vstar[i]]
        if b.cols == 0:
            out[i] = Mat.identity(v.field, v.dims[i])
        else:
            out[i] = kernel_matrix(b.T @ j[i])
    return out


def same_span(a: Mat, b: Mat) -> bool:
    if a.rows != b.rows:
        return False
    return a.rank() == b.rank() == hstack(a.field, [a, b], rows=a.rows).rank()


def restrict(v: Representation, bases: dict) -> Representation:
    """Representation on a subrepresentation given by independent column bases."""
    sq, f = v.quiver, v.field
    dims = {i: bases[i].cols for i in sq.vertex_ids}
    mats = {}
    for a in sq.quiver.arrows:
        bt, bh = bases[a.tail], bases[a.head]
        if dims[a.tail] == 0 or dims[a.head] == 0:
            mats[a.id] = Mat.zeros(f, dims[a.head], dims[a.tail])
            continue
        x = solve(bh, v.mats[a.id] @ bt)
        if x is None:
            raise RepError(f"span is not closed under arrow {a.id}")
        mats[a.id] = x
    return Representation(sq, dims, mats, f)


def restrict_form(j: SignedForm, sq: SymmetricQuiver, bases: dict) -> SignedForm:
    """Pullback B_{i*}^T J_i B_i of a form to a star-stable family of subspaces."""
    return SignedForm({i: bases[sq.vstar[i]].T @ j[i] @ bases[i] for i in sq.vertex_ids})


# -- random generation -------------------------------------------------------------------
def random_representation(sq: SymmetricQuiver, dims: dict, rng: random.Random, field: Field = QQ,
                          bound: int = 3) -> Representation:
    mats = {}
    for a in sq.quiver.arrows:
        r, c = dims[a.head], dims[a.tail]
        mats[a.id] = Mat(field, r, c, [rng.randint(-bound, bound) for _ in range(r * c)])
    return Representation(sq, dims, mats, field)


def random_form(sq: SymmetricQuiver, dims: dict, rng: random.Random, field: Field = QQ,
                bound: int = 3) -> SignedForm:
    """A random invertible signed form on sign-matched dims."""
    mats = {}
    for orb in sq.vertex_orbits():
        i = orb[0]
        n = dims[i]
        while True:
            m = Mat(field, n, n, [rng.randint(-bound, bound) for _ in range(n * n)])
            if len(orb) == 1:
                m = m + m.T * sq.sign(i)
            if m.is_invertible():
                break
        mats[i] = m
        if len(orb) == 2:
            mats[orb[1]] = m.T
    return SignedForm(mats)


def random_symmetric(sq: SymmetricQuiver, dims: dict, rng: random.Random, field: Field = QQ,
                     bound: int = 3) -> tuple[Representation, SignedForm]:
    """Average of a random V and tau(V): tau is a linear involution, so the result is symmetric."""
    j = random_form(sq, dims, rng, field, bound)
    v = random_representation(sq, dims, rng, field, bound)
    tv = tau(v, j)
    half = field(1) / field(2)
    mats = {a: (v.mats[a] + tv.mats[a]) * half for a in sq.arrow_ids}
    return Representation(sq, dims, mats, field), j
