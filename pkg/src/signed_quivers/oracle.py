"""Exhaustive search over a prime field for small dimension vectors.

For every dimension vector in a box, all representations of the double and
all signed forms are enumerated.  A symmetric representation (V, J) splits
orthogonally exactly when some idempotent e != 0, 1 of End(V) is
self-adjoint (J_i e_i = e_{i*}^T J_i), so only that subspace is scanned.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .forms import _assemble_form, signed_form_space
from .linalg import GF, Field, Mat, kernel_matrix
from .quiver import SignedQuiver, double, is_sign_matched
from .reps import Representation, hom_basis

DEFAULT_BUDGET = 10 ** 9


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class OracleResult:
    vertices: list
    dims: set           # tuples in `vertices` order
    searched: int       # representations visited

    def as_dicts(self) -> list:
        return [dict(zip(self.vertices, t)) for t in sorted(self.dims)]


def _form_param_count(sq, dims) -> int:
    n = 0
    for orb in sq.vertex_orbits():
        i = orb[0]
        r, c = dims[sq.vstar[i]], dims[i]
        if len(orb) == 2:
            n += r * c
        else:
            n += c * (c + 1) // 2 if sq.sign(i) == 1 else c * (c - 1) // 2
    return n


def search_space(sq, box: dict, p: int) -> int:
    total = 0
    for dims in _boxed(sq, box):
        entries = sum(dims[a.head] * dims[a.tail] for a in sq.quiver.arrows)
        total += p ** (entries + _form_param_count(sq, dims))
    return total


def _boxed(sq, box):
    ids = sq.vertex_ids
    for t in itertools.product(*(range(box[v] + 1) for v in ids)):
        if any(t):
            yield dict(zip(ids, t))


def _span_points(basis: Mat, p: int):
    """Every vector in the column span of basis (as coordinate lists)."""
    f = basis.field
    rows = basis.tolist()
    for coeffs in itertools.product(range(p), repeat=basis.cols):
        yield [sum((x * f(c) for x, c in zip(r, coeffs)), f.zero) for r in rows]


def _self_adjoint_basis(v: Representation, j) -> list:
    hb = hom_basis(v, v)
    sq, f = v.quiver, v.field
    if hb.dim == 0:
        return []
    rows = []
    for i in sq.vertex_ids:
        r, c = v.dims[sq.vstar[i]], v.dims[i]
        if r == 0 or c == 0:
            continue
        cols = [(j[i] @ e[i] - e[sq.vstar[i]].T @ j[i]).entries() for e in hb.basis]
        for k in range(r * c):
            rows.append([col[k] for col in cols])
    if not rows:
        return hb.basis
    m = Mat(f, len(rows), hb.dim, [x for row in rows for x in row])
    k = kernel_matrix(m)
    return [hb.combine([k[a, b] for a in range(k.rows)]) for b in range(k.cols)]


def _has_orthogonal_splitting(v: Representation, j, p: int) -> bool:
    sq = v.quiver
    basis = _self_adjoint_basis(v, j)
    if len(basis) <= 1:
        return False
    f = v.field
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        e = {i: sum((b[i] * f(c) for b, c in zip(basis, coeffs) if c),
                    Mat.zeros(f, v.dims[i], v.dims[i])) for i in sq.vertex_ids}
        if all((e[i] @ e[i]) == e[i] for i in sq.vertex_ids):
            ident = all(e[i] == Mat.identity(f, v.dims[i]) for i in sq.vertex_ids)
            if not ident:
                return True
    return False


def _symmetric_indecomposable_exists(sq, dims: dict, f: Field, p: int, counter: list) -> bool:
    arrows = sq.quiver.arrows
    shapes = [(a.id, dims[a.head], dims[a.tail]) for a in arrows]
    sizes = [r * c for _, r, c in shapes]
    orbit_heads = [orb[0] for orb in sq.vertex_orbits()]
    for flat in itertools.product(range(p), repeat=sum(sizes)):
        counter[0] += 1
        mats, pos = {}, 0
        for (aid, r, c), s in zip(shapes, sizes):
            mats[aid] = Mat(f, r, c, list(flat[pos:pos + s]))
            pos += s
        v = Representation(sq, dims, mats, f)
        basis, entries = signed_form_space(v)
        if basis.cols == 0:
            continue
        for x in _span_points(basis, p):
            j = _assemble_form(sq, dims, entries, x, f)
            if not all(j[i].is_invertible() for i in orbit_heads):
                continue
            if not _has_orthogonal_splitting(v, j, p):
                return True
    return False


def brute_force_oracle(q: SignedQuiver, box: dict, p: int = 3, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Dimension vectors <= box (on the double) of indecomposable symmetric reps over F_p."""
    sq = double(q)
    missing = [v for v in sq.vertex_ids if v not in box]
    if missing:
        raise ValueError(f"box lacks vertices {missing}")
    size = search_space(sq, box, p)
    if size > budget:
        raise BudgetExceeded(f"search space {size} exceeds budget {budget}")
    f = GF(p)
    found, counter = set(), [0]
    for dims in _boxed(sq, box):
        if not is_sign_matched(sq, dims):
            continue   # no nondegenerate signed form exists at all
        if _symmetric_indecomposable_exists(sq, dims, f, p, counter):
            found.add(tuple(dims[v] for v in sq.vertex_ids))
    return OracleResult(list(sq.vertex_ids), found, counter[0])
