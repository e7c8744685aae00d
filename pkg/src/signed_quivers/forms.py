"""Solving for signed forms and Jordan presentations.

Both problems reduce to: a linear space of candidate matrix tuples (the
kernel of a linear system) in which we need a point where several square
matrices are all invertible.  `find_invertible_point` handles that search:
random integer points first, then an exact zero-polynomial test on a grid
when the space is small, else a bounded-error verdict.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Field, Mat, kernel_matrix
from .quiver import is_sign_matched
from .reps import Representation, SignedForm, dual

SAMPLE_BOUND = 2 ** 16
SAMPLE_TRIALS = 40
GRID_MAX_PARAMS = 3
GRID_BUDGET = 50_000
MAX_ERROR = Fraction(1, 2 ** 40)


class NotSignMatched(ValueError):
    pass


@dataclass(frozen=True)
class Found:
    point: tuple
    method: str   # "sample" or "grid"


@dataclass(frozen=True)
class NoForm:
    exact: bool
    error_bound: Fraction
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class FormFound:
    form: SignedForm
    method: str


def _combine(basis: Mat, coeffs) -> list:
    """basis (n x k) times integer coefficient vector, as a list of n scalars."""
    f = basis.field
    k = basis.cols
    rows = basis.tolist()
    cs = [f(c) for c in coeffs]
    out = []
    for r in rows:
        acc = f.zero
        for x, c in zip(r, cs):
            if x != 0 and c != 0:
                acc += x * c
        out.append(acc)
    assert len(cs) == k
    return out


def find_invertible_point(basis: Mat, blocks, seed: int = 0, *, bound: int = SAMPLE_BOUND,
                          trials: int = SAMPLE_TRIALS):
    """Search the column span of `basis` for a point making every block invertible.

    `blocks(x)` maps a coordinate list (length basis.rows) to the square
    matrices whose determinants must all be nonzero; each block's
    determinant is a polynomial of degree = its size in the k parameters.
    Returns Found, NoForm (exact or bounded error) or Inconclusive.
    """
    k = basis.cols
    f = basis.field
    if k == 0:
        mats = blocks([f.zero] * basis.rows)
        if all(m.is_invertible() for m in mats):
            return Found(tuple(), "sample")
        return NoForm(True, Fraction(0), "only the zero solution")

    rng = random.Random(seed)
    sizes = None
    dead = None   # blocks singular at every sample so far
    for _ in range(trials):
        coeffs = tuple(rng.randint(-bound, bound) for _ in range(k))
        mats = blocks(_combine(basis, coeffs))
        if sizes is None:
            sizes = [m.rows for m in mats]
            dead = set(range(len(mats)))
        bad = {i for i, m in enumerate(mats) if not m.is_invertible()}
        dead &= bad
        if not bad:
            return Found(coeffs, "sample")
    degree = sum(sizes)

    # Exact identically-zero test, block by block, on a (d+1)^k grid.
    grid_cost = sum((sizes[i] + 1) ** k for i in dead)
    if k <= GRID_MAX_PARAMS or grid_cost <= GRID_BUDGET:
        for i in sorted(dead):
            if not _block_nonzero_on_grid(basis, blocks, i, sizes[i], k):
                return NoForm(True, Fraction(0), f"determinant of block {i} vanishes identically")
        # every block determinant is a nonzero polynomial, so the product is
        # too; random points now succeed with probability >= 1 - degree/(2B+1)
        for _ in range(10_000):
            coeffs = tuple(rng.randint(-bound, bound) for _ in range(k))
            if all(m.is_invertible() for m in blocks(_combine(basis, coeffs))):
                return Found(coeffs, "grid")
        raise AssertionError("nonzero determinant polynomial kept vanishing")

    err = Fraction(degree, 2 * bound + 1) ** trials
    if err <= MAX_ERROR:
        return NoForm(False, err, f"{trials} random points all singular")
    return Inconclusive(f"sampling error bound {float(err):.3g} too large")


def _block_nonzero_on_grid(basis, blocks, idx, size, k) -> bool:
    for coeffs in itertools.product(range(size + 1), repeat=k):
        if blocks(_combine(basis, coeffs))[idx].is_invertible():
            return True
    return False


# -- signed forms ---------------------------------------------------------------------------
def _form_parameters(sq, dims):
    """Per vertex, a list of (param, row, col, coeff) describing J_i linearly."""
    entries = {v: [] for v in sq.vertex_ids}
    nparams = 0
    for orb in sq.vertex_orbits():
        i = orb[0]
        r, c = dims[sq.vstar[i]], dims[i]
        if len(orb) == 2:
            for a in range(r):
                for b in range(c):
                    entries[i].append((nparams, a, b, 1))
                    entries[orb[1]].append((nparams, b, a, 1))
                    nparams += 1
        else:
            s = sq.sign(i)
            for a in range(r):
                for b in range(a, c):
                    if a == b:
                        if s == 1:
                            entries[i].append((nparams, a, a, 1))
                            nparams += 1
                        continue
                    entries[i].append((nparams, a, b, 1))
                    entries[i].append((nparams, b, a, s))
                    nparams += 1
    return entries, nparams


def signed_form_space(v: Representation):
    """Kernel basis of the linear system for J, plus the parameter layout."""
    sq, f, dims = v.quiver, v.field, v.dims
    entries, nparams = _form_parameters(sq, dims)
    d = dual(v)
    rows = []
    for a in sq.quiver.arrows:
        t, h = a.tail, a.head
        vm, dm = v.mats[a.id].tolist(), d.mats[a.id].tolist()
        nr, nc = dims[sq.vstar[h]], dims[t]
        if nr == 0 or nc == 0:
            continue
        eq = [[{} for _ in range(nc)] for _ in range(nr)]
        # (J_h V)[r, c] = sum_k J_h[r, k] V[k, c]
        for p, ra, cb, co in entries[h]:
            for c in range(nc):
                x = vm[cb][c]
                if x != 0:
                    eq[ra][c][p] = eq[ra][c].get(p, 0) + co * x
        # (V* J_t)[r, c] = sum_k V*[r, k] J_t[k, c]
        for p, ra, cb, co in entries[t]:
            for r in range(nr):
                x = dm[r][ra]
                if x != 0:
                    eq[r][cb][p] = eq[r][cb].get(p, 0) - co * x
        for r in range(nr):
            for c in range(nc):
                if eq[r][c]:
                    rows.append(eq[r][c])
    if nparams == 0:
        return Mat.zeros(f, 0, 0), entries
    m = f._flint_mat(max(len(rows), 1), nparams)
    for i, row in enumerate(rows):
        for p, x in row.items():
            m[i, p] = x
    system = Mat._wrap(f, m)
    return kernel_matrix(system), entries


def _assemble_form(sq, dims, entries, x, f: Field) -> SignedForm:
    mats = {}
    for v in sq.vertex_ids:
        r, c = dims[sq.vstar[v]], dims[v]
        m = f._flint_mat(r, c)
        for p, a, b, co in entries[v]:
            m[a, b] = x[p] * co
        mats[v] = Mat._wrap(f, m)
    return SignedForm(mats)


def solve_signed_form(v: Representation, seed: int = 0, *, bound: int = SAMPLE_BOUND,
                      trials: int = SAMPLE_TRIALS):
    """FormFound(form) making v symmetric, else NoForm / Inconclusive."""
    sq = v.quiver
    if not is_sign_matched(sq, v.dims):
        raise NotSignMatched("dimension vector is not sign-matched")
    basis, entries = signed_form_space(v)
    orbit_heads = [orb[0] for orb in sq.vertex_orbits()]

    def blocks(x):
        form = _assemble_form(sq, v.dims, entries, x, v.field)
        return [form[i] for i in orbit_heads]

    res = find_invertible_point(basis, blocks, seed, bound=bound, trials=trials)
    if isinstance(res, Found):
        x = _combine(basis, res.point) if basis.cols else [v.field.zero] * basis.rows
        return FormFound(_assemble_form(sq, v.dims, entries, x, v.field), res.method)
    return res


# -- Jordan presentations ---------------------------------------------------------------------
@dataclass(frozen=True)
class PresentationFound:
    J: Mat
    B: Mat
    method: str


def presentation_oracle(a: Mat, j_sign: int, b_sign: int, seed: int = 0, *,
                        bound: int = SAMPLE_BOUND, trials: int = SAMPLE_TRIALS):
    """Invertible J with J^T = j_sign J and B = J a with B^T = b_sign B."""
    if not a.is_square:
        raise ValueError("presentation needs a square matrix")
    if j_sign not in (1, -1) or b_sign not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    n, f = a.rows, a.field
    # unknowns: all n^2 entries of J, row-major
    am = a.tolist()
    rows = []
    for r in range(n):
        for c in range(n):
            row = {}
            # J^T - j_sign J = 0  at (r, c): J[c, r] - j_sign J[r, c]
            row[c * n + r] = row.get(c * n + r, 0) + 1
            row[r * n + c] = row.get(r * n + c, 0) - j_sign
            rows.append(row)
            # (J a)^T - b_sign J a = 0 at (r, c): sum_k J[c,k] a[k,r] - b_sign sum_k J[r,k] a[k,c]
            row = {}
            for k in range(n):
                if am[k][r] != 0:
                    row[c * n + k] = row.get(c * n + k, 0) + am[k][r]
                if am[k][c] != 0:
                    row[r * n + k] = row.get(r * n + k, 0) - b_sign * am[k][c]
            rows.append(row)
    m = f._flint_mat(len(rows), n * n)
    for i, row in enumerate(rows):
        for p, x in row.items():
            if x != 0:
                m[i, p] = x
    basis = kernel_matrix(Mat._wrap(f, m))

    def blocks(x):
        return [Mat(f, n, n, x)]

    res = find_invertible_point(basis, blocks, seed, bound=bound, trials=trials)
    if isinstance(res, Found):
        x = _combine(basis, res.point) if basis.cols else [f.zero] * (n * n)
        j = Mat(f, n, n, x)
        return PresentationFound(j, j @ a, res.method)
    return res
