"""Krull-Schmidt decomposition, indecomposability and isomorphism tests.

Splitting uses Fitting's lemma: for an endomorphism e whose minimal
polynomial factors as a product of pairwise coprime q_k, the representation
is the direct sum of the subrepresentations ker q_k(e).  Random elements of
End(V) are tried first.  When End/rad is a matrix algebra over Q a random
element can have irrational eigenvalues only, so a second pass draws
elements killing a chosen vector; those are zero divisors, hence not
invertible, and when not nilpotent they split V.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from .forms import FormFound, Inconclusive, NoForm, solve_signed_form
from .linalg import Mat, block_diag, coprime_factor_split, hstack, kernel_matrix, minimal_polynomial, poly_at
from .quiver import is_sign_matched
from .reps import (HomBasis, Representation, SignedForm, direct_sum_many, dual, hom_basis, hyperbolic,
                   is_symmetric, restrict)


class Verdict(enum.Enum):
    CERTAINLY = "Certainly"
    CERTAINLY_NOT = "CertainlyNot"
    PROBABLY_YES = "ProbablyYes"
    PROBABLY_NOT = "ProbablyNot"

    def __str__(self):
        return self.value


class InternalPairingFailure(RuntimeError):
    pass


def _total(h: dict, sq, field_) -> Mat:
    return block_diag(field_, [h[i] for i in sq.vertex_ids])


def _fitting_pieces(v: Representation, e: dict):
    """Vertexwise kernel bases of q_k(e) for coprime factors q_k; None if one factor."""
    sq = v.quiver
    total = _total(e, sq, v.field)
    if total.rows == 0:
        return None
    m = minimal_polynomial(total)
    if m.degree() < 1:
        return None
    factors = coprime_factor_split(m)
    if len(factors) < 2:
        return None
    pieces = []
    for q in factors:
        bases = {}
        for i in sq.vertex_ids:
            if v.dims[i] == 0:
                bases[i] = Mat.zeros(v.field, 0, 0)
            else:
                bases[i] = kernel_matrix(poly_at(q, e[i]))
        pieces.append(bases)
    return pieces


def _zero_divisor(v: Representation, hb: HomBasis, rng: random.Random):
    """A random endomorphism vanishing on a random vector at a random vertex."""
    sq = v.quiver
    support = [i for i in sq.vertex_ids if v.dims[i] > 0]
    i0 = rng.choice(support)
    x = Mat.column(v.field, [rng.randint(-5, 5) for _ in range(v.dims[i0])])
    if x.is_zero():
        return None
    cols = [h[i0] @ x for h in hb.basis]
    k = kernel_matrix(hstack(v.field, cols, rows=v.dims[i0]))
    if k.cols == 0:
        return None
    coeffs = k @ Mat.column(v.field, [rng.randint(-7, 7) for _ in range(k.cols)])
    return hb.combine([coeffs[r, 0] for r in range(coeffs.rows)])


def find_splitting(v: Representation, hb: HomBasis | None = None, seed: int = 0, trials: int = 20):
    """Bases of a nontrivial direct sum decomposition of v, or None."""
    if hb is None:
        hb = hom_basis(v, v)
    if hb.dim <= 1:
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        pieces = _fitting_pieces(v, hb.random_element(rng))
        if pieces:
            return pieces
    for _ in range(trials):
        e = _zero_divisor(v, hb, rng)
        if e is None:
            continue
        pieces = _fitting_pieces(v, e)
        if pieces:
            return pieces
    return None


def radical_quotient_dim(v: Representation, hb: HomBasis | None = None) -> int:
    """dim End(v) / rad End(v), the radical being the kernel of the trace form."""
    if hb is None:
        hb = hom_basis(v, v)
    sq, f = v.quiver, v.field
    tots = [_total(h, sq, f) for h in hb.basis]
    n = len(tots)
    if n == 0:
        return 0
    # trace(A B) is the dot product of vec(A) with vec(B^T), so one product gives the Gram matrix
    m = tots[0].rows
    left = Mat(f, n, m * m, [x for t in tots for x in t.entries()])
    cols = Mat(f, n, m * m, [x for t in tots for x in t.T.entries()]).T
    return (left @ cols).rank()


def _compose_bases(parent: dict, child: dict, sq) -> dict:
    out = {}
    for i in sq.vertex_ids:
        p, c = parent[i], child[i]
        if p.cols == 0 or c.cols == 0:
            out[i] = Mat.zeros(p.field, p.rows, c.cols)
        else:
            out[i] = p @ c
    return out


def _identity_bases(v: Representation) -> dict:
    return {i: Mat.identity(v.field, v.dims[i]) for i in v.quiver.vertex_ids}


@dataclass
class Piece:
    rep: Representation
    bases: dict         # columns embed rep into the decomposed representation
    grade: Verdict      # indecomposability grade


def decompose_with_bases(v: Representation, seed: int = 0, trials: int = 20) -> list[Piece]:
    rng = random.Random(seed)
    out: list[Piece] = []
    stack = [(v, _identity_bases(v))]
    while stack:
        w, bases = stack.pop()
        if w.total_dim == 0:
            continue
        hb = hom_basis(w, w)
        if hb.dim == 1:
            out.append(Piece(w, bases, Verdict.CERTAINLY))
            continue
        if radical_quotient_dim(w, hb) == 1:
            out.append(Piece(w, bases, Verdict.CERTAINLY))
            continue
        split = find_splitting(w, hb, rng.randrange(2 ** 32), trials)
        if split is None:
            out.append(Piece(w, bases, Verdict.PROBABLY_YES))
            continue
        for sub in reversed(split):
            stack.append((restrict(w, sub), _compose_bases(bases, sub, w.quiver)))
    return out


def decompose(v: Representation, seed: int = 0, trials: int = 20) -> list[Representation]:
    return [p.rep for p in decompose_with_bases(v, seed, trials)]


def is_indecomposable(v: Representation, seed: int = 0, trials: int = 20) -> Verdict:
    if v.total_dim == 0:
        raise ValueError("the zero representation is not indecomposable")
    hb = hom_basis(v, v)
    if hb.dim == 1:
        return Verdict.CERTAINLY
    if find_splitting(v, hb, seed, trials) is not None:
        return Verdict.CERTAINLY_NOT
    # End/rad one-dimensional: End is local, so v is indecomposable
    if radical_quotient_dim(v, hb) == 1:
        return Verdict.CERTAINLY
    return Verdict.PROBABLY_YES


def is_isomorphic(u: Representation, v: Representation, seed: int = 0, trials: int = 20):
    """Returns (Verdict, isomorphism or None)."""
    if u.quiver != v.quiver or u.field != v.field:
        raise ValueError("isomorphism test needs the same quiver and field")
    if u.dims != v.dims:
        return Verdict.CERTAINLY_NOT, None
    huv = hom_basis(u, v)
    if huv.dim == 0 and u.total_dim > 0:
        return Verdict.CERTAINLY_NOT, None
    hvu = hom_basis(v, u)
    huu = hom_basis(u, u)
    if not (huv.dim == hvu.dim == huu.dim):
        return Verdict.CERTAINLY_NOT, None
    hvv = hom_basis(v, v)
    if hvv.dim != huu.dim:
        return Verdict.CERTAINLY_NOT, None
    rng = random.Random(seed)
    for _ in range(trials):
        h = huv.combine([rng.randint(-2 ** 16, 2 ** 16) for _ in huv.basis])
        if all(h[i].is_invertible() for i in u.quiver.vertex_ids):
            return Verdict.CERTAINLY, h
    return Verdict.PROBABLY_NOT, None


def isomorphic(u: Representation, v: Representation, seed: int = 0) -> bool:
    return is_isomorphic(u, v, seed)[0] is Verdict.CERTAINLY


# -- symmetric decomposition -------------------------------------------------------------
@dataclass
class SymSummand:
    kind: str                 # "Split" or "Hyperbolic"
    rep: Representation       # the indecomposable (W for Hyperbolic)
    form: SignedForm          # on rep (Split) or on W + W* (Hyperbolic)

    def symmetric_rep(self) -> tuple[Representation, SignedForm]:
        if self.kind == "Split":
            return self.rep, self.form
        h, _ = hyperbolic(self.rep)
        return h, self.form


@dataclass
class SymDecomposition:
    summands: list = field(default_factory=list)

    def total(self) -> tuple[Representation, SignedForm]:
        parts = [s.symmetric_rep() for s in self.summands]
        return direct_sum_many([p[0] for p in parts], [p[1] for p in parts])

    def kinds(self) -> list[str]:
        return [s.kind for s in self.summands]


def admits_form(w: Representation, seed: int = 0):
    """FormFound, or a falsy NoForm/Inconclusive (NoForm when dims are not sign-matched)."""
    from fractions import Fraction
    if not is_sign_matched(w.quiver, w.dims):
        return NoForm(True, Fraction(0), "dimension vector not sign-matched")
    return solve_signed_form(w, seed)


def decompose_symmetric(v: Representation, j: SignedForm, seed: int = 0) -> SymDecomposition:
    if not is_symmetric(v, j):
        raise ValueError("decompose_symmetric needs a symmetric representation")
    rng = random.Random(seed)
    parts = decompose(v, rng.randrange(2 ** 32))
    classes: list[list[Representation]] = []
    for p in parts:
        for cls in classes:
            if isomorphic(cls[0], p, rng.randrange(2 ** 32)):
                cls.append(p)
                break
        else:
            classes.append([p])

    out = SymDecomposition()
    used = set()
    for ci, cls in enumerate(classes):
        if ci in used:
            continue
        w = cls[0]
        res = admits_form(w, rng.randrange(2 ** 32))
        if isinstance(res, Inconclusive):
            raise InternalPairingFailure(f"could not decide a form on a summand: {res.reason}")
        if isinstance(res, FormFound):
            used.add(ci)
            for copy in cls:
                fc = res if copy is w else solve_signed_form(copy, rng.randrange(2 ** 32))
                if not isinstance(fc, FormFound):
                    raise InternalPairingFailure("isomorphic summands disagree on admitting a form")
                out.summands.append(SymSummand("Split", copy, fc.form))
            continue
        wd = dual(w)
        partner = None
        for cj, other in enumerate(classes):
            if cj not in used and isomorphic(other[0], wd, rng.randrange(2 ** 32)):
                partner = cj
                break
        if partner is None:
            raise InternalPairingFailure("no dual class for a summand without a form")
        if partner == ci:
            if len(cls) % 2:
                raise InternalPairingFailure("odd multiplicity of a self-dual summand without a form")
            count = len(cls) // 2
        else:
            if len(classes[partner]) != len(cls):
                raise InternalPairingFailure("summand and dual class multiplicities differ")
            count = len(cls)
        used.update((ci, partner))
        for _ in range(count):
            _, hform = hyperbolic(w)
            out.summands.append(SymSummand("Hyperbolic", w, hform))
    return out
