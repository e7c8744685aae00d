"""Del and Ins on representations of doubles.

Del_i contracts the signed leaf i: with gamma the arrow of the double
ending at i and gamma' the one leaving it, the new signed arrow carries
V(gamma') V(gamma).  Ins_phi puts Im V(phi) on a new signed vertex a and
factors V(phi) = i p through it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, column_basis, solve
from .quiver import (OperationError, SignedQuiver, SymmetricQuiver, del_quiver, del_target, double, ins_quiver,
                     s_sign)
from .reps import Representation, RepError, SignedForm


def _base_of(sq: SymmetricQuiver) -> SignedQuiver:
    if sq.base is None:
        raise RepError("representation quiver has no recorded base signed quiver")
    return sq.base


def _id_map(new: SymmetricQuiver, old: SymmetricQuiver, skip_v=(), skip_a=()):
    """Map ids of `new` to ids of `old` for elements both doubles share."""
    ob = _base_of(old)
    old_bv, old_ba = set(ob.vertex_ids), set(ob.arrow_ids)
    vm, am = {}, {}
    for w in new.vertex_ids:
        if w in skip_v:
            continue
        if w in old_bv or new.vstar[w] == w:
            vm[w] = w
    for w in new.vertex_ids:
        if w in skip_v or w in vm:
            continue
        partner = new.vstar[w]
        vm[w] = old.vstar[vm[partner]]
    for b in new.arrow_ids:
        if b in skip_a:
            continue
        if b in old_ba:
            am[b] = b
    for b in new.arrow_ids:
        if b in skip_a or b in am:
            continue
        am[b] = old.astar[am[new.astar[b]]]
    return vm, am


def _gamma_pair(sq: SymmetricQuiver, i: str, phi: str) -> tuple[str, str]:
    """(gamma, gamma'): the arrows of the orbit of phi ending at / leaving i."""
    a, b = phi, sq.astar[phi]
    return (a, b) if sq.arrow(a).head == i else (b, a)


def del_rep(v: Representation, i: str, j: SignedForm | None = None):
    """Del_i(V) on double(del_quiver(q, i)); with a form, also the inherited form."""
    sq = v.quiver
    q = _base_of(sq)
    phi, _, _ = del_target(q, i)
    gamma, gamma_p = _gamma_pair(sq, i, phi.id)
    nq = double(del_quiver(q, i))
    vm, am = _id_map(nq, sq, skip_a=(phi.id,))
    dims = {w: v.dims[vm[w]] for w in nq.vertex_ids}
    mats = {b: v.mats[am[b]] for b in am}
    mats[phi.id] = v.mats[gamma_p] @ v.mats[gamma]
    out = Representation(nq, dims, mats, v.field)
    if j is None:
        return out
    return out, SignedForm({w: j[vm[w]] for w in nq.vertex_ids})


def del_surjective(v: Representation, i: str) -> bool:
    """Whether V(gamma) is surjective, gamma the arrow into the leaf i."""
    sq = v.quiver
    phi, _, _ = del_target(_base_of(sq), i)
    gamma, _ = _gamma_pair(sq, i, phi.id)
    return v.mats[gamma].rank() == v.dims[i]


def del_section(v: Representation, i: str) -> Mat:
    """V(gamma'), the basis of the image to pass to ins_rep for an exact roundtrip."""
    sq = v.quiver
    phi, _, _ = del_target(_base_of(sq), i)
    return v.mats[_gamma_pair(sq, i, phi.id)[1]]


@dataclass
class InsResult:
    rep: Representation
    form: SignedForm
    vertex: str


def ins_rep(v: Representation, j: SignedForm, phi: str, basis: Mat | None = None,
            vertex_id: str | None = None) -> InsResult:
    """Ins_phi(V) with the form J_a = sigma(phi) i^T J_l p^+ on the new vertex.

    `basis` (columns) must span Im V(phi); default is a column basis of it.
    """
    sq = v.quiver
    q = _base_of(sq)
    arrow = q.arrow(phi)
    if arrow.sign == 0 or arrow.is_loop:
        raise OperationError(f"Ins needs a signed non-loop arrow, got {phi}", phi)
    vphi = v.mats[phi]
    f = v.field
    if basis is None:
        basis = column_basis(vphi) if vphi.rows else Mat.zeros(f, 0, 0)
    r = basis.cols
    if basis.rows != vphi.rows or (r and basis.rank() != r):
        raise RepError("basis must have independent columns in the head space of phi")
    if r:
        p = solve(basis, vphi)
        if p is None or p.rank() != r:
            raise RepError("basis does not span the image of V(phi)")
    else:
        if not vphi.is_zero():
            raise RepError("empty basis for a nonzero map")
        p = Mat.zeros(f, 0, vphi.cols)

    nbase = ins_quiver(q, phi, vertex_id)
    a = next(x for x in nbase.vertex_ids if not q.has_vertex(x))
    nq = double(nbase)
    psi_star = nq.astar[phi]
    vm, am = _id_map(nq, sq, skip_v=(a,), skip_a=(phi, psi_star))
    l = arrow.tail
    dims = {w: v.dims[vm[w]] for w in vm}
    dims[a] = r
    mats = {b: v.mats[am[b]] for b in am}
    mats[phi] = p
    mats[psi_star] = basis
    out = Representation(nq, dims, mats, f)

    form = {w: j[vm[w]] for w in vm}
    sgn = s_sign(nq, phi)
    if r:
        m = (basis.T @ j[l]) * sgn
        # J_a p = m; p has full row rank
        ja_t = solve(p.T, m.T)
        if ja_t is None:
            raise RepError("form does not descend to the image (input not symmetric?)")
        form[a] = ja_t.T
    else:
        form[a] = Mat.zeros(f, 0, 0)
    return InsResult(out, SignedForm(form), a)
