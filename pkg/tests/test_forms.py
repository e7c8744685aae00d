from __future__ import annotations

import random

import pytest

from oracles import random_signed_quiver
from signed_quivers.catalog import jordan
from signed_quivers.forms import (MAX_ERROR, FormFound, NoForm, NotSignMatched, PresentationFound,
                                  presentation_oracle, solve_signed_form)
from signed_quivers.linalg import QQ, Mat
from signed_quivers.quiver import double, signed_quiver
from signed_quivers.reps import (Representation, conjugate, hyperbolic, is_symmetric, random_representation,
                                 random_symmetric)


def loop_rep(vsign, asign, a):
    sq = double(signed_quiver([("1", vsign)], [("phi", "1", "1", asign)]))
    return Representation(sq, {"1": a.rows}, {"phi": a})


def _valid_solution(v, res):
    assert isinstance(res, FormFound)
    assert res.form.is_valid(v.quiver, v.dims)
    assert all(res.form[i].det() != 0 for i in v.quiver.vertex_ids)
    assert is_symmetric(v, res.form)


def test_o_plus_jordan_has_form():
    v = loop_rep(1, 1, jordan(2, 5))
    _valid_solution(v, solve_signed_form(v))


def test_o_minus_nilpotent_parity():
    assert isinstance(solve_signed_form(loop_rep(1, -1, jordan(2, 0))), NoForm)
    v3 = loop_rep(1, -1, jordan(3, 0))
    _valid_solution(v3, solve_signed_form(v3))


def test_sp_minus_has_no_jordan_form():
    res = solve_signed_form(loop_rep(-1, -1, jordan(2, 0)))
    assert isinstance(res, NoForm) and res.exact


def test_not_sign_matched_rejected():
    with pytest.raises(NotSignMatched):
        solve_signed_form(loop_rep(-1, 1, jordan(3, 0)))


def test_no_form_is_falsy():
    assert not solve_signed_form(loop_rep(1, -1, jordan(2, 0)))


def _sign_matched(sq, rng, hi=2):
    d = {}
    for orb in sq.vertex_orbits():
        n = rng.randint(0, hi)
        if len(orb) == 1 and sq.sign(orb[0]) == -1:
            n += n % 2
        for x in orb:
            d[x] = n
    return d


def _random_basis_change(sq, dims, rng):
    g = {}
    for i in sq.vertex_ids:
        while True:
            m = Mat(QQ, dims[i], dims[i], [rng.randint(-2, 2) for _ in range(dims[i] ** 2)])
            if m.is_invertible():
                break
        g[i] = m
    return g


def test_hidden_forms_are_recovered_random():
    rng = random.Random(31)
    done = 0
    while done < 40:
        sq = double(random_signed_quiver(rng, 3, 4))
        dims = _sign_matched(sq, rng)
        if not any(dims.values()):
            continue
        v, _ = random_symmetric(sq, dims, rng)
        v = conjugate(v, _random_basis_change(sq, dims, rng))
        _valid_solution(v, solve_signed_form(v, seed=done))
        done += 1


def test_hyperbolic_reps_always_have_forms():
    rng = random.Random(32)
    for _ in range(25):
        sq = double(random_signed_quiver(rng, 3, 4))
        w = random_representation(sq, {x: rng.randint(0, 2) for x in sq.vertex_ids}, rng)
        h, _ = hyperbolic(w)
        _valid_solution(h, solve_signed_form(h))


def test_solution_is_seed_deterministic():
    v = loop_rep(1, 1, jordan(3, 2))
    a, b = solve_signed_form(v, seed=4), solve_signed_form(v, seed=4)
    assert a.form == b.form


def test_non_exact_negatives_meet_error_budget():
    # random reps mostly admit no form; any sampled negative must state a tiny error bound
    rng = random.Random(33)
    for _ in range(30):
        sq = double(random_signed_quiver(rng, 3, 4))
        dims = _sign_matched(sq, rng)
        res = solve_signed_form(random_representation(sq, dims, rng))
        if isinstance(res, NoForm) and not res.exact:
            assert res.error_bound <= MAX_ERROR


# -- presentation oracle -----------------------------------------------------------------------
def expected(n, lam, js, bs):
    return {(1, 1): True,
            (1, -1): lam == 0 and n % 2 == 1,
            (-1, 1): lam == 0 and n % 2 == 0,
            (-1, -1): False}[(js, bs)]


CASES = [(n, lam, js, bs) for n in range(1, 9) for lam in (0, 1, -1, 2, -3)
         for js in (1, -1) for bs in (1, -1)]


@pytest.mark.parametrize("n,lam,js,bs", CASES)
def test_presentation_table(n, lam, js, bs):
    a = jordan(n, lam)
    res = presentation_oracle(a, js, bs)
    assert isinstance(res, PresentationFound) == expected(n, lam, js, bs)
    if isinstance(res, PresentationFound):
        assert res.J.T == res.J * js and res.J.is_invertible()
        assert res.B == res.J @ a and res.B.T == res.B * bs
    else:
        assert res.exact or res.error_bound <= MAX_ERROR


def test_presentation_rejects_bad_input():
    with pytest.raises(ValueError):
        presentation_oracle(Mat.zeros(QQ, 2, 3), 1, 1)
    with pytest.raises(ValueError):
        presentation_oracle(jordan(2, 0), 0, 1)
