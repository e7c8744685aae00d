from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from oracles import random_signed_quiver
from signed_quivers.catalog import family_quiver
from signed_quivers.formats import (FormatError, is_graph_text, parse_field, parse_graph, parse_quiver,
                                    parse_rep, quiver_to_json, quiver_to_text, rep_to_text)
from signed_quivers.linalg import GF, QQ, Mat
from signed_quivers.quiver import QuiverError, double
from signed_quivers.reps import is_symmetric, random_representation, random_symmetric

DATA = Path(__file__).resolve().parent.parent / "data"


def sign_matched(sq, rng, hi=2):
    d = {}
    for orb in sq.vertex_orbits():
        n = rng.randint(0, hi)
        if len(orb) == 1 and sq.sign(orb[0]) == -1:
            n += n % 2
        for v in orb:
            d[v] = n
    return d


def test_parse_b3_file():
    q = parse_quiver((DATA / "quivers" / "b3.quiver").read_text())
    assert q.vertex_ids == ["1", "2", "3"]
    assert q.sign("3") == 1 and [a.id for a in q.arrows] == ["a1", "a2"]


def test_records_are_order_insensitive():
    a = "vertex 1\nvertex 2 sign=1\narrow x 1 -> 2\n"
    b = "arrow x 1 -> 2 sign=0   # trailing comment\nvertex 2 sign=1\n\nvertex 1 sign=0\n"
    assert quiver_to_json(parse_quiver(a))["arrows"] == quiver_to_json(parse_quiver(b))["arrows"]


def test_broken_file_is_an_axiom_error():
    with pytest.raises(QuiverError):
        parse_quiver((DATA / "quivers" / "broken.quiver").read_text())


@pytest.mark.parametrize("text,line", [
    ("vertex 1\nnode 2\n", 2),
    ("vertex 1\narrow a 1 2\n", 2),
    ("vertex 1 colour=red\n", 1),
    ("# c\nvertex 1 sign=x\n", 2),
    ("vertex 1\nvertex 2\narrow a 1 -> 2 sign\n", 3),
])
def test_quiver_errors_name_the_line(text, line):
    with pytest.raises(FormatError) as e:
        parse_quiver(text)
    assert e.value.line == line and f"line {line}" in str(e.value)


def test_empty_and_bad_json():
    with pytest.raises(FormatError):
        parse_quiver("# nothing\n")
    with pytest.raises(FormatError) as e:
        parse_quiver('{"vertices": [\n  1,,\n]}')
    assert e.value.line == 2
    with pytest.raises(FormatError):
        parse_quiver("[1, 2]")


def test_quiver_round_trips_random():
    rng = random.Random(17)
    for _ in range(100):
        q = random_signed_quiver(rng, 4, 5)
        text = quiver_to_text(q)
        assert quiver_to_text(parse_quiver(text)) == text
        js = json.dumps(quiver_to_json(q))
        assert quiver_to_json(parse_quiver(js)) == quiver_to_json(q)


def test_all_data_quivers_round_trip():
    for p in sorted((DATA / "quivers").glob("*.quiver")):
        if p.name == "broken.quiver":
            continue
        q = parse_quiver(p.read_text())
        assert quiver_to_text(parse_quiver(quiver_to_text(q))) == quiver_to_text(q)


def test_graph_format():
    text = "node 1\nedge 1 2\nedge 2 3 2\n"
    assert is_graph_text(text) and not is_graph_text("vertex 1\n")
    g = parse_graph(text)
    assert g.vertices == ("1", "2", "3") and g.multiplicity("2", "3") == 2
    with pytest.raises(FormatError) as e:
        parse_graph("node 1\nedge 1\n")
    assert e.value.line == 2


def test_parse_field():
    assert parse_field("QQ") is QQ
    assert parse_field("GF(7)") == GF(7)
    with pytest.raises(FormatError):
        parse_field("RR")


# -- representations ---------------------------------------------------------------------------
def test_parse_rep_files():
    rep, form = parse_rep((DATA / "reps" / "d3_twisted_v2.rep").read_text(), str(DATA / "reps"))
    assert rep.dims == {"1": 2, "2": 2, "3": 2, "2*": 2}
    assert rep["a1"] == Mat.from_rows([[2, 1], [0, 2]])
    assert form is not None and is_symmetric(rep, form)
    rep, form = parse_rep((DATA / "reps" / "c2_affine_v1.rep").read_text(), str(DATA / "reps"))
    assert form is None and rep.total_dim == 8


def test_missing_mats_default_to_zero():
    text = "vertex 1 sign=0\nvertex 2 sign=0\narrow a 1 -> 2\ndim 1 1\ndim 2 2\n"
    rep, _ = parse_rep(text)
    assert rep["a"] == Mat.zeros(QQ, 2, 1) and rep["a*"] == Mat.zeros(QQ, 0, 0)
    assert rep.dims["1*"] == rep.dims["2*"] == 0


@pytest.mark.parametrize("body,line", [
    ("dim 1 x\n", 4),
    ("dim 1 1\ndim 2 1\nmat a [2 x 1] 1 0\n", 6),
    ("dim 1 1\ndim 2 1\nmat a [1 x 1] 1 2\n", 6),
    ("dim 1 1\nmat a [1 x 1] one\n", 5),
    ("colour red\n", 4),
    ("mat a [1 by 1] 1\n", 4),
    ("quiver /nonexistent/q.quiver\n", 4),
])
def test_rep_errors_name_the_line(body, line):
    text = "vertex 1 sign=0\nvertex 2 sign=0\narrow a 1 -> 2\n" + body
    with pytest.raises(FormatError) as e:
        parse_rep(text)
    assert e.value.line == line


def test_rep_errors_without_line():
    head = "vertex 1 sign=0\nvertex 2 sign=0\narrow a 1 -> 2\n"
    for body in ("dim 9 1\n", "mat zz [0 x 0]\n", "dim 1 1\ndim 1* 1\nform 1 [1 x 1] 1\n",
                 "form 7 [0 x 0]\n"):
        with pytest.raises(FormatError):
            parse_rep(head + body)
    with pytest.raises(FormatError):
        parse_rep("dim 1 1\n")


def test_rep_round_trips_random():
    rng = random.Random(18)
    for k in range(60):
        sq = double(random_signed_quiver(rng, 3, 4))
        if k % 2:
            v, j = random_symmetric(sq, sign_matched(sq, rng), rng)
        else:
            f = GF(5) if k % 4 == 0 else QQ
            v, j = random_representation(sq, {x: rng.randint(0, 2) for x in sq.vertex_ids}, rng, field=f), None
        text = rep_to_text(v, j)
        v2, j2 = parse_rep(text)
        assert v2 == v and j2 == j
        assert rep_to_text(v2, j2) == text


def test_rep_round_trip_with_quiver_path(tmp_path):
    q = family_quiver("B_2")
    (tmp_path / "b2.quiver").write_text(quiver_to_text(q))
    rng = random.Random(3)
    v, j = random_symmetric(double(q), {"1": 1, "2": 2, "1*": 1}, rng)
    text = rep_to_text(v, j, quiver_path="b2.quiver")
    assert text.startswith("quiver b2.quiver\n")
    v2, j2 = parse_rep(text, str(tmp_path))
    assert v2 == v and j2 == j
