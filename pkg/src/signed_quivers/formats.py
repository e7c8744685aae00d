"""Text and JSON formats for quivers, graphs and representations.

Quiver records (order-insensitive, `#` starts a comment)::

    vertex 1 sign=0 twin=1*
    arrow a 1 -> 2 sign=0

The JSON form is {"vertices": [{"id", "sign", "twin"}], "arrows": [{"id", "tail", "head", "sign"}]}.

Representation files live on the double of a quiver::

    quiver b3.quiver          # path relative to this file (or inline vertex/arrow lines)
    field QQ                  # or GF(p)
    dim 1 2
    mat a [2 x 2] 1 0 1/2 1
    form 1 [2 x 2] 0 1 1 0
"""
from __future__ import annotations

import json
import os
import re
from fractions import Fraction

from .graphs import Graph
from .linalg import GF, QQ, Field, Mat, format_scalar
from .quiver import SignedQuiver, SymmetricQuiver, double, signed_quiver
from .reps import Representation, SignedForm


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _strip(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _kv(tokens, no, allowed):
    out = {}
    for t in tokens:
        if "=" not in t:
            raise FormatError(f"expected key=value, got {t!r}", no)
        k, v = t.split("=", 1)
        if k not in allowed:
            raise FormatError(f"unknown key {k!r}", no)
        out[k] = v
    return out


def _sign(v: str, no) -> int:
    try:
        s = int(v)
    except ValueError:
        raise FormatError(f"sign must be an integer, got {v!r}", no) from None
    return s


def _quiver_records(lines):
    verts, arrows = [], []
    for no, line in lines:
        tok = line.split()
        if tok[0] == "vertex":
            if len(tok) < 2:
                raise FormatError("vertex needs an id", no)
            kv = _kv(tok[2:], no, {"sign", "twin"})
            verts.append((tok[1], _sign(kv.get("sign", "0"), no), kv.get("twin")))
        elif tok[0] == "arrow":
            if len(tok) < 5 or tok[3] != "->":
                raise FormatError("expected 'arrow <id> <tail> -> <head> [sign=s]'", no)
            kv = _kv(tok[5:], no, {"sign"})
            arrows.append((tok[1], tok[2], tok[4], _sign(kv.get("sign", "0"), no)))
        else:
            raise FormatError(f"unknown record {tok[0]!r}", no)
    return verts, arrows


def parse_quiver(text: str) -> SignedQuiver:
    """Parse the record or JSON format; axiom violations raise QuiverError."""
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"bad JSON: {e.msg}", e.lineno) from None
        if not isinstance(raw, dict):
            raise FormatError("JSON quiver must be an object")
        try:
            return signed_quiver(raw.get("vertices", []), raw.get("arrows", []))
        except (KeyError, TypeError) as e:
            raise FormatError(f"bad JSON quiver entry: {e}") from None
    verts, arrows = _quiver_records(_strip(text))
    if not verts:
        raise FormatError("no vertices")
    return signed_quiver(verts, arrows)


def quiver_to_text(q) -> str:
    if isinstance(q, SymmetricQuiver):
        q = q.quiver
    out = []
    for v in q.vertices:
        tw = f" twin={v.twin}" if v.twin is not None else ""
        out.append(f"vertex {v.id} sign={v.sign}{tw}")
    for a in q.arrows:
        out.append(f"arrow {a.id} {a.tail} -> {a.head} sign={a.sign}")
    return "\n".join(out) + "\n"


def quiver_to_json(q) -> dict:
    if isinstance(q, SymmetricQuiver):
        q = q.quiver
    return {"vertices": [{"id": v.id, "sign": v.sign, "twin": v.twin} for v in q.vertices],
            "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "sign": a.sign} for a in q.arrows]}


def is_graph_text(text: str) -> bool:
    return any(line.split()[0] in ("node", "edge") for _, line in _strip(text))


def parse_graph(text: str) -> Graph:
    """`node v` and `edge u v [multiplicity]` lines."""
    nodes, edges = [], []
    for no, line in _strip(text):
        tok = line.split()
        if tok[0] == "node" and len(tok) == 2:
            nodes.append(tok[1])
        elif tok[0] == "edge" and len(tok) in (3, 4):
            m = int(tok[3]) if len(tok) == 4 else 1
            edges.append((tok[1], tok[2], m))
            for x in tok[1:3]:
                if x not in nodes:
                    nodes.append(x)
        else:
            raise FormatError(f"bad graph record {line!r}", no)
    return Graph(tuple(nodes), tuple(edges))


# -- representations ----------------------------------------------------------------
_MAT = re.compile(r"^(mat|form)\s+(\S+)\s+\[\s*(\d+)\s*x\s*(\d+)\s*\]\s*(.*)$")


def parse_field(s: str) -> Field:
    s = s.strip()
    if s in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", s)
    if not m:
        raise FormatError(f"unknown field {s!r}")
    return GF(int(m.group(1)))


def _entries(text: str, n: int, no):
    vals = text.split()
    if len(vals) != n:
        raise FormatError(f"expected {n} entries, got {len(vals)}", no)
    try:
        return [Fraction(v) for v in vals]
    except ValueError:
        raise FormatError("entries must be rationals a/b", no) from None


def parse_rep(text: str, base_dir: str = ".", quiver: SignedQuiver | None = None):
    """Returns (Representation, SignedForm or None)."""
    f = QQ
    dims, mats, forms = {}, {}, {}
    inline = []
    for no, line in _strip(text):
        tok = line.split()
        head = tok[0]
        if head in ("vertex", "arrow"):
            inline.append((no, line))
        elif head == "quiver":
            if len(tok) != 2:
                raise FormatError("expected 'quiver <path>'", no)
            path = os.path.join(base_dir, tok[1])
            try:
                with open(path) as fh:
                    quiver = parse_quiver(fh.read())
            except OSError as e:
                raise FormatError(f"cannot read quiver file: {e.strerror}", no) from None
        elif head == "field":
            f = parse_field(" ".join(tok[1:]))
        elif head == "dim":
            if len(tok) != 3 or not tok[2].isdigit():
                raise FormatError("expected 'dim <vertex> <n>'", no)
            dims[tok[1]] = int(tok[2])
        elif head in ("mat", "form"):
            m = _MAT.match(line)
            if not m:
                raise FormatError(f"expected '{head} <id> [r x c] entries'", no)
            r, c = int(m.group(3)), int(m.group(4))
            target = mats if head == "mat" else forms
            target[m.group(2)] = (r, c, _entries(m.group(5), r * c, no), no)
        else:
            raise FormatError(f"unknown record {head!r}", no)
    if inline:
        verts, arrows = _quiver_records(inline)
        quiver = signed_quiver(verts, arrows)
    if quiver is None:
        raise FormatError("representation file names no quiver")
    sq = double(quiver)
    for v in dims:
        if v not in sq.vertex_ids:
            raise FormatError(f"dim for unknown vertex {v!r}")
    d = {v: dims.get(v, 0) for v in sq.vertex_ids}
    m_out = {}
    for a in sq.quiver.arrows:
        if a.id in mats:
            r, c, ent, no = mats.pop(a.id)
            if (r, c) != (d[a.head], d[a.tail]):
                raise FormatError(f"mat {a.id} is {r}x{c}, expected {d[a.head]}x{d[a.tail]}", no)
            m_out[a.id] = Mat(f, r, c, ent)
        else:
            m_out[a.id] = Mat.zeros(f, d[a.head], d[a.tail])
    if mats:
        raise FormatError(f"mat for unknown arrow {sorted(mats)[0]!r}")
    rep = Representation(sq, d, m_out, f)
    if not forms:
        return rep, None
    j = {}
    for v in sq.vertex_ids:
        shape = (d[sq.vstar[v]], d[v])
        if v in forms:
            r, c, ent, no = forms.pop(v)
            if (r, c) != shape:
                raise FormatError(f"form {v} is {r}x{c}, expected {shape[0]}x{shape[1]}", no)
            j[v] = Mat(f, r, c, ent)
        elif shape == (0, 0):
            j[v] = Mat.zeros(f, 0, 0)
        else:
            raise FormatError(f"form missing for vertex {v!r}")
    if forms:
        raise FormatError(f"form for unknown vertex {sorted(forms)[0]!r}")
    return rep, SignedForm(j)


def _mat_line(kind: str, name: str, m: Mat) -> str:
    ent = " ".join(format_scalar(x) for x in m.entries())
    return f"{kind} {name} [{m.rows} x {m.cols}]" + (f" {ent}" if ent else "")


def rep_to_text(rep: Representation, form: SignedForm | None = None, quiver_path: str | None = None) -> str:
    sq = rep.quiver
    out = []
    if quiver_path:
        out.append(f"quiver {quiver_path}")
    else:
        base = sq.base if sq.base is not None else sq.quiver
        out.extend(quiver_to_text(base).splitlines())
    if not rep.field.is_rational:
        out.append(f"field {rep.field.name}")
    for v in sq.vertex_ids:
        out.append(f"dim {v} {rep.dims[v]}")
    for a in sq.arrow_ids:
        out.append(_mat_line("mat", a, rep.mats[a]))
    if form is not None:
        for v in sq.vertex_ids:
            out.append(_mat_line("form", v, form[v]))
    return "\n".join(out) + "\n"
