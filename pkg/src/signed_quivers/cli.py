"""signed-quivers command line.

Exit codes: 0 success or verified, 1 negative mathematical result,
2 input error, 3 inconclusive.  The default seed comes from
SIGNED_QUIVERS_SEED (else 0) and is printed by every randomised command.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .catalog import CatalogError, symmetric_dimension_set
from .classify import DisconnectedQuiver, classify_family
from .decompose import InternalPairingFailure, Verdict, decompose_symmetric, decompose_with_bases
from .forms import FormFound, NoForm, PresentationFound, presentation_oracle, solve_signed_form
from .formats import (FormatError, is_graph_text, parse_graph, parse_quiver, parse_rep, quiver_to_json,
                      quiver_to_text)
from .graphs import GraphError
from .linalg import QQ, LinalgError, Mat, format_scalar
from .oracle import BudgetExceeded, brute_force_oracle
from .quiver import QuiverError, double, folding_data, is_sign_matched
from .reps import RepError, first_asymmetric_arrow
from .roots import FoldingError, enumerate_roots, fold, verify_folding_lemma

OK, NEGATIVE, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2, 3
SEED_ENV = "SIGNED_QUIVERS_SEED"


class UsageError(ValueError):
    pass


class Report:
    """Collects output as text lines or JSON records."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def line(self, text: str = ""):
        if self.fmt == "text":
            print(text, file=self.out)

    def record(self, **kw):
        if self.fmt == "records":
            print(json.dumps(kw, sort_keys=True), file=self.out)

    def table(self, kind: str, header: list, rows: list):
        if self.fmt == "records":
            for r in rows:
                self.record(record=kind, **dict(zip(header, r)))
            return
        cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
        for r in cells:
            print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=self.out)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _quiver(path: str):
    return parse_quiver(_read(path))


def _rep(path: str):
    return parse_rep(_read(path), os.path.dirname(os.path.abspath(path)))


def _vec(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _mat_text(m: Mat) -> str:
    return "[" + "; ".join(" ".join(format_scalar(x) for x in row) for row in m.tolist()) + "]"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


# -- commands -------------------------------------------------------------------------------
def cmd_validate(args, rep: Report) -> int:
    text = _read(args.quiver)
    try:
        q = parse_quiver(text)
    except QuiverError as e:
        for v in e.violations:
            rep.line(f"invalid: {type(v).__name__} at {v.element}: {v}")
            rep.record(record="violation", axiom=type(v).__name__, element=v.element, message=str(v))
        return NEGATIVE
    rep.line(f"valid: {len(q.vertices)} vertices, {len(q.arrows)} arrows")
    rep.record(record="valid", vertices=len(q.vertices), arrows=len(q.arrows))
    return OK


def cmd_double(args, rep: Report) -> int:
    sq = double(_quiver(args.quiver))
    if rep.fmt == "records":
        data = quiver_to_json(sq)
        for v in data["vertices"]:
            rep.record(record="vertex", **v)
        for a in data["arrows"]:
            rep.record(record="arrow", star=sq.astar[a["id"]], **a)
        return OK
    rep.out.write(quiver_to_text(sq))
    return OK


def cmd_classify(args, rep: Report) -> int:
    tag = classify_family(_quiver(args.quiver))
    rep.line(f"{tag.label} ({tag.kind})")
    rep.record(record="classification", family=tag.label, kind=tag.kind)
    return OK


def _graph_for(path: str):
    text = _read(path)
    if is_graph_text(text):
        return parse_graph(text)
    return double(parse_quiver(text)).graph()


def cmd_roots(args, rep: Report) -> int:
    g = _graph_for(args.input)
    roots = enumerate_roots(g, args.height)
    rep.line(f"graph vertices: {' '.join(g.vertices)}")
    rows = [(sum(r), _vec(r), k) for r, k in sorted(roots.items(), key=lambda p: (sum(p[0]), p[0]))]
    rep.table("root", ["height", "vector", "type"], rows)
    rep.line(f"{len(rows)} positive roots of height <= {args.height}")
    return OK


def cmd_fold(args, rep: Report) -> int:
    res = folding_data(_quiver(args.quiver))
    if not res:
        rep.line(f"unsupported: {res.reason}")
        rep.record(record="unsupported", reason=res.reason)
        return NEGATIVE
    fs = fold(*res)
    rep.line(f"orbits: {' '.join(fs.labels)}")
    rep.line("folded Cartan matrix:")
    w = max(len(lab) for lab in fs.labels) + 1
    for lab, row in zip(fs.labels, fs.gcm.tolist()):
        rep.line(f"  {lab + ':':<{w}} " + " ".join(f"{x:>2}" for x in row))
    for d in fs.diagram():
        rep.line(f"  edge {d}")
    rep.record(record="fold", orbits=list(fs.labels), gcm=fs.gcm.tolist(), edges=fs.diagram())
    if not args.verify:
        return OK
    if args.height is None:
        raise UsageError("fold --verify needs --height")
    report = verify_folding_lemma(fs, args.height)
    g = fs.graph
    rep.line(f"vertices: {' '.join(g.vertices)}")
    rep.line(f"bar images of unfolded roots (unfolded height <= {report.unfolded_height}):")
    rows = [(sum(b), _vec(b), " ".join(_vec(r) for r in sorted(pre)))
            for b, pre in sorted(report.barred.items(), key=lambda p: (sum(p[0]), p[0]))]
    rep.table("bar", ["height", "image", "preimages"], rows)
    rep.line(f"folded roots (height <= {report.height}):")
    rows = [(sum(r), _vec(r), k) for r, k in sorted(report.folded.items(), key=lambda p: (sum(p[0]), p[0]))]
    rep.table("folded", ["height", "vector", "type"], rows)
    for r in report.missing:
        rep.line(f"missing: folded root {_vec(r)} is not a bar image")
    for r in report.extra:
        rep.line(f"extra: bar image {_vec(r)} is not a folded root")
    for r, n, kinds in report.bad_preimages:
        rep.line(f"preimages: real root {_vec(r)} has {n} preimage orbits ({', '.join(kinds)})")
    rep.record(record="verdict", equal=report.equal, ok=report.ok,
               missing=[list(r) for r in report.missing], extra=[list(r) for r in report.extra])
    rep.line("folding lemma: " + ("verified" if report.ok else "FAILED"))
    return OK if report.ok else NEGATIVE


def cmd_check_symmetric(args, rep: Report) -> int:
    v, j = _rep(args.rep)
    seed = _seed(args)
    if args.solve_form:
        rep.line(f"seed: {seed}")
        rep.record(record="seed", seed=seed)
        if not is_sign_matched(v.quiver, v.dims):
            first = _first_unmatched(v)
            rep.line(f"NoForm: dimension vector not sign-matched at vertex {first}")
            rep.record(record="form", verdict="NoForm", exact=True, reason="not sign-matched", vertex=first)
            return NEGATIVE
        res = solve_signed_form(v, seed)
        if isinstance(res, FormFound):
            rep.line(f"FormFound ({res.method})")
            for i in v.quiver.vertex_ids:
                rep.line(f"  J[{i}] = {_mat_text(res.form[i])}")
            rep.record(record="form", verdict="FormFound", method=res.method,
                       form={i: [[format_scalar(x) for x in r] for r in res.form[i].tolist()]
                             for i in v.quiver.vertex_ids})
            return OK
        if isinstance(res, NoForm):
            grade = "exact" if res.exact else f"error bound {res.error_bound}"
            rep.line(f"NoForm ({grade}): {res.reason}")
            rep.record(record="form", verdict="NoForm", exact=res.exact, error_bound=str(res.error_bound),
                       reason=res.reason)
            return NEGATIVE
        rep.line(f"Inconclusive: {res.reason}")
        rep.record(record="form", verdict="Inconclusive", reason=res.reason)
        return INCONCLUSIVE
    if j is None:
        raise UsageError("representation file has no form; use --solve-form")
    problems = j.problems(v.quiver, v.dims)
    if problems:
        rep.line(f"not a signed form: {problems[0]}")
        rep.record(record="symmetric", verdict=False, reason=problems[0])
        return NEGATIVE
    bad = first_asymmetric_arrow(v, j)
    if bad is not None:
        rep.line(f"not symmetric: arrow {bad}")
        rep.record(record="symmetric", verdict=False, arrow=bad)
        return NEGATIVE
    rep.line("symmetric")
    rep.record(record="symmetric", verdict=True)
    return OK


def _first_unmatched(v) -> str:
    sq = v.quiver
    for i in sq.vertex_ids:
        if sq.vstar[i] != i and v.dims[i] != v.dims[sq.vstar[i]]:
            return i
        if sq.vstar[i] == i and sq.sign(i) == -1 and v.dims[i] % 2:
            return i
    return "?"


def _dims_text(sq, dims) -> str:
    return _vec(dims[i] for i in sq.vertex_ids)


def cmd_decompose(args, rep: Report) -> int:
    v, j = _rep(args.rep)
    seed = _seed(args)
    rep.line(f"seed: {seed}")
    rep.record(record="seed", seed=seed)
    sq = v.quiver
    rep.line(f"vertices: {' '.join(sq.vertex_ids)}")
    if args.symmetric:
        if j is None:
            raise UsageError("--symmetric needs a form in the representation file")
        try:
            dec = decompose_symmetric(v, j, seed)
        except InternalPairingFailure as e:
            rep.line(f"Inconclusive: {e}")
            rep.record(record="decomposition", verdict="Inconclusive", reason=str(e))
            return INCONCLUSIVE
        rows = []
        for s in dec.summands:
            h, _ = s.symmetric_rep()
            rows.append((s.kind, _dims_text(sq, h.dims), _dims_text(sq, s.rep.dims)))
        rep.table("summand", ["kind", "dims", "indecomposable"], rows)
        rep.line(f"{len(rows)} orthogonal summands")
        return OK
    pieces = decompose_with_bases(v, seed)
    rows = [(_dims_text(sq, p.rep.dims), str(p.grade)) for p in pieces]
    rows.sort()
    rep.table("summand", ["dims", "grade"], rows)
    rep.line(f"{len(rows)} summands")
    return OK if all(p.grade is Verdict.CERTAINLY for p in pieces) else INCONCLUSIVE


def _parse_box(text: str, ids: list) -> dict:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if all("=" in p for p in parts):
        box = {}
        for p in parts:
            k, x = p.split("=", 1)
            box[k.strip()] = int(x)
        missing = [i for i in ids if i not in box]
        if missing or set(box) - set(ids):
            raise UsageError(f"--box must name exactly the vertices {' '.join(ids)}")
        return box
    if len(parts) != len(ids):
        raise UsageError(f"--box needs {len(ids)} entries (vertices {' '.join(ids)})")
    return dict(zip(ids, (int(p) for p in parts)))


def cmd_dims(args, rep: Report) -> int:
    q = _quiver(args.quiver)
    seed = _seed(args)
    rep.line(f"seed: {seed}")
    rep.record(record="seed", seed=seed)
    tag = classify_family(q)
    rep.line(f"family: {tag.label} ({tag.kind})")
    ds = symmetric_dimension_set(q, args.height, seed)
    ids = ds.vertices
    rep.line(f"vertices: {' '.join(ids)}")
    rows = [(e.height, _vec(e.dims[i] for i in ids), e.root, e.kinds, e.tag) for e in ds.entries]
    rep.table("dim", ["height", "vector", "root", "kind", "tag"], rows)
    rep.line(f"{len(rows)} dimension vectors of height <= {args.height}")
    code = OK
    for dims, reason in ds.inconclusive:
        rep.line(f"inconclusive at {_vec(dims[i] for i in ids)}: {reason}")
        rep.record(record="inconclusive", vector=[dims[i] for i in ids], reason=reason)
        code = INCONCLUSIVE
    if not args.oracle:
        return code
    if args.box is None:
        raise UsageError("--oracle needs --box")
    box = _parse_box(args.box, ids)
    if sum(box.values()) > args.height:
        raise UsageError("--box exceeds --height; raise the height bound")
    res = brute_force_oracle(q, box, args.prime, args.budget)
    mine = ds.restricted(box).vectors()
    rep.line(f"oracle over GF({args.prime}) in box {_vec(box[i] for i in ids)}: "
             f"{len(res.dims)} vectors, {res.searched} representations visited")
    only_oracle = sorted(res.dims - mine)
    only_mine = sorted(mine - res.dims)
    for t in only_oracle:
        rep.line(f"oracle only: {_vec(t)}")
    for t in only_mine:
        rep.line(f"dims only: {_vec(t)}")
    agree = not only_oracle and not only_mine
    rep.record(record="oracle", prime=args.prime, agree=agree, oracle=[list(t) for t in sorted(res.dims)],
               only_oracle=[list(t) for t in only_oracle], only_dims=[list(t) for t in only_mine])
    rep.line("oracle: " + ("agrees" if agree else "DISAGREES"))
    return code if agree else NEGATIVE


def _parse_jordan(text: str):
    try:
        d, lam = text.split(",")
        return int(d), Fraction(lam)
    except ValueError:
        raise UsageError("--jordan expects d,lambda (e.g. 2,0 or 3,-1/2)") from None


def _parse_signs(text: str):
    parts = text.split(",")
    table = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}
    if len(parts) != 2 or any(p not in table for p in parts):
        raise UsageError("--signs expects two of + and - (e.g. +,-)")
    return table[parts[0]], table[parts[1]]


def _jordan_matrix(d: int, lam) -> Mat:
    from .catalog import jordan
    return jordan(d, lam, QQ)


def cmd_oracle_presentation(args, rep: Report) -> int:
    d, lam = _parse_jordan(args.jordan)
    if d < 1:
        raise UsageError("Jordan block size must be positive")
    js, bs = _parse_signs(args.signs)
    seed = _seed(args)
    rep.line(f"seed: {seed}")
    rep.record(record="seed", seed=seed)
    res = presentation_oracle(_jordan_matrix(d, lam), js, bs, seed)
    label = f"J_{d}({format_scalar(QQ(lam))}) with J^T = {js:+d} J, B^T = {bs:+d} B"
    if isinstance(res, PresentationFound):
        rep.line(f"Found: {label}")
        rep.line(f"  J = {_mat_text(res.J)}")
        rep.line(f"  B = {_mat_text(res.B)}")
        rep.record(record="presentation", verdict="Found", d=d, lam=str(lam), j_sign=js, b_sign=bs,
                   J=[[format_scalar(x) for x in r] for r in res.J.tolist()],
                   B=[[format_scalar(x) for x in r] for r in res.B.tolist()])
        return OK
    if isinstance(res, NoForm):
        grade = "exact" if res.exact else f"error bound {res.error_bound}"
        rep.line(f"NotFound ({grade}): {label}: {res.reason}")
        rep.record(record="presentation", verdict="NotFound", d=d, lam=str(lam), j_sign=js, b_sign=bs,
                   exact=res.exact, reason=res.reason)
        return NEGATIVE
    rep.line(f"Inconclusive: {label}: {res.reason}")
    rep.record(record="presentation", verdict="Inconclusive", reason=res.reason)
    return INCONCLUSIVE


# -- parser -----------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signed-quivers",
                                description="Signed quivers, foldings and symmetric representations.")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="text tables or line-delimited JSON records")
    sub = p.add_subparsers(dest="command", required=True)
    # the same flag after the subcommand; SUPPRESS keeps the global value when absent
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS,
                     help="text tables or line-delimited JSON records")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_, parents=[fmt])
        sp.set_defaults(func=func)
        return sp

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")

    add("validate", cmd_validate, "check the signed-quiver axioms").add_argument("quiver")
    add("double", cmd_double, "print the double quiver").add_argument("quiver")
    add("classify", cmd_classify, "name the family of a connected signed quiver").add_argument("quiver")

    sp = add("roots", cmd_roots, "positive roots of a graph or of a quiver's double")
    sp.add_argument("input")
    sp.add_argument("--height", type=int, required=True)

    sp = add("fold", cmd_fold, "fold the double; optionally verify the folding lemma")
    sp.add_argument("quiver")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--height", type=int)

    sp = add("check-symmetric", cmd_check_symmetric, "check or solve a signed form for a representation")
    sp.add_argument("rep")
    sp.add_argument("--solve-form", action="store_true")
    seeded(sp)

    sp = add("decompose", cmd_decompose, "Krull-Schmidt decomposition (optionally orthogonal)")
    sp.add_argument("rep")
    sp.add_argument("--symmetric", action="store_true")
    seeded(sp)

    sp = add("dims", cmd_dims, "dimension vectors of indecomposable symmetric representations")
    sp.add_argument("quiver")
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check by exhaustive search over GF(p)")
    sp.add_argument("--prime", type=int, default=3)
    sp.add_argument("--box", help="upper bounds on the double, 'v=n,...' or in vertex order")
    sp.add_argument("--budget", type=int, default=10 ** 9)
    seeded(sp)

    sp = add("oracle-presentation", cmd_oracle_presentation,
             "search J with J^T = +-J and B = J A with B^T = +-B for a Jordan block A")
    sp.add_argument("--jordan", required=True, help="d,lambda")
    sp.add_argument("--signs", required=True, help="sign of J, sign of B (e.g. +,-)")
    seeded(sp)
    return p


def _glue_dash_values(argv):
    """Let values such as '-,-' follow --signs without argparse reading them as options."""
    argv = list(sys.argv[1:] if argv is None else argv)
    out = []
    k = 0
    while k < len(argv):
        if argv[k] in ("--signs", "--jordan") and k + 1 < len(argv):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
            continue
        out.append(argv[k])
        k += 1
    return out


def run(argv=None, out=None) -> int:
    parser = build_parser()
    argv = _glue_dash_values(argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else INPUT_ERROR
    rep = Report(args.format, out)
    try:
        if getattr(args, "height", None) is not None and args.height < 1:
            raise UsageError("--height must be at least 1")
        return args.func(args, rep)
    except (UsageError, FormatError, QuiverError, DisconnectedQuiver, GraphError, RepError, LinalgError,
            CatalogError, FoldingError, BudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
