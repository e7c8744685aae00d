"""Finite / tame family recognition for connected signed quivers.

A connected signed quiver is finite (tame) exactly when the underlying graph
of its double is Dynkin (affine); the family is then read off from where the
star involution fixes vertices and edges.

Index conventions: B_n, C_n and their relatives carry n = number of vertices.
The tame families keep the index of their Ins-completed base.  The
one-parameter-mirror family with two + ends is tagged D_N^(2) with N its
vertex count (Kac indexing), so +o-o-+o is D_3^(2).
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import GraphError, shape_type
from .quiver import OperationError, SignedQuiver, SymmetricQuiver, double


class DisconnectedQuiver(ValueError):
    pass


class ClassificationError(RuntimeError):
    """A finite/affine double with a star pattern no family accounts for."""


@dataclass(frozen=True)
class FamilyTag:
    family: str          # "B", "C", "D2", "C1", "A2", "Z", "B1", "A21", "O", "Sp",
                         # "FiniteQuiver", "TameQuiver", "Wild"
    n: int | None = None
    relative: str = ""   # "", "+", "-", "++", "--", "+-"
    graph: str | None = None   # ADE / affine name for plain quivers

    @property
    def kind(self) -> str:
        if self.family in ("B", "C", "FiniteQuiver"):
            return "finite"
        if self.family == "Wild":
            return "wild"
        return "tame"

    @property
    def is_base(self) -> bool:
        return self.relative == ""

    @property
    def label(self) -> str:
        rel = f",{self.relative}" if self.relative else ""
        f, n = self.family, self.n
        if f == "FiniteQuiver" or f == "TameQuiver":
            return f"{f}({self.graph})"
        if f == "Wild":
            return "Wild"
        if f in ("O", "Sp"):
            return f + self.relative
        if f in ("B", "C"):
            return f"{f}_{n}{rel}"
        if f == "Z":
            return f"Z_{n}"
        if f == "D2":
            return f"D_{n + 1}{rel}^(2)"
        if f == "C1":
            return f"C_{n}{rel}^(1)"
        if f == "A2":
            return f"A_{2 * n}{rel}^(2)"
        if f == "B1":
            return f"B_{n}{rel}^(1)"
        if f == "A21":
            return f"A_{2 * n - 1}{rel}^(2)"
        raise ValueError(f"unknown family {f}")

    def __str__(self) -> str:
        return self.label


def _sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


def _fixed_items(sq: SymmetricQuiver):
    verts = [v for v in sq.vertex_ids if sq.vstar[v] == v]
    edges = [a for a in sq.arrow_ids if sq.astar[a] == a]
    return verts, edges


def _loop_family(sq: SymmetricQuiver) -> FamilyTag:
    (v,) = sq.vertex_ids
    (a,) = sq.arrow_ids
    vs, asg = sq.sign(v), sq.quiver.arrow(a).sign
    fam = "O" if vs > 0 else "Sp"
    return FamilyTag(fam, 1, _sign_char(asg))


def classify_family(q: SignedQuiver) -> FamilyTag:
    if not q.is_connected():
        raise DisconnectedQuiver("classify_family needs a connected quiver")
    if q.is_plain():
        kind, name = shape_type(q.vertex_ids, q.edge_pairs())
        if kind == "finite":
            return FamilyTag("FiniteQuiver", graph=name)
        if kind == "affine":
            return FamilyTag("TameQuiver", graph=name)
        return FamilyTag("Wild")

    sq = double(q)
    pairs = sq.quiver.edge_pairs()
    try:
        kind, name = shape_type(sq.vertex_ids, pairs)
    except GraphError as exc:  # pragma: no cover - connected q has connected double
        raise ClassificationError(str(exc)) from None
    if kind == "wild":
        return FamilyTag("Wild")
    if name == "A_0^(1)":
        if sq.sign(sq.vertex_ids[0]) == 0:
            raise ClassificationError("unsigned loop vertex in a non-plain quiver")
        return _loop_family(sq)

    verts, edges = _fixed_items(sq)
    size = len(sq.vertex_ids)
    vsign = [sq.sign(v) for v in verts]
    esign = [sq.arrow(a).sign for a in edges]

    if kind == "finite":
        if not name.startswith("A_"):
            raise ClassificationError(f"double of type {name} cannot carry a star")
        fam = "B" if (vsign + esign)[0] > 0 else "C"
        if verts:
            return FamilyTag(fam, (size + 1) // 2)
        return FamilyTag(fam, (size + 2) // 2, "+" if fam == "B" else "-")

    if name.startswith("A_"):
        if not verts and not edges:
            return FamilyTag("Z", size // 2)
        if len(verts) + len(edges) != 2:
            raise ClassificationError(f"cycle double with fixed set {verts + edges}")
        if len(verts) == 2:
            n = size // 2
            s = sorted(vsign)
            return FamilyTag({(1, 1): "D2", (-1, -1): "C1", (-1, 1): "A2"}[tuple(s)], n)
        if len(verts) == 1:
            n = (size + 1) // 2
            key = (vsign[0], esign[0])
            fam, rel = {(1, 1): ("D2", "+"), (-1, -1): ("C1", "-"),
                        (-1, 1): ("A2", "+"), (1, -1): ("A2", "-")}[key]
            return FamilyTag(fam, n, rel)
        n = (size + 2) // 2
        s = tuple(sorted(esign))
        fam, rel = {(1, 1): ("D2", "++"), (-1, -1): ("C1", "--"), (-1, 1): ("A2", "+-")}[s]
        return FamilyTag(fam, n, rel)

    if name.startswith("D_"):
        if len(verts) + len(edges) != 1:
            raise ClassificationError(f"D-type double with fixed set {verts + edges}")
        if verts:
            return FamilyTag("B1" if vsign[0] > 0 else "A21", (size - 1) // 2)
        return FamilyTag("B1", size // 2, "+") if esign[0] > 0 else FamilyTag("A21", size // 2, "-")

    raise ClassificationError(f"double of type {name} cannot carry a star")


def family_tag_from_label(label: str) -> FamilyTag:
    """Inverse of FamilyTag.label for the signed families (used by catalog/CLI)."""
    import re

    label = label.strip()
    m = re.fullmatch(r"(O|Sp)([+-])", label)
    if m:
        return FamilyTag(m.group(1), 1, m.group(2))
    m = re.fullmatch(r"([BC])_(\d+)(?:,([+-]))?", label)
    if m:
        return FamilyTag(m.group(1), int(m.group(2)), m.group(3) or "")
    m = re.fullmatch(r"Z_(\d+)", label)
    if m:
        return FamilyTag("Z", int(m.group(1)))
    m = re.fullmatch(r"([A-D])_(\d+)(?:,([+-]{1,2}))?\^\((\d)\)", label)
    if not m:
        raise ValueError(f"unrecognised family label {label!r}")
    letter, idx, rel, tw = m.group(1), int(m.group(2)), m.group(3) or "", m.group(4)
    if letter == "D" and tw == "2":
        return FamilyTag("D2", idx - 1, rel)
    if letter == "C" and tw == "1":
        return FamilyTag("C1", idx, rel)
    if letter == "B" and tw == "1":
        return FamilyTag("B1", idx, rel)
    if letter == "A" and tw == "2":
        if idx % 2 == 0:
            return FamilyTag("A2", idx // 2, rel)
        return FamilyTag("A21", (idx + 1) // 2, rel)
    raise ValueError(f"unrecognised family label {label!r}")


__all__ = ["FamilyTag", "classify_family", "DisconnectedQuiver", "ClassificationError",
           "family_tag_from_label", "OperationError"]
