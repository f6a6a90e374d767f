"""Text format for Lambek diagrams.

One declaration per line, ``#`` starts a comment::

    model abgroup
    object Z gens 1 rels []
    object Z2 gens 1 rels [2]
    morph two Z Z [2]
    morph mod2 Z Z2 [1]
    ...
    lambek f g f' g' a b c

Objects are ``size <n>`` (ptset), ``gens <p> rels [..]`` (abgroup) or
``group <name>`` / ``table <n> [..]`` (grp).  Matrices are row-major with
rows separated by ``;``.  Morphism payloads are image lists for ptset and
grp and ``dst.rank x src.rank`` matrices for abgroup.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import intmat
from .errors import (
    DiagramSyntaxError,
    EndpointMismatch,
    InvalidPayload,
    NonCommutingSquare,
    UnknownGroup,
    UnknownName,
)
from .lambek import LambekDiagram
from .models import abgroup as ab
from .models import grp
from .models import ptset

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
BINDING = ("f", "g", "f'", "g'", "a", "b", "c")


@dataclass
class ObjectDecl:
    name: str
    kind: str  # size | gens | group | table
    value: object
    obj: object = field(compare=False, repr=False, default=None)


@dataclass
class MorphDecl:
    name: str
    src: str
    dst: str
    entries: tuple
    morphism: object = field(compare=False, repr=False, default=None)


@dataclass
class DiagramDoc:
    """A parsed diagram document; equality is structural."""

    model: str
    objects: list
    morphisms: list
    binding: tuple

    def object(self, name):
        return _lookup(self.objects, name).obj

    def morphism(self, name):
        return _lookup(self.morphisms, name).morphism

    def diagram(self) -> LambekDiagram:
        return LambekDiagram(*(self.morphism(n) for n in self.binding))


def _lookup(decls, name):
    for d in decls:
        if d.name == name:
            return d
    raise KeyError(name)


def _parse_matrix(text, line):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise DiagramSyntaxError(f"expected a bracketed list, got {text!r}", line)
    body = text[1:-1].strip()
    if not body:
        return ()
    rows = []
    for row in body.split(";"):
        try:
            rows.append(tuple(int(x) for x in row.split()))
        except ValueError:
            raise DiagramSyntaxError(f"non-integer entry in {text!r}", line) from None
    if len({len(r) for r in rows}) != 1 or not rows[0]:
        raise DiagramSyntaxError(f"ragged matrix {text!r}", line)
    return tuple(rows)


def _check_name(name, line):
    if not NAME.match(name):
        raise DiagramSyntaxError(f"invalid name {name!r}", line)
    return name


def _shape(rows, nrows, ncols, what, line):
    """Reshape a parsed matrix literal to ``nrows x ncols``."""
    if not rows:
        if nrows and ncols:
            raise DiagramSyntaxError(f"{what}: expected a {nrows}x{ncols} matrix, got []", line)
        return tuple(() for _ in range(nrows))
    if len(rows) != nrows or len(rows[0]) != ncols:
        raise DiagramSyntaxError(
            f"{what}: expected a {nrows}x{ncols} matrix, got {len(rows)}x{len(rows[0])}", line
        )
    return rows


def _build_object(model, decl, line):
    try:
        if model == "ptset":
            return ptset.PtObject(decl.value)
        if model == "abgroup":
            rank, rels = decl.value
            if rank < 0:
                raise InvalidPayload("negative generator count")
            ncols = len(rels[0]) if rels and rels[0] else 0
            return ab.AbPresentation(rank, rels, ncols)
        if decl.kind == "group":
            return grp.builtin_group(decl.value)
        return grp.CayleyGroup(decl.value)
    except UnknownGroup as exc:
        raise UnknownName(str(exc), line, decl.value) from None
    except InvalidPayload as exc:
        raise DiagramSyntaxError(f"object {decl.name!r}: {exc}", line, decl.name) from None


def _build_morphism(model, decl, src, dst, line):
    try:
        if model == "ptset":
            return ptset.ptmap(src, dst, decl.entries)
        if model == "abgroup":
            rows = _shape(decl.entries, dst.rank, src.rank, f"morphism {decl.name!r}", line)
            mat = intmat.zeros(dst.rank, src.rank)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    mat[i, j] = v
            return ab.abmap(src, dst, mat)
        return grp.grphom(src, dst, decl.entries)
    except InvalidPayload as exc:
        raise DiagramSyntaxError(f"morphism {decl.name!r}: {exc}", line, decl.name) from None


def parse_diagram(text: str) -> DiagramDoc:
    model = None
    objects, morphisms, binding = [], [], None
    lines = {}
    names = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        parts = content.split(None, 1)
        keyword, rest = parts[0], (parts[1] if len(parts) > 1 else "")

        if keyword == "model":
            if model is not None:
                raise DiagramSyntaxError("duplicate model line", lineno)
            if rest not in ("ptset", "abgroup", "grp"):
                raise DiagramSyntaxError(f"unknown model {rest!r}", lineno)
            model = rest
            continue
        if model is None:
            raise DiagramSyntaxError("the first declaration must be 'model'", lineno)

        if keyword == "object":
            decl = _parse_object(model, rest, lineno)
            if decl.name in names:
                raise DiagramSyntaxError(f"duplicate name {decl.name!r}", lineno, decl.name)
            decl.obj = _build_object(model, decl, lineno)
            names.add(decl.name)
            objects.append(decl)
            lines[decl.name] = lineno
        elif keyword == "morph":
            m = re.match(r"(\S+)\s+(\S+)\s+(\S+)\s+(\[.*\])\Z", rest)
            if not m:
                raise DiagramSyntaxError("expected: morph <name> <src> <dst> [entries]", lineno)
            name, src, dst, body = m.groups()
            _check_name(name, lineno)
            if name in names:
                raise DiagramSyntaxError(f"duplicate name {name!r}", lineno, name)
            src_obj = _resolve_object(objects, src, lineno)
            dst_obj = _resolve_object(objects, dst, lineno)
            rows = _parse_matrix(body, lineno)
            if model == "abgroup":
                entries = _shape(rows, dst_obj.rank, src_obj.rank, f"morphism {name!r}", lineno)
            else:
                if len(rows) > 1:
                    raise DiagramSyntaxError("image lists take a single row", lineno, name)
                entries = rows[0] if rows else ()
            decl = MorphDecl(name, src, dst, entries)
            decl.morphism = _build_morphism(model, decl, src_obj, dst_obj, lineno)
            names.add(name)
            morphisms.append(decl)
            lines[name] = lineno
        elif keyword == "lambek":
            if binding is not None:
                raise DiagramSyntaxError("duplicate lambek line", lineno)
            binding = tuple(rest.split())
            if len(binding) != 7:
                raise DiagramSyntaxError("lambek needs seven morphism names: f g f' g' a b c", lineno)
            for name in binding:
                if not any(d.name == name for d in morphisms):
                    raise UnknownName(f"unknown morphism {name!r}", lineno, name)
            lines["lambek"] = lineno
        else:
            raise DiagramSyntaxError(f"unknown keyword {keyword!r}", lineno)

    if model is None:
        raise DiagramSyntaxError("missing model line")
    if binding is None:
        raise DiagramSyntaxError("missing lambek line")
    doc = DiagramDoc(model, objects, morphisms, binding)
    _validate(doc, lines)
    return doc


def _resolve_object(objects, name, line):
    for d in objects:
        if d.name == name:
            return d.obj
    raise UnknownName(f"unknown object {name!r}", line, name)


def _parse_object(model, rest, line):
    m = re.match(r"(\S+)\s+(\S+)\s*(.*)\Z", rest)
    if not m:
        raise DiagramSyntaxError("expected: object <name> <kind> ...", line)
    name, kind, tail = m.groups()
    _check_name(name, line)
    expected = {"ptset": ("size",), "abgroup": ("gens",), "grp": ("group", "table")}[model]
    if kind not in expected:
        raise DiagramSyntaxError(f"{model} objects are declared with {' or '.join(expected)}", line, name)
    if kind == "size":
        if not tail.strip().isdigit():
            raise DiagramSyntaxError("size must be a positive integer", line, name)
        return ObjectDecl(name, kind, int(tail))
    if kind == "group":
        if not tail.strip() or len(tail.split()) != 1:
            raise DiagramSyntaxError("expected a catalog group name", line, name)
        return ObjectDecl(name, kind, tail.strip())
    m = re.match(r"(\d+)\s+(?:(rels)\s+)?(\[.*\])\Z", tail.strip())
    if not m or (kind == "gens") != bool(m.group(2)):
        form = "gens <p> rels [..]" if kind == "gens" else "table <n> [..]"
        raise DiagramSyntaxError(f"expected: object <name> {form}", line, name)
    n = int(m.group(1))
    rows = _parse_matrix(m.group(3), line)
    if kind == "gens":
        ncols = len(rows[0]) if rows else 0
        return ObjectDecl(name, kind, (n, _shape(rows, n, ncols, f"object {name!r}", line)))
    return ObjectDecl(name, kind, _shape(rows, n, n, f"object {name!r}", line))


def _validate(doc, lines):
    by_role = dict(zip(LambekDiagram.NAMES, doc.binding))
    try:
        doc.diagram()
    except EndpointMismatch as exc:
        name = by_role.get(exc.name, exc.name)
        raise EndpointMismatch(
            f"morphism {name!r} has endpoints incompatible with the lambek binding",
            lines.get(name), name,
        ) from None
    except NonCommutingSquare as exc:
        raise NonCommutingSquare(
            f"square {exc.name} does not commute", lines.get("lambek"), exc.name
        ) from None


def serialize(doc: DiagramDoc) -> str:
    out = [f"model {doc.model}"]
    for d in doc.objects:
        if d.kind == "size":
            out.append(f"object {d.name} size {d.value}")
        elif d.kind == "gens":
            rank, rels = d.value
            out.append(f"object {d.name} gens {rank} rels {_format_rows(rels)}")
        elif d.kind == "group":
            out.append(f"object {d.name} group {d.value}")
        else:
            out.append(f"object {d.name} table {len(d.value)} {_format_rows(d.value)}")
    for d in doc.morphisms:
        entries = _format_rows(d.entries) if doc.model == "abgroup" else _format_rows((d.entries,))
        out.append(f"morph {d.name} {d.src} {d.dst} {entries}")
    out.append("lambek " + " ".join(doc.binding))
    return "\n".join(out) + "\n"


def _format_rows(rows):
    rows = [r for r in rows if r]
    if not rows:
        return "[]"
    return "[" + "; ".join(" ".join(str(x) for x in r) for r in rows) + "]"


def object_decl(model, name, obj) -> ObjectDecl:
    """Declaration for an in-memory object (used by the generator)."""
    if model == "ptset":
        return ObjectDecl(name, "size", obj.size, obj)
    if model == "abgroup":
        return ObjectDecl(name, "gens", (obj.rank, obj.rels), obj)
    if obj.name in grp.CATALOG and grp.builtin_group(obj.name) == obj:
        return ObjectDecl(name, "group", obj.name, obj)
    return ObjectDecl(name, "table", obj.table, obj)


def morph_decl(model, name, src_name, dst_name, morphism) -> MorphDecl:
    if model == "abgroup":
        entries = tuple(tuple(int(x) for x in row) for row in morphism.data.tolist())
        if not morphism.data.size:
            entries = tuple(() for _ in range(morphism.data.shape[0]))
    else:
        entries = tuple(morphism.data)
    return MorphDecl(name, src_name, dst_name, entries, morphism)


def document(model, objects, morphisms, binding=BINDING) -> DiagramDoc:
    """Assemble a document from ``(name, obj)`` and ``(name, src, dst, morphism)`` lists."""
    return DiagramDoc(
        model,
        [object_decl(model, n, o) for n, o in objects],
        [morph_decl(model, n, s, d, m) for n, s, d, m in morphisms],
        tuple(binding),
    )


__all__ = [
    "DiagramDoc",
    "ObjectDecl",
    "MorphDecl",
    "parse_diagram",
    "serialize",
    "document",
]
