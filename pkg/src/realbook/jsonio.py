"""Versioned JSON schema for open books (schema: 1).

Books are shareable fixtures: the schema covers the page (genus,
boundary circles with their pushoff classes), the curve alphabet with
pairing tables and involution images, reference arcs, the twist word,
the involution (matrix, boundary permutation, fixed points, fixed set),
the tracked opposite-page fixed set, declared disjointness, and the
stabilization provenance.  parse(dump(book)) reproduces the book
structurally.
"""

from __future__ import annotations

import json
from typing import Any

from .intalg import IntMatrix
from .mcg import TwistWord
from .openbook import OpenBook, StabRecord
from .surface import (
    BoundaryCircle,
    FixArc,
    FixCircle,
    FixedSet,
    Involution,
    NamedCurve,
    RefArc,
    SurfaceModel,
)

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Malformed book JSON; the message carries the offending path."""


def _fixed_set_obj(fs: FixedSet) -> dict:
    return {
        "arcs": [
            {
                "ends": [list(fs_end) for fs_end in arc.ends],
                "pair_curves": list(arc.pair_curves),
                "pair_arcs": {str(k): v for k, v in sorted(arc.pair_arcs.items())},
            }
            for arc in fs.arcs
        ],
        "circles": [{"h1_class": list(c.h1_class)} for c in fs.circles],
    }


def to_obj(ob: OpenBook) -> dict:
    page = ob.page
    inv = ob.real_structure
    return {
        "schema": SCHEMA_VERSION,
        "page": {
            "genus": page.genus,
            "boundary": [
                {"id": c.cid, "pclass": list(c.pclass)} for c in page.circles
            ],
            "basis": list(page.basis),
            "form": [list(r) for r in page.form.rows],
        },
        "alphabet": [
            {
                "name": c.name,
                "h1_class": list(c.h1_class),
                "pairings": list(c.pairings),
                "arc_pairings": list(c.arc_pairings),
                "c_image": list(inv.curve_image[c.name]) if c.name in inv.curve_image else None,
            }
            for c in sorted(page.alphabet.values(), key=lambda x: x.name)
        ],
        "ref_arcs": [
            {"boundary": cid, "pairings": list(arc.pairings),
             "current_class": list(arc.current_class)}
            for cid, arc in sorted(page.ref_arcs.items())
        ],
        "disjoint": sorted(sorted(pair) for pair in page.disjoint),
        "word": [{"curve": n, "exp": e} for n, e in ob.monodromy],
        "involution": {
            "matrix": [list(r) for r in inv.matrix.rows],
            "boundary_perm": {str(k): v for k, v in sorted(inv.boundary_perm.items())},
            "fixed_points": {str(k): list(v) for k, v in sorted(inv.fixed_points.items())},
            "fixed_set": _fixed_set_obj(inv.fixed_set),
        },
        "fix_plus": _fixed_set_obj(ob.fix_plus) if ob.fix_plus is not None else None,
        "provenance": [
            {
                "type": rec.tag,
                "site": list(rec.site),
                "sigma": [[n, e] for n, e in rec.sigma],
                "images": {k: list(v) for k, v in sorted(rec.images.items())},
            }
            for rec in ob.provenance
        ],
    }


def _need(obj: dict, key: str, path: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {path}.{key}")
    return obj[key]


def _ints(x: Any, path: str) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(v, int) for v in x):
        raise SchemaError(f"{path} must be a list of integers")
    return tuple(x)


def _parse_fixed_set(obj: Any, path: str) -> FixedSet:
    arcs = []
    for i, a in enumerate(_need(obj, "arcs", path)):
        ends = _need(a, "ends", f"{path}.arcs[{i}]")
        if len(ends) != 2:
            raise SchemaError(f"{path}.arcs[{i}].ends must have two entries")
        arcs.append(FixArc(
            ends=tuple((int(e[0]), int(e[1])) for e in ends),
            pair_curves=_ints(_need(a, "pair_curves", f"{path}.arcs[{i}]"),
                              f"{path}.arcs[{i}].pair_curves"),
            pair_arcs={int(k): int(v)
                       for k, v in _need(a, "pair_arcs", f"{path}.arcs[{i}]").items()},
        ))
    circles = [
        FixCircle(h1_class=_ints(_need(c, "h1_class", f"{path}.circles[{i}]"),
                                 f"{path}.circles[{i}].h1_class"))
        for i, c in enumerate(_need(obj, "circles", path))
    ]
    return FixedSet(arcs=tuple(arcs), circles=tuple(circles))


def from_obj(obj: dict) -> OpenBook:
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    if obj.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"schema must be {SCHEMA_VERSION}, got {obj.get('schema')!r}")
    pg = _need(obj, "page", "$")
    genus = int(_need(pg, "genus", "$.page"))
    circles = tuple(
        BoundaryCircle(cid=int(_need(c, "id", f"$.page.boundary[{i}]")),
                       pclass=_ints(_need(c, "pclass", f"$.page.boundary[{i}]"),
                                    f"$.page.boundary[{i}].pclass"))
        for i, c in enumerate(_need(pg, "boundary", "$.page"))
    )
    basis = tuple(str(x) for x in _need(pg, "basis", "$.page"))
    rank = len(basis)
    form_rows = _need(pg, "form", "$.page")
    form = IntMatrix([_ints(r, "$.page.form") for r in form_rows], ncols=rank)
    if form.shape != (rank, rank):
        raise SchemaError("$.page.form must be square of basis size")

    alphabet = {}
    images = {}
    for i, c in enumerate(_need(obj, "alphabet", "$")):
        name = str(_need(c, "name", f"$.alphabet[{i}]"))
        alphabet[name] = NamedCurve(
            name=name,
            h1_class=_ints(_need(c, "h1_class", f"$.alphabet[{i}]"),
                           f"$.alphabet[{i}].h1_class"),
            pairings=_ints(_need(c, "pairings", f"$.alphabet[{i}]"),
                           f"$.alphabet[{i}].pairings"),
            arc_pairings=_ints(_need(c, "arc_pairings", f"$.alphabet[{i}]"),
                               f"$.alphabet[{i}].arc_pairings"),
        )
        img = c.get("c_image")
        if img is not None:
            if len(img) != 2:
                raise SchemaError(f"$.alphabet[{i}].c_image must be [name, sign]")
            images[name] = (str(img[0]), int(img[1]))

    ref_arcs = {}
    for i, a in enumerate(_need(obj, "ref_arcs", "$")):
        cid = int(_need(a, "boundary", f"$.ref_arcs[{i}]"))
        ref_arcs[cid] = RefArc(
            target_boundary=cid,
            current_class=_ints(a.get("current_class", [0] * rank),
                                f"$.ref_arcs[{i}].current_class"),
            pairings=_ints(_need(a, "pairings", f"$.ref_arcs[{i}]"),
                           f"$.ref_arcs[{i}].pairings"),
        )

    disjoint = frozenset(
        frozenset((str(a), str(b))) for a, b in _need(obj, "disjoint", "$")
    )
    page = SurfaceModel(genus=genus, circles=circles, basis=basis, form=form,
                        alphabet=alphabet, ref_arcs=ref_arcs, disjoint=disjoint)

    word_obj = _need(obj, "word", "$")
    word: TwistWord = tuple(
        (str(_need(l, "curve", f"$.word[{i}]")), int(_need(l, "exp", f"$.word[{i}]")))
        for i, l in enumerate(word_obj)
    )
    for name, _ in word:
        if name not in alphabet:
            raise SchemaError(f"$.word uses unknown curve {name!r}")

    iv = _need(obj, "involution", "$")
    matrix = IntMatrix([_ints(r, "$.involution.matrix")
                        for r in _need(iv, "matrix", "$.involution")], ncols=rank)
    if matrix.shape != (rank, rank):
        raise SchemaError("$.involution.matrix must be square of basis size")
    perm = {int(k): int(v) for k, v in _need(iv, "boundary_perm", "$.involution").items()}
    fixed_points = {int(k): tuple(int(x) for x in v)
                    for k, v in _need(iv, "fixed_points", "$.involution").items()}
    inv = Involution(
        matrix=matrix,
        boundary_perm=perm,
        fixed_points=fixed_points,
        fixed_set=_parse_fixed_set(_need(iv, "fixed_set", "$.involution"),
                                   "$.involution.fixed_set"),
        curve_image=images,
    )

    fp = obj.get("fix_plus")
    fix_plus = _parse_fixed_set(fp, "$.fix_plus") if fp is not None else None

    provenance = []
    for i, rec in enumerate(obj.get("provenance", [])):
        provenance.append(StabRecord(
            tag=str(_need(rec, "type", f"$.provenance[{i}]")),
            site=tuple(_need(rec, "site", f"$.provenance[{i}]")),
            sigma=tuple((str(n), int(e))
                        for n, e in _need(rec, "sigma", f"$.provenance[{i}]")),
            images={str(k): (str(v[0]), int(v[1]))
                    for k, v in _need(rec, "images", f"$.provenance[{i}]").items()},
        ))

    return OpenBook(page=page, monodromy=word, real_structure=inv,
                    fix_plus=fix_plus, provenance=tuple(provenance))


def dumps(ob: OpenBook) -> str:
    return json.dumps(to_obj(ob), indent=2, sort_keys=True)


def loads(text: str) -> OpenBook:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return from_obj(obj)
