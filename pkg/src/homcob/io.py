"""JSON / CSV formats for groups, presentations, maps, cospans and matrices."""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .group import FiniteGroup, from_cayley_table, make_cyclic, make_dihedral, make_symmetric
from .homs import GroupoidHom
from .presentation import Generator, GroupoidPresentation, Obj, PresentationMap, Relation, Word
from .tqft import Cospan, TqftMatrix


class SchemaError(ValueError):
    """Malformed input; the message names the offending field."""


def _get(d: Any, key: str, where: str):
    if not isinstance(d, dict):
        raise SchemaError(f"{where}: expected an object, got {type(d).__name__}")
    if key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    return d[key]


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ------------------------------------------------------------------ groups

_SHORT = re.compile(r"(Z|C|S|D)(\d+)")


def group_from_json(d: Any, max_order: int | None = None) -> FiniteGroup:
    kw = {} if max_order is None else {"max_order": max_order}
    kind = _get(d, "kind", "group")
    if kind == "table":
        return from_cayley_table(_get(d, "table", "group"), d.get("identity"), d.get("name", ""), **kw)
    n = _get(d, "n", "group")
    if not isinstance(n, int):
        raise SchemaError("group.n: expected an integer")
    try:
        make = {"cyclic": make_cyclic, "symmetric": make_symmetric, "dihedral": make_dihedral}[kind]
    except KeyError:
        raise SchemaError(f"group.kind: unknown kind {kind!r}") from None
    return make(n, **kw)


def group_to_json(G: FiniteGroup) -> dict:
    return {"kind": "table", "name": G.name, "identity": G.identity, "table": G.to_table()}


def parse_group(spec: str, max_order: int | None = None) -> FiniteGroup:
    """Accepts ``Z3``/``S3``/``D4`` shorthands, inline JSON, or a JSON file path."""
    m = _SHORT.fullmatch(spec.strip())
    if m:
        kind = {"Z": "cyclic", "C": "cyclic", "S": "symmetric", "D": "dihedral"}[m.group(1)]
        return group_from_json({"kind": kind, "n": int(m.group(2))}, max_order)
    if spec.lstrip().startswith("{"):
        try:
            d = json.loads(spec)
        except json.JSONDecodeError as e:
            raise SchemaError(f"--group: column {e.colno}: {e.msg}") from None
        return group_from_json(d, max_order)
    return group_from_json(load_json(spec), max_order)


# ------------------------------------------------------------ presentations


def word_to_json(w: Word) -> list:
    return [[g, "+" if s > 0 else "-"] for g, s in w.letters]


def _letters(raw: Any, where: str) -> list[tuple[str, int]]:
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of [generator, '+'|'-'] pairs")
    out = []
    for k, item in enumerate(raw):
        if not (isinstance(item, list) and len(item) == 2 and item[1] in ("+", "-")):
            raise SchemaError(f"{where}[{k}]: expected [generator, '+'|'-'], got {item!r}")
        out.append((str(item[0]), 1 if item[1] == "+" else -1))
    return out


def _word(P: GroupoidPresentation, raw: Any, where: str, src: str | None = None) -> Word:
    letters = _letters(raw, where)
    try:
        return P.word(letters, src=src)
    except (KeyError, ValueError) as e:
        raise SchemaError(f"{where}: {e}") from None


def presentation_from_json(d: Any, where: str = "presentation") -> GroupoidPresentation:
    objs = []
    for k, o in enumerate(d.get("objects", []) if isinstance(d, dict) else _get(d, "objects", where)):
        objs.append(Obj(str(_get(o, "id", f"{where}.objects[{k}]")), str(o.get("label", ""))))
    gens = []
    for k, a in enumerate(d.get("generators", [])):
        w = f"{where}.generators[{k}]"
        gens.append(Generator(str(_get(a, "id", w)), str(_get(a, "src", w)), str(_get(a, "tgt", w)), str(a.get("label", ""))))
    P = GroupoidPresentation(tuple(objs), tuple(gens))
    rels = []
    for k, r in enumerate(d.get("relations", [])):
        w = f"{where}.relations[{k}]"
        lhs_raw, rhs_raw = _get(r, "lhs", w), _get(r, "rhs", w)
        src = r.get("src")
        if src is None:
            # an empty side takes its endpoint from the other side
            first = (_letters(lhs_raw, w + ".lhs") or _letters(rhs_raw, w + ".rhs") or [None])[0]
            if first is None:
                raise SchemaError(f"{w}: both sides empty; give 'src'")
            a = P.gen.get(first[0])
            if a is None:
                raise SchemaError(f"{w}: unknown generator {first[0]!r}")
            src = a.src if first[1] > 0 else a.tgt
        lhs = _word(P, lhs_raw, w + ".lhs", src)
        rhs = _word(P, rhs_raw, w + ".rhs", src)
        rels.append(Relation(lhs, rhs))
    return P.with_relations(rels)


def presentation_to_json(P: GroupoidPresentation) -> dict:
    rels = []
    for r in P.relations:
        item = {"lhs": word_to_json(r.lhs), "rhs": word_to_json(r.rhs)}
        if not r.lhs.letters and not r.rhs.letters:
            item["src"] = r.lhs.src
        rels.append(item)
    return {
        "objects": [{"id": o.id, "label": o.label} for o in P.objects],
        "generators": [{"id": a.id, "src": a.src, "tgt": a.tgt, "label": a.label} for a in P.generators],
        "relations": rels,
    }


def map_from_json(
    d: Any, source: GroupoidPresentation, target: GroupoidPresentation, where: str = "map"
) -> PresentationMap:
    om = _get(d, "objects", where)
    gm_raw = _get(d, "generators", where)
    if not isinstance(om, dict) or not isinstance(gm_raw, dict):
        raise SchemaError(f"{where}: 'objects' and 'generators' must be objects")
    om = {str(k): str(v) for k, v in om.items()}
    gm = {}
    for a in source.generators:
        if a.id not in gm_raw:
            raise SchemaError(f"{where}.generators: generator {a.id!r} is not mapped")
        if a.src not in om:
            raise SchemaError(f"{where}.objects: object {a.src!r} is not mapped")
        gm[a.id] = _word(target, gm_raw[a.id], f"{where}.generators.{a.id}", om[a.src])
    return PresentationMap(source, target, om, gm)


def map_to_json(m: PresentationMap) -> dict:
    return {
        "objects": dict(m.object_map),
        "generators": {a: word_to_json(w) for a, w in m.generator_map.items()},
    }


def cospan_from_json(d: Any) -> Cospan:
    X = presentation_from_json(_get(d, "X", "cospan"), "cospan.X")
    Y = presentation_from_json(_get(d, "Y", "cospan"), "cospan.Y")
    M = presentation_from_json(_get(d, "M", "cospan"), "cospan.M")
    i = map_from_json(_get(d, "i", "cospan"), X, M, "cospan.i")
    j = map_from_json(_get(d, "j", "cospan"), Y, M, "cospan.j")
    return Cospan(X, Y, M, i, j, str(d.get("label", "")))


def cospan_to_json(c: Cospan) -> dict:
    return {
        "label": c.label,
        "X": presentation_to_json(c.X),
        "Y": presentation_to_json(c.Y),
        "M": presentation_to_json(c.M),
        "i": map_to_json(c.i),
        "j": map_to_json(c.j),
    }


def load_presentation(path: str | Path) -> GroupoidPresentation:
    return presentation_from_json(load_json(path), str(path))


def load_cospan(path: str | Path) -> Cospan:
    return cospan_from_json(load_json(path))


# ------------------------------------------------------------ homs, matrices


def hom_to_json(h: GroupoidHom) -> dict:
    return dict(zip(h.presentation.generator_ids, h.values))


def rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _basis(homs, sizes):
    out = []
    for k, h in enumerate(homs):
        item = {"rep": hom_to_json(h)}
        if sizes is not None:
            item["size"] = sizes[k]
        out.append(item)
    return out


def matrix_to_json(A: TqftMatrix) -> dict:
    return {
        "shape": list(A.shape),
        "rows": _basis(A.row_basis, A.row_sizes),
        "cols": _basis(A.col_basis, A.col_sizes),
        "entries": [[rational(v) for v in row] for row in A.entries],
    }


def hom_label(h: GroupoidHom) -> str:
    return " ".join(f"{g}={v}" for g, v in zip(h.presentation.generator_ids, h.values)) or "()"


def matrix_to_csv(A: TqftMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row\\col"] + [hom_label(h) for h in A.col_basis])
    for h, row in zip(A.row_basis, A.entries):
        w.writerow([hom_label(h)] + [rational(v) for v in row])
    return buf.getvalue()
