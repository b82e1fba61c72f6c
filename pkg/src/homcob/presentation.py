"""Finitely presented groupoids, words, presentation maps and their colimits.

Words are stored in application order: ``letters[0]`` is traversed first.
They are kept freely reduced; relations are never used for rewriting, only
checked by evaluating both sides in a finite group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Letter = tuple[str, int]


class PresentationError(ValueError):
    pass


class EndpointMismatch(PresentationError):
    pass


class UnknownGenerator(PresentationError, KeyError):
    pass


class UnknownObject(PresentationError, KeyError):
    pass


class SourceMismatch(PresentationError):
    pass


@dataclass(frozen=True)
class Obj:
    id: str
    label: str = ""


@dataclass(frozen=True)
class Generator:
    id: str
    src: str
    tgt: str
    label: str = ""


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced composable word from ``src`` to ``tgt``."""

    letters: tuple[Letter, ...]
    src: str
    tgt: str

    def __post_init__(self):
        letters = tuple((str(g), int(s)) for g, s in self.letters)
        if any(s not in (1, -1) for _, s in letters):
            raise PresentationError(f"letter orientation must be +1 or -1: {letters}")
        object.__setattr__(self, "letters", free_reduce(letters))
        if not self.letters and self.src != self.tgt:
            raise EndpointMismatch(f"empty word cannot go from {self.src!r} to {self.tgt!r}")

    @classmethod
    def empty(cls, obj: str) -> Word:
        return cls((), obj, obj)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"1_{self.src}"
        return " ".join(g if s > 0 else f"{g}^-1" for g, s in self.letters)

    def then(self, other: Word) -> Word:
        """``other`` after ``self``."""
        return compose_words(self, other)

    def inverse(self) -> Word:
        return invert_word(self)

    @property
    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class GroupoidPresentation:
    objects: tuple[Obj, ...] = ()
    generators: tuple[Generator, ...] = ()
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))

    @cached_property
    def object_ids(self) -> tuple[str, ...]:
        return tuple(o.id for o in self.objects)

    @cached_property
    def generator_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.generators)

    @cached_property
    def gen(self) -> dict[str, Generator]:
        return {a.id: a for a in self.generators}

    @cached_property
    def gen_index(self) -> dict[str, int]:
        return {a.id: k for k, a in enumerate(self.generators)}

    @cached_property
    def obj(self) -> dict[str, Obj]:
        return {o.id: o for o in self.objects}

    def letter(self, gen_id: str, sign: int = 1) -> Word:
        try:
            a = self.gen[gen_id]
        except KeyError:
            raise UnknownGenerator(gen_id) from None
        if sign > 0:
            return Word(((gen_id, 1),), a.src, a.tgt)
        return Word(((gen_id, -1),), a.tgt, a.src)

    def word(self, letters: Sequence[Letter], src: str | None = None) -> Word:
        """Build a word from application-ordered letters, checking the chain."""
        if not letters:
            if src is None:
                raise PresentationError("empty word needs an explicit object")
            if src not in self.obj:
                raise UnknownObject(src)
            return Word.empty(src)
        w = None
        for g, s in letters:
            step = self.letter(g, s)
            w = step if w is None else compose_words(w, step)
        if src is not None and w.src != src:
            raise EndpointMismatch(f"word starts at {w.src!r}, expected {src!r}")
        return w

    def product(self, expr: str, src: str | None = None) -> Word:
        """Parse a group-style product such as ``"c^-1 d^-1 b d a c"``.

        Products read right to left: the rightmost factor is traversed first.
        """
        letters = []
        for tok in expr.replace("*", " ").replace("·", " ").split():
            m = re.fullmatch(r"(.+?)(\^-1|\^\+?1|⁻¹)?", tok)
            letters.append((m.group(1), -1 if m.group(2) in ("^-1", "⁻¹") else 1))
        return self.word(letters[::-1], src=src)

    def with_relations(self, extra: Iterable[Relation]) -> GroupoidPresentation:
        return GroupoidPresentation(self.objects, self.generators, self.relations + tuple(extra))


def word_violations(P: GroupoidPresentation, w: Word) -> list[str]:
    out = []
    if w.src not in P.obj:
        out.append(f"word {w} starts at undeclared object {w.src!r}")
    if w.tgt not in P.obj:
        out.append(f"word {w} ends at undeclared object {w.tgt!r}")
    at = w.src
    for g, s in w.letters:
        a = P.gen.get(g)
        if a is None:
            out.append(f"word {w} uses unknown generator {g!r}")
            return out
        start, end = (a.src, a.tgt) if s > 0 else (a.tgt, a.src)
        if start != at:
            out.append(f"word {w} breaks at letter {g}{'' if s > 0 else '^-1'}: at {at!r}, letter starts at {start!r}")
            return out
        at = end
    if at != w.tgt:
        out.append(f"word {w} ends at {at!r}, declared {w.tgt!r}")
    return out


def validate(P: GroupoidPresentation) -> list[str]:
    """All invariant violations of ``P``; an empty list means valid."""
    out = []
    ids = [o.id for o in P.objects]
    if len(set(ids)) != len(ids):
        out.append("duplicate object ids")
    gids = [a.id for a in P.generators]
    if len(set(gids)) != len(gids):
        out.append("duplicate generator ids")
    objs = set(ids)
    for a in P.generators:
        if a.src not in objs:
            out.append(f"generator {a.id!r} has undeclared source {a.src!r}")
        if a.tgt not in objs:
            out.append(f"generator {a.id!r} has undeclared target {a.tgt!r}")
    for k, rel in enumerate(P.relations):
        for side, w in (("lhs", rel.lhs), ("rhs", rel.rhs)):
            out.extend(f"relation {k} {side}: {v}" for v in word_violations(P, w))
        if (rel.lhs.src, rel.lhs.tgt) != (rel.rhs.src, rel.rhs.tgt):
            out.append(
                f"relation {k} sides have different endpoints: "
                f"{rel.lhs.src}->{rel.lhs.tgt} vs {rel.rhs.src}->{rel.rhs.tgt}"
            )
    return out


def compose_words(w1: Word, w2: Word) -> Word:
    """``w2 ∘ w1``: traverse ``w1`` first."""
    if w1.tgt != w2.src:
        raise EndpointMismatch(f"cannot compose: {w1} ends at {w1.tgt!r}, {w2} starts at {w2.src!r}")
    return Word(w1.letters + w2.letters, w1.src, w2.tgt)


def invert_word(w: Word) -> Word:
    return Word(tuple((g, -s) for g, s in reversed(w.letters)), w.tgt, w.src)


@dataclass(frozen=True, eq=False)
class PresentationMap:
    """A groupoid map given on objects and on generators.

    Whether relations are sent to equal morphisms is not checked here; see
    ``homs.g_consistency_check`` for the finite-group audit.
    """

    source: GroupoidPresentation
    target: GroupoidPresentation
    object_map: Mapping[str, str]
    generator_map: Mapping[str, Word]

    def __eq__(self, other):
        if not isinstance(other, PresentationMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.object_map) == dict(other.object_map)
            and dict(self.generator_map) == dict(other.generator_map)
        )

    def __call__(self, w: Word) -> Word:
        return apply_map(self, w)

    def on_object(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise UnknownObject(x) from None

    def on_generator(self, gen_id: str) -> Word:
        try:
            return self.generator_map[gen_id]
        except KeyError:
            raise UnknownGenerator(gen_id) from None


def map_violations(m: PresentationMap) -> list[str]:
    out = []
    for o in m.source.objects:
        t = m.object_map.get(o.id)
        if t is None:
            out.append(f"object {o.id!r} is not mapped")
        elif t not in m.target.obj:
            out.append(f"object {o.id!r} maps to undeclared {t!r}")
    for a in m.source.generators:
        w = m.generator_map.get(a.id)
        if w is None:
            out.append(f"generator {a.id!r} is not mapped")
            continue
        out.extend(f"image of {a.id!r}: {v}" for v in word_violations(m.target, w))
        want = (m.object_map.get(a.src), m.object_map.get(a.tgt))
        if (w.src, w.tgt) != want:
            out.append(f"image of {a.id!r} runs {w.src}->{w.tgt}, expected {want[0]}->{want[1]}")
    return out


def apply_map(m: PresentationMap, w: Word) -> Word:
    letters: list[Letter] = []
    for g, s in w.letters:
        img = m.on_generator(g)
        letters.extend(img.letters if s > 0 else invert_word(img).letters)
    return Word(tuple(letters), m.on_object(w.src), m.on_object(w.tgt))


def identity_map(P: GroupoidPresentation) -> PresentationMap:
    return PresentationMap(
        P, P, {o.id: o.id for o in P.objects}, {a.id: P.letter(a.id) for a in P.generators}
    )


def compose_maps(second: PresentationMap, first: PresentationMap) -> PresentationMap:
    """``second ∘ first``."""
    if first.target != second.source:
        raise SourceMismatch("maps are not composable")
    return PresentationMap(
        first.source,
        second.target,
        {x: second.on_object(y) for x, y in first.object_map.items()},
        {a: apply_map(second, w) for a, w in first.generator_map.items()},
    )


def rename(P: GroupoidPresentation, prefix: str) -> tuple[GroupoidPresentation, PresentationMap]:
    """Copy of ``P`` with every id prefixed, plus the renaming isomorphism."""
    o = {x.id: prefix + x.id for x in P.objects}
    g = {a.id: prefix + a.id for a in P.generators}

    def rw(w: Word) -> Word:
        return Word(tuple((g[x], s) for x, s in w.letters), o[w.src], o[w.tgt])

    Q = GroupoidPresentation(
        tuple(Obj(o[x.id], x.label) for x in P.objects),
        tuple(Generator(g[a.id], o[a.src], o[a.tgt], a.label) for a in P.generators),
        tuple(Relation(rw(r.lhs), rw(r.rhs)) for r in P.relations),
    )
    m = PresentationMap(P, Q, o, {a.id: Q.letter(g[a.id]) for a in P.generators})
    return Q, m


LEFT, RIGHT = "L.", "R."


def coproduct(
    P1: GroupoidPresentation, P2: GroupoidPresentation
) -> tuple[GroupoidPresentation, PresentationMap, PresentationMap]:
    Q1, r1 = rename(P1, LEFT)
    Q2, r2 = rename(P2, RIGHT)
    P = GroupoidPresentation(
        Q1.objects + Q2.objects, Q1.generators + Q2.generators, Q1.relations + Q2.relations
    )
    inj1 = PresentationMap(P1, P, r1.object_map, r1.generator_map)
    inj2 = PresentationMap(P2, P, r2.object_map, r2.generator_map)
    return P, inj1, inj2


def coproduct_map(
    m1: PresentationMap,
    m2: PresentationMap,
    source: GroupoidPresentation,
    target: GroupoidPresentation,
) -> PresentationMap:
    """``m1 ⊔ m2`` between coproducts built by :func:`coproduct`."""
    _, r1 = rename(m1.target, LEFT)
    _, r2 = rename(m2.target, RIGHT)
    om, gm = {}, {}
    for prefix, m, r in ((LEFT, m1, r1), (RIGHT, m2, r2)):
        for x, y in m.object_map.items():
            om[prefix + x] = r.object_map[y]
        for a, w in m.generator_map.items():
            gm[prefix + a] = apply_map(r, w)
    return PresentationMap(source, target, om, gm)


class UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}
        self.merges = 0

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # keep the minimal id as root so representatives are deterministic
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.merges += 1
        return True


def pushout(
    PY: GroupoidPresentation, f: PresentationMap, g: PresentationMap
) -> tuple[GroupoidPresentation, PresentationMap, PresentationMap]:
    """Pushout of ``PM <-f- PY -g-> PN``.

    Objects are the coequaliser of the object maps; generators are the
    disjoint union; relations are those of both sides plus ``f(b) = g(b)``
    for every generator ``b`` of ``PY``.
    """
    if f.source != PY or g.source != PY:
        raise SourceMismatch("both maps must start at the apex presentation")
    PM, PN = f.target, g.target
    D, inM, inN = coproduct(PM, PN)

    uf = UnionFind(D.object_ids)
    for y in PY.object_ids:
        uf.union(inM.on_object(f.on_object(y)), inN.on_object(g.on_object(y)))
    q = {x: uf.find(x) for x in D.object_ids}

    def rw(w: Word) -> Word:
        return Word(w.letters, q[w.src], q[w.tgt])

    objects = tuple(o for o in D.objects if q[o.id] == o.id)
    gens = tuple(Generator(a.id, q[a.src], q[a.tgt], a.label) for a in D.generators)
    rels = [Relation(rw(r.lhs), rw(r.rhs)) for r in D.relations]
    P0 = GroupoidPresentation(objects, gens, ())

    def post(inj: PresentationMap) -> PresentationMap:
        return PresentationMap(
            inj.source,
            P0,
            {x: q[y] for x, y in inj.object_map.items()},
            {a: rw(w) for a, w in inj.generator_map.items()},
        )

    pM0, pN0 = post(inM), post(inN)
    for b in PY.generators:
        w = PY.letter(b.id)
        rels.append(Relation(apply_map(pM0, apply_map(f, w)), apply_map(pN0, apply_map(g, w))))
    P = GroupoidPresentation(objects, gens, tuple(rels))
    pM = PresentationMap(PM, P, pM0.object_map, pM0.generator_map)
    pN = PresentationMap(PN, P, pN0.object_map, pN0.generator_map)
    return P, pM, pN


def add_basepoint(
    P: GroupoidPresentation,
    at: str,
    label: str = "",
    obj_id: str | None = None,
    gen_id: str | None = None,
) -> tuple[GroupoidPresentation, str]:
    """Add a new object joined to ``at`` by one free generator.

    Returns the extended presentation and the id of the new generator.
    """
    if at not in P.obj:
        raise UnknownObject(at)
    obj_id = obj_id or _fresh(P.object_ids, f"{at}+")
    gen_id = gen_id or _fresh(P.generator_ids, f"gamma[{obj_id}]")
    Q = GroupoidPresentation(
        P.objects + (Obj(obj_id, label),),
        P.generators + (Generator(gen_id, at, obj_id, label),),
        P.relations,
    )
    return Q, gen_id


def _fresh(taken: Sequence[str], base: str) -> str:
    taken = set(taken)
    name, k = base, 1
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def path_components(P: GroupoidPresentation) -> list[tuple[str, ...]]:
    """Connected components of the object/generator graph, in object order."""
    uf = UnionFind(P.object_ids)
    for a in P.generators:
        uf.union(a.src, a.tgt)
    comps: dict[str, list[str]] = {}
    for x in P.object_ids:
        comps.setdefault(uf.find(x), []).append(x)
    return [tuple(c) for c in comps.values()]
