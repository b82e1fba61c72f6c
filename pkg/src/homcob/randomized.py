"""Seeded random presentations, pushout diagrams and composable cospans.

Random cospans are built so that both boundary maps respect relations in
every group: ``M`` carries copies of the boundary generators and relations,
and the outgoing boundary is attached through connecting generators, so a
boundary relation maps to a conjugate of a relation of ``M``.
"""

from __future__ import annotations

import random

from .presentation import Generator, GroupoidPresentation, Obj, PresentationMap, Relation, Word
from .tqft import Cospan

LIMITS = {"objects": 4, "generators": 4, "relations": 2}


def random_boundary(
    rng: random.Random, tag: str, max_objects: int = 2, max_gens: int = 2, max_rels: int = 1
) -> GroupoidPresentation:
    objs = [f"{tag}{k}" for k in range(rng.randint(1, max_objects))]
    gens = []
    for k in range(rng.randint(0, max_gens)):
        gens.append(Generator(f"{tag}g{k}", rng.choice(objs), rng.choice(objs)))
    P = GroupoidPresentation(tuple(Obj(o) for o in objs), tuple(gens))
    loops = [a for a in gens if a.src == a.tgt]
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        if not loops:
            break
        a = rng.choice(loops)
        same = [b for b in loops if b.src == a.src and b.id != a.id]
        if same and rng.random() < 0.5:
            b = rng.choice(same)
            rels.append(Relation(P.product(f"{a.id} {b.id}"), P.product(f"{b.id} {a.id}")))
        else:
            power = rng.choice((2, 3))
            rels.append(Relation(P.word([(a.id, 1)] * power), Word.empty(a.src)))
    return P.with_relations(rels)


def _within_limits(P: GroupoidPresentation) -> bool:
    return (
        len(P.objects) <= LIMITS["objects"]
        and len(P.generators) <= LIMITS["generators"]
        and len(P.relations) <= LIMITS["relations"]
    )


def _attempt_cospan(rng: random.Random, X: GroupoidPresentation, Y: GroupoidPresentation) -> Cospan:
    iobj = {x: f"i:{x}" for x in X.object_ids}
    jobj = {y: f"j:{y}" for y in Y.object_ids}
    objs = list(iobj.values()) + list(jobj.values())
    if len(objs) < LIMITS["objects"] and rng.random() < 0.4:
        objs.append("m0")

    gens: list[Generator] = []
    rels: list[tuple] = []  # (letters, letters, src) over M generator ids

    xg = {a.id: f"a:{a.id}" for a in X.generators}
    for a in X.generators:
        gens.append(Generator(xg[a.id], iobj[a.src], iobj[a.tgt]))
    # copies of the outgoing boundary sit over placement objects
    touched = {o for b in Y.generators for o in (b.src, b.tgt)}
    place = {
        y: rng.choice(objs) if y in touched and rng.random() < 0.6 else jobj[y] for y in Y.object_ids
    }
    yg = {b.id: f"b:{b.id}" for b in Y.generators}
    for b in Y.generators:
        gens.append(Generator(yg[b.id], place[b.src], place[b.tgt]))
    tau = {}
    for y in Y.object_ids:
        if place[y] != jobj[y]:
            tau[y] = f"t:{y}"
            gens.append(Generator(tau[y], place[y], jobj[y]))
    for _ in range(rng.randint(0, 2)):
        gens.append(Generator(f"e{len(gens)}", rng.choice(objs), rng.choice(objs)))

    def copy(w, table):
        return [(table[g], s) for g, s in w.letters]

    for r in X.relations:
        rels.append((copy(r.lhs, xg), copy(r.rhs, xg), iobj[r.lhs.src]))
    for r in Y.relations:
        rels.append((copy(r.lhs, yg), copy(r.rhs, yg), place[r.lhs.src]))
    loops = [a for a in gens if a.src == a.tgt]
    if loops and rng.random() < 0.5:
        a = rng.choice(loops)
        others = [b for b in loops if b.src == a.src and b.id != a.id]
        if others:
            b = rng.choice(others)
            rels.append(([(a.id, 1)], [(b.id, 1)], a.src))
        else:
            rels.append(([(a.id, 1)] * rng.choice((2, 3)), [], a.src))

    M0 = GroupoidPresentation(tuple(Obj(o) for o in objs), tuple(gens))
    M = M0.with_relations(Relation(M0.word(l, src=s), M0.word(r, src=s)) for l, r, s in rels)

    i = PresentationMap(X, M, iobj, {a.id: M.letter(xg[a.id]) for a in X.generators})
    jgm = {}
    for b in Y.generators:
        letters = []
        if b.src in tau:
            letters.append((tau[b.src], -1))
        letters.append((yg[b.id], 1))
        if b.tgt in tau:
            letters.append((tau[b.tgt], 1))
        jgm[b.id] = M.word(letters)
    j = PresentationMap(Y, M, jobj, jgm)
    return Cospan(X, Y, M, i, j)


def random_cospan(rng: random.Random, X: GroupoidPresentation, Y: GroupoidPresentation) -> Cospan:
    """A random cospan ``X -> Y`` with every presentation inside ``LIMITS``."""
    for _ in range(1000):
        c = _attempt_cospan(rng, X, Y)
        if _within_limits(c.M):
            return c
    raise RuntimeError("could not sample a cospan within the size limits")


def random_composable_pair(rng: random.Random) -> tuple[Cospan, Cospan]:
    while True:
        X = random_boundary(rng, "x")
        Y = random_boundary(rng, "y")
        Z = random_boundary(rng, "z")
        if len(X.objects) + len(Y.objects) > LIMITS["objects"]:
            continue
        if len(Y.objects) + len(Z.objects) > LIMITS["objects"]:
            continue
        if len(X.generators) + len(Y.generators) > LIMITS["generators"]:
            continue
        if len(Y.generators) + len(Z.generators) > LIMITS["generators"]:
            continue
        return random_cospan(rng, X, Y), random_cospan(rng, Y, Z)


def _random_image(rng, gens, src, tgt, tag):
    """Random word ``src -> tgt``, adding a connector generator when needed."""
    letters = []
    loops = [a for a in gens if a.src == a.tgt == src]
    if loops and rng.random() < 0.6:
        a = rng.choice(loops)
        letters.append((a.id, rng.choice((1, -1))))
    if src != tgt:
        conn = [a for a in gens if (a.src, a.tgt) in ((src, tgt), (tgt, src))]
        if conn and rng.random() < 0.7:
            a = rng.choice(conn)
        else:
            a = Generator(f"{tag}c{len(gens)}", src, tgt)
            gens.append(a)
        letters.append((a.id, 1 if a.src == src else -1))
    return letters


def random_pushout_instance(rng: random.Random):
    """``(PY, f, g)`` with ``f: PY -> PM`` and ``g: PY -> PN`` random maps."""
    PY = random_boundary(rng, "y", max_objects=2, max_gens=2, max_rels=1)
    maps = []
    for tag in ("m", "n"):
        objs = [f"{tag}{k}" for k in range(rng.randint(1, 3))]
        gens = [Generator(f"{tag}g{k}", rng.choice(objs), rng.choice(objs)) for k in range(rng.randint(0, 2))]
        om = {y: rng.choice(objs) for y in PY.object_ids}
        raw = {
            b.id: _random_image(rng, gens, om[b.src], om[b.tgt], tag) for b in PY.generators
        }
        T = GroupoidPresentation(tuple(Obj(o) for o in objs), tuple(gens))
        loops = [a for a in gens if a.src == a.tgt]
        if loops and rng.random() < 0.5:
            a = rng.choice(loops)
            T = T.with_relations([Relation(T.word([(a.id, 1)] * 2), Word.empty(a.src))])
        gm = {b: T.word(letters, src=om[PY.gen[b].src]) for b, letters in raw.items()}
        maps.append(PresentationMap(PY, T, om, gm))
    return PY, maps[0], maps[1]
