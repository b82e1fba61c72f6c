"""Concrete cospans: worked examples and braid / loop-braid generators.

Braid-type generators are cylinders ``F_n × I`` whose bottom inclusion is
twisted by a free-group automorphism, so composing them realises the
action of the braid group on the free group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .presentation import (
    Generator,
    GroupoidPresentation,
    Obj,
    PresentationMap,
    Relation,
    Word,
)
from .tqft import Cospan, cylinder, identity_cospan


class IndexOutOfRange(ValueError):
    pass


# ------------------------------------------------------------------ spaces


def bouquet(n: int, obj: str = "*", prefix: str = "x") -> GroupoidPresentation:
    """One object with ``n`` free loops ``x1 .. xn``."""
    return GroupoidPresentation(
        (Obj(obj),), tuple(Generator(f"{prefix}{k}", obj, obj) for k in range(1, n + 1))
    )


def circle() -> GroupoidPresentation:
    return GroupoidPresentation((Obj("*", "circle"),), (Generator("x", "*", "*"),))


def figure_eight() -> GroupoidPresentation:
    return bouquet(2)


def disjoint_circles(k: int = 2) -> GroupoidPresentation:
    return GroupoidPresentation(
        tuple(Obj(f"p{n}") for n in range(1, k + 1)),
        tuple(Generator(f"x{n}", f"p{n}", f"p{n}") for n in range(1, k + 1)),
    )


def points(k: int) -> GroupoidPresentation:
    return GroupoidPresentation(tuple(Obj(f"p{n}") for n in range(1, k + 1)))


def torsion(order: int) -> GroupoidPresentation:
    """``<a | a^order = 1>`` on one object."""
    P = GroupoidPresentation((Obj("*"),), (Generator("a", "*", "*"),))
    return P.with_relations([Relation(P.word([("a", 1)] * order), Word.empty("*"))])


SPACES: dict[str, Callable[[], GroupoidPresentation]] = {
    "empty": GroupoidPresentation,
    "point": lambda: points(1),
    "circle": circle,
    "two-circles": disjoint_circles,
    "figure-eight": figure_eight,
    "torsion2": lambda: torsion(2),
}


# ---------------------------------------------------------- automorphisms


def free_endomorphism(P: GroupoidPresentation, images: dict[str, str]) -> PresentationMap:
    """Map of a one-object presentation to itself given by product strings.

    Generators missing from ``images`` are fixed.
    """
    (o,) = P.object_ids
    gm = {a.id: P.product(images[a.id], src=o) if a.id in images else P.letter(a.id) for a in P.generators}
    return PresentationMap(P, P, {o: o}, gm)


def _check_index(n: int, i: int):
    if not 1 <= i < n:
        raise IndexOutOfRange(f"generator index {i} needs 1 <= i < {n}")


def artin_automorphism(n: int, i: int, inverse: bool = False) -> PresentationMap:
    """``σ_i: x_i ↦ x_i x_{i+1} x_i^-1, x_{i+1} ↦ x_i``, or its inverse."""
    _check_index(n, i)
    a, b = f"x{i}", f"x{i + 1}"
    if inverse:
        images = {a: b, b: f"{b}^-1 {a} {b}"}
    else:
        images = {a: f"{a} {b} {a}^-1", b: a}
    return free_endomorphism(bouquet(n), images)


def loop_braid_automorphism(n: int, i: int, kind: str = "band", inverse: bool = False) -> PresentationMap:
    """Band ``σ_i: x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}^-1 x_i x_{i+1}``;
    permutation ``ρ_i`` swaps ``x_i`` and ``x_{i+1}``."""
    _check_index(n, i)
    a, b = f"x{i}", f"x{i + 1}"
    if kind == "permutation":
        images = {a: b, b: a}
    elif kind == "band":
        images = {a: f"{a} {b} {a}^-1", b: a} if inverse else {a: b, b: f"{b}^-1 {a} {b}"}
    else:
        raise ValueError(f"unknown loop braid generator kind {kind!r}")
    return free_endomorphism(bouquet(n), images)


def automorphism_cospan(phi: PresentationMap, label: str = "") -> Cospan:
    return cylinder(phi.source, twist=phi, label=label)


def artin_braid_generator(n: int, i: int, inverse: bool = False) -> Cospan:
    label = f"sigma{i}{'^-1' if inverse else ''}[n={n}]"
    return automorphism_cospan(artin_automorphism(n, i, inverse), label)


def loop_braid_generator(n: int, i: int, kind: str = "band", inverse: bool = False) -> Cospan:
    name = "rho" if kind == "permutation" else "sigma"
    label = f"loop-{name}{i}{'^-1' if inverse and kind == 'band' else ''}[n={n}]"
    return automorphism_cospan(loop_braid_automorphism(n, i, kind, inverse), label)


# ------------------------------------------------------------ worked examples


def pair_of_pants() -> Cospan:
    """Two circles merging into one.

    ``M`` is free on ``a: p->p``, ``b: q->q``, ``c: r->p``, ``d: p->q``; the
    outgoing circle is sent to ``c^-1 d^-1 b d a c``.
    """
    X = GroupoidPresentation(
        (Obj("p"), Obj("q")), (Generator("x1", "p", "p"), Generator("x2", "q", "q"))
    )
    Y = GroupoidPresentation((Obj("r"),), (Generator("y1", "r", "r"),))
    M = GroupoidPresentation(
        (Obj("p"), Obj("q"), Obj("r")),
        (
            Generator("a", "p", "p"),
            Generator("b", "q", "q"),
            Generator("c", "r", "p"),
            Generator("d", "p", "q"),
        ),
    )
    i = PresentationMap(X, M, {"p": "p", "q": "q"}, {"x1": M.letter("a"), "x2": M.letter("b")})
    j = PresentationMap(Y, M, {"r": "r"}, {"y1": M.product("c^-1 d^-1 b d a c")})
    return Cospan(X, Y, M, i, j, "pair-of-pants")


def three_strand_tube() -> Cospan:
    """Two strands fusing inside a tube, with a spectator strand.

    ``X`` is a twice punctured disk (loops ``x1, x2`` at ``x``) plus two
    contractible pieces ``u, v``; ``Y`` is a circle (``y1`` at ``y``) plus a
    contractible piece ``w``.  In ``M``, ``g1: x->u`` and ``g3: x->y`` join
    the non-trivial component and ``g2: v->w`` spans the contractible one.
    """
    X = GroupoidPresentation(
        (Obj("x"), Obj("u"), Obj("v")), (Generator("x1", "x", "x"), Generator("x2", "x", "x"))
    )
    Y = GroupoidPresentation((Obj("y"), Obj("w")), (Generator("y1", "y", "y"),))
    M = GroupoidPresentation(
        (Obj("x"), Obj("u"), Obj("v"), Obj("y"), Obj("w")),
        (
            Generator("x1", "x", "x"),
            Generator("x2", "x", "x"),
            Generator("g1", "x", "u"),
            Generator("g2", "v", "w"),
            Generator("g3", "x", "y"),
        ),
    )
    i = PresentationMap(
        X, M, {"x": "x", "u": "u", "v": "v"}, {"x1": M.letter("x1"), "x2": M.letter("x2")}
    )
    j = PresentationMap(Y, M, {"y": "y", "w": "w"}, {"y1": M.product("g3 x2 x1 g3^-1")})
    return Cospan(X, Y, M, i, j, "three-strand-tube")


def circle_cap() -> Cospan:
    """A disk read as a cospan from the circle to the empty space."""
    X = circle()
    M = GroupoidPresentation((Obj("*"),), (Generator("x", "*", "*"),))
    M = M.with_relations([Relation(M.letter("x"), Word.empty("*"))])
    i = PresentationMap(X, M, {"*": "*"}, {"x": M.letter("x")})
    Y = GroupoidPresentation()
    return Cospan(X, Y, M, i, PresentationMap(Y, M, {}, {}), "cap")


# ---------------------------------------------------------------- registry


@dataclass
class ExampleSpec:
    name: str
    params: dict = field(default_factory=dict)
    cospan: Cospan | None = None


def _identity(space: str = "circle", **_):
    return identity_cospan(SPACES[space]())


EXAMPLES: dict[str, Callable[..., Cospan]] = {
    "pair-of-pants": lambda **_: pair_of_pants(),
    "three-strand-tube": lambda **_: three_strand_tube(),
    "cap": lambda **_: circle_cap(),
    "identity": _identity,
    "artin": lambda n=2, i=1, inverse=False, **_: artin_braid_generator(n, i, inverse),
    "loop-braid": lambda n=2, i=1, kind="band", inverse=False, **_: loop_braid_generator(n, i, kind, inverse),
}


def build_example(name: str, **params) -> ExampleSpec:
    try:
        builder = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return ExampleSpec(name, params, builder(**params))
