"""Cospans of presentations and the finite-group TQFT on them.

For a cospan ``X -i-> M <-j- Y`` and a finite group ``G``:

* ``bFG`` counts homs ``h: M -> G`` by their pair of boundary restrictions;
* ``bbFG`` rescales by ``|G|^-(#Ob(M) - #Ob(X))``, which makes the matrix
  independent of how many basepoints ``M`` carries;
* ``FG_matrix`` uses natural-isomorphism classes as bases, taking the column
  restriction to be exactly the class representative and the row restriction
  to be anything isomorphic to it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .group import FiniteGroup
from .homs import (
    DEFAULT_BUDGET,
    ClassTable,
    GroupoidHom,
    compile_word,
    enumerate_hom_values,
    eval_compiled,
    run_reduced,
)
from .presentation import (
    Generator,
    GroupoidPresentation,
    Obj,
    PresentationMap,
    Relation,
    Word,
    add_basepoint,
    compose_maps,
    coproduct,
    coproduct_map,
    map_violations,
    pushout,
    validate,
)


class CospanError(ValueError):
    pass


class InvariantViolation(CospanError):
    pass


class BoundaryMismatch(CospanError):
    pass


@dataclass(frozen=True, eq=False)
class Cospan:
    """A based homotopy cobordism ``X -i-> M <-j- Y``.

    Object maps must be injective with disjoint images, so the basepoint
    counts of the boundaries are read off as object counts.
    """

    X: GroupoidPresentation
    Y: GroupoidPresentation
    M: GroupoidPresentation
    i: PresentationMap
    j: PresentationMap
    label: str = ""

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise InvariantViolation("; ".join(problems))

    def violations(self) -> list[str]:
        out = []
        for name, P in (("X", self.X), ("Y", self.Y), ("M", self.M)):
            out.extend(f"{name}: {v}" for v in validate(P))
        if self.i.source != self.X or self.i.target != self.M:
            out.append("i must map X to M")
        if self.j.source != self.Y or self.j.target != self.M:
            out.append("j must map Y to M")
        out.extend(f"i: {v}" for v in map_violations(self.i))
        out.extend(f"j: {v}" for v in map_violations(self.j))
        iim = [self.i.object_map.get(x) for x in self.X.object_ids]
        jim = [self.j.object_map.get(y) for y in self.Y.object_ids]
        if len(set(iim)) != len(iim):
            out.append("i is not injective on objects")
        if len(set(jim)) != len(jim):
            out.append("j is not injective on objects")
        if set(iim) & set(jim):
            out.append(f"images of i and j share objects {sorted(set(iim) & set(jim))}")
        return out

    @property
    def extra_basepoints(self) -> int:
        return len(self.M.objects) - len(self.X.objects)


@dataclass(eq=False)
class TqftMatrix:
    """Dense exact matrix; rows are indexed by the ``Y`` basis, columns by ``X``."""

    row_basis: list[GroupoidHom]
    col_basis: list[GroupoidHom]
    entries: list[list[Fraction]]
    row_sizes: list[int] | None = None
    col_sizes: list[int] | None = None

    def __post_init__(self):
        if len(self.entries) != len(self.row_basis):
            raise ValueError("row count does not match the row basis")
        if any(len(r) != len(self.col_basis) for r in self.entries):
            raise ValueError("column count does not match the column basis")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_basis), len(self.col_basis)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other):
        if not isinstance(other, TqftMatrix):
            return NotImplemented
        return (
            [h.values for h in self.row_basis] == [h.values for h in other.row_basis]
            and [h.values for h in self.col_basis] == [h.values for h in other.col_basis]
            and self.entries == other.entries
        )

    def __matmul__(self, other: TqftMatrix) -> TqftMatrix:
        """``self ∘ other``: apply ``other`` first."""
        if [h.values for h in self.col_basis] != [h.values for h in other.row_basis]:
            raise ValueError("bases do not match for matrix product")
        n, m = len(self.row_basis), len(other.col_basis)
        out = [[Fraction(0)] * m for _ in range(n)]
        for r in range(n):
            row = out[r]
            for k, a in enumerate(self.entries[r]):
                if a:
                    for c, b in enumerate(other.entries[k]):
                        if b:
                            row[c] += a * b
        return TqftMatrix(self.row_basis, other.col_basis, out, self.row_sizes, other.col_sizes)

    def scaled(self, s: Fraction) -> TqftMatrix:
        return TqftMatrix(
            self.row_basis,
            self.col_basis,
            [[s * v for v in row] for row in self.entries],
            self.row_sizes,
            self.col_sizes,
        )

    def kron(self, other: TqftMatrix) -> list[list[Fraction]]:
        """Kronecker product entries, first factor major."""
        return [
            [a * b for a in ra for b in rb]
            for ra in self.entries
            for rb in other.entries
        ]

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and all(
            self.entries[r][c] == (1 if r == c else 0) for r in range(n) for c in range(m)
        )

    def nonnegative(self) -> bool:
        return all(v >= 0 for row in self.entries for v in row)


# ------------------------------------------------------------------ evaluation


class _Binner:
    """Bins homs of ``M`` by (row, column) of their boundary restrictions."""

    def __init__(self, G, icode, jcode, col_index, row_index):
        self.G, self.icode, self.jcode = G, icode, jcode
        self.col_index, self.row_index = col_index, row_index

    def __call__(self, homs) -> Counter:
        G, icode, jcode = self.G, self.icode, self.jcode
        cols, rows = self.col_index, self.row_index
        counts: Counter = Counter()
        for v in homs:
            c = cols.get(tuple(eval_compiled(G, w, v) for w in icode))
            if c is None:
                continue
            r = rows.get(tuple(eval_compiled(G, w, v) for w in jcode))
            if r is None:
                continue
            counts[r, c] += 1
        return counts


def _merge_counts(parts) -> Counter:
    total: Counter = Counter()
    for p in parts:
        total.update(p)
    return total


def _restriction_code(m: PresentationMap):
    return [compile_word(m.target, w) for w in (m.generator_map[a.id] for a in m.source.generators)]


def _bin(c: Cospan, G, col_index, row_index, budget, parallel) -> Counter:
    binner = _Binner(G, _restriction_code(c.i), _restriction_code(c.j), col_index, row_index)
    return run_reduced(c.M, G, binner, _merge_counts, budget, parallel)


def _dense(counts: Counter, n: int, m: int, scale: Fraction = Fraction(1)) -> list[list[Fraction]]:
    out = [[Fraction(0)] * m for _ in range(n)]
    for (r, c), k in counts.items():
        out[r][c] = scale * k
    return out


def bFG(c: Cospan, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1) -> TqftMatrix:
    """Raw counting matrix: entry (g, f) is the number of homs of ``M``
    restricting to ``f`` along ``i`` and to ``g`` along ``j``."""
    xs = enumerate_hom_values(c.X, G, budget)
    ys = enumerate_hom_values(c.Y, G, budget)
    counts = _bin(c, G, {v: k for k, v in enumerate(xs)}, {v: k for k, v in enumerate(ys)}, budget, parallel)
    return TqftMatrix(
        [GroupoidHom(v, c.Y) for v in ys],
        [GroupoidHom(v, c.X) for v in xs],
        _dense(counts, len(ys), len(xs)),
    )


def normalization(c: Cospan, G: FiniteGroup) -> Fraction:
    return Fraction(1, G.order ** c.extra_basepoints)


def bbFG(c: Cospan, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1) -> TqftMatrix:
    return bFG(c, G, budget, parallel).scaled(normalization(c, G))


def FG_matrix(c: Cospan, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1) -> TqftMatrix:
    X_classes = ClassTable(c.X, G, budget)
    Y_classes = ClassTable(c.Y, G, budget)
    col_index = {v: k for k, v in enumerate(X_classes.reps())}
    counts = _bin(c, G, col_index, Y_classes.index, budget, parallel)
    return TqftMatrix(
        [cl.rep for cl in Y_classes.classes],
        [cl.rep for cl in X_classes.classes],
        _dense(counts, len(Y_classes), len(X_classes), normalization(c, G)),
        [cl.size for cl in Y_classes.classes],
        [cl.size for cl in X_classes.classes],
    )


def object_space(PX: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET):
    """Natural-isomorphism classes spanning ``F_G(X)`` and their number."""
    classes = ClassTable(PX, G, budget).classes
    return classes, len(classes)


# ---------------------------------------------------------------- constructions


def compose(c1: Cospan, c2: Cospan) -> Cospan:
    """Glue ``c1: X -> Y`` and ``c2: Y -> Z`` along ``Y`` (``c1`` first)."""
    if c1.Y != c2.X:
        raise BoundaryMismatch(
            f"outgoing boundary of {c1.label or 'first cospan'!r} differs from "
            f"incoming boundary of {c2.label or 'second cospan'!r}"
        )
    P, pM, pN = pushout(c1.Y, c1.j, c2.i)
    i = compose_maps(pM, c1.i)
    j = compose_maps(pN, c2.j)
    shared = set(i.object_map.values()) & set(j.object_map.values())
    if shared:
        raise InvariantViolation(f"gluing merged incoming and outgoing boundary objects {sorted(shared)}")
    label = f"({c1.label});({c2.label})" if c1.label or c2.label else ""
    return Cospan(c1.X, c2.Y, P, i, j, label)


def compose_all(cospans: Sequence[Cospan]) -> Cospan:
    it = iter(cospans)
    out = next(it)
    for c in it:
        out = compose(out, c)
    return out


def cylinder(PX: GroupoidPresentation, twist: PresentationMap | None = None, label: str = "") -> Cospan:
    """``X × I`` with the bottom inclusion precomposed by ``twist: X -> X``.

    Objects ``x@0``, ``x@1``; generators ``a@0`` on the bottom level and one
    rung ``tau[x]: x@0 -> x@1`` per object; relations of ``X`` on the bottom.
    The top inclusion sends ``a: s -> t`` to ``tau[t] · a@0 · tau[s]^-1``.
    """
    lo = {x: f"{x}@0" for x in PX.object_ids}
    hi = {x: f"{x}@1" for x in PX.object_ids}
    lg = {a.id: f"{a.id}@0" for a in PX.generators}
    rung = {x: f"tau[{x}]" for x in PX.object_ids}

    def lower(w: Word) -> Word:
        return Word(tuple((lg[g], s) for g, s in w.letters), lo[w.src], lo[w.tgt])

    objects = tuple(Obj(lo[o.id], o.label) for o in PX.objects) + tuple(
        Obj(hi[o.id], o.label) for o in PX.objects
    )
    gens = tuple(Generator(lg[a.id], lo[a.src], lo[a.tgt], a.label) for a in PX.generators) + tuple(
        Generator(rung[x], lo[x], hi[x]) for x in PX.object_ids
    )
    rels = tuple(Relation(lower(r.lhs), lower(r.rhs)) for r in PX.relations)
    M = GroupoidPresentation(objects, gens, rels)

    i = PresentationMap(PX, M, lo, {a.id: M.letter(lg[a.id]) for a in PX.generators})
    if twist is not None:
        i = compose_maps(i, twist)
    j = PresentationMap(
        PX,
        M,
        hi,
        {
            a.id: M.word([(rung[a.src], -1), (lg[a.id], 1), (rung[a.tgt], 1)])
            for a in PX.generators
        },
    )
    return Cospan(PX, PX, M, i, j, label)


def identity_cospan(PX: GroupoidPresentation) -> Cospan:
    return cylinder(PX, label="id")


def tensor(c1: Cospan, c2: Cospan) -> Cospan:
    X, _, _ = coproduct(c1.X, c2.X)
    Y, _, _ = coproduct(c1.Y, c2.Y)
    M, _, _ = coproduct(c1.M, c2.M)
    label = f"({c1.label})x({c2.label})" if c1.label or c2.label else ""
    return Cospan(X, Y, M, coproduct_map(c1.i, c2.i, X, M), coproduct_map(c1.j, c2.j, Y, M), label)


def empty_cospan() -> Cospan:
    return identity_cospan(GroupoidPresentation())


def with_basepoint(c: Cospan, at: str, label: str = "") -> Cospan:
    """Same cospan with one extra object (and free connecting generator) in ``M``."""
    M2, _ = add_basepoint(c.M, at, label)
    i = PresentationMap(c.X, M2, c.i.object_map, c.i.generator_map)
    j = PresentationMap(c.Y, M2, c.j.object_map, c.j.generator_map)
    return Cospan(c.X, c.Y, M2, i, j, c.label)
