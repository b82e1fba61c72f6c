"""Finite groups given by index-based Cayley tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

DEFAULT_MAX_ORDER = 720


class NotAGroup(ValueError):
    """Raised when a Cayley table fails one of the group axioms."""


class GroupTooLarge(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the elements ``0 .. order-1``.

    ``mul[a][b]`` is the product ``a*b``.  Words are evaluated right to left,
    so the element assigned to the letter applied first sits rightmost.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    name: str = ""
    _classes: list = field(default=None, init=False, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul and self.identity == other.identity

    def __hash__(self):
        return hash((self.order, self.mul))

    @property
    def elements(self) -> range:
        return range(self.order)

    def product(self, *xs: int) -> int:
        r = self.identity
        for x in xs:
            r = self.mul[r][x]
        return r

    def conj(self, g: int, x: int) -> int:
        """Return ``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in self.elements for b in range(a))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        if self._classes is None:
            object.__setattr__(self, "_classes", conjugacy_classes(self))
        return self._classes

    def class_index(self) -> list[int]:
        """Element index -> position of its class in ``conjugacy_classes()``."""
        idx = [0] * self.order
        for k, cls in enumerate(self.conjugacy_classes()):
            for x in cls:
                idx[x] = k
        return idx

    def are_conjugate(self, x: int, y: int) -> bool:
        idx = self.class_index()
        return idx[x] == idx[y]

    def to_table(self) -> list[list[int]]:
        return [list(row) for row in self.mul]


def _check_order(n: int, max_order: int) -> None:
    if n > max_order:
        raise GroupTooLarge(f"group order {n} exceeds guard {max_order}")


def from_cayley_table(
    table: Sequence[Sequence[int]],
    identity: int | None = None,
    name: str = "",
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Validate a Cayley table and build the group.

    Associativity is checked on every triple, which is cubic in the order;
    the order guard keeps this bounded.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    _check_order(n, max_order)
    mul = tuple(tuple(int(v) for v in row) for row in table)
    for a, row in enumerate(mul):
        if len(row) != n:
            raise NotAGroup(f"row {a} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise NotAGroup(f"entry {v} in row {a} out of range")

    if identity is None:
        candidates = [e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))]
        if not candidates:
            raise NotAGroup("no identity element")
        identity = candidates[0]
    else:
        bad = next((x for x in range(n) if not mul[identity][x] == x == mul[x][identity]), None)
        if bad is not None:
            raise NotAGroup(f"element {identity} is not an identity (fails at {bad})")

    inv = []
    for x in range(n):
        ys = [y for y in range(n) if mul[x][y] == identity]
        if not ys or mul[ys[0]][x] != identity:
            raise NotAGroup(f"element {x} has no inverse")
        inv.append(ys[0])

    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise NotAGroup(f"associativity fails on ({a}, {b}, {c})")

    return FiniteGroup(order=n, mul=mul, inv=tuple(inv), identity=identity, name=name)


def _trusted(table: list[list[int]], identity: int, name: str) -> FiniteGroup:
    # constructors with known-good tables skip the cubic associativity check
    n = len(table)
    mul = tuple(tuple(row) for row in table)
    inv = [0] * n
    for x in range(n):
        for y in range(n):
            if mul[x][y] == identity:
                inv[x] = y
                break
    return FiniteGroup(order=n, mul=mul, inv=tuple(inv), identity=identity, name=name)


def make_cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    _check_order(n, max_order)
    return _trusted([[(i + j) % n for j in range(n)] for i in range(n)], 0, f"Z{n}")


def make_symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """S_n with elements in lexicographic order of one-line notation.

    Element 0 is the identity permutation.  Products compose as functions:
    ``(a*b)(k) = a(b(k))``.
    """
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    _check_order(len(perms), max_order)
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(a[b[k]] for k in range(n))] for b in perms] for a in perms]
    return _trusted(table, 0, f"S{n}")


def make_dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of order 2n; element ``s*n + k`` is ``r^k`` (s=0) or ``r^k t`` (s=1)."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    _check_order(2 * n, max_order)

    def mult(a, b):
        sa, ka = divmod(a, n)
        sb, kb = divmod(b, n)
        # r^ka t^sa r^kb t^sb = r^(ka + (-1)^sa kb) t^(sa+sb)
        k = (ka + (kb if sa == 0 else -kb)) % n
        return ((sa + sb) % 2) * n + k

    table = [[mult(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return _trusted(table, 0, f"D{n}")


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Partition of the elements into conjugacy classes, ordered by minimal member."""
    seen = [False] * G.order
    classes = []
    for x in G.elements:
        if seen[x]:
            continue
        cls = sorted({G.conj(g, x) for g in G.elements})
        for y in cls:
            seen[y] = True
        classes.append(tuple(cls))
    return classes
