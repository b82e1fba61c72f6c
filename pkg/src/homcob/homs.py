"""Homomorphisms from a finitely presented groupoid into a finite group.

A hom is an assignment of a group element to every generator such that every
relation evaluates to the same element on both sides.  Objects all go to the
single object of the group, so only generator values are stored.
"""

from __future__ import annotations

import functools
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .group import FiniteGroup
from .presentation import (
    GroupoidPresentation,
    PresentationMap,
    UnknownGenerator,
    Word,
    apply_map,
    path_components,
)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"enumeration exceeded the budget of {budget} candidate assignments")
        self.budget = budget


class MismatchedPresentations(ValueError):
    pass


@dataclass(frozen=True)
class GroupoidHom:
    """Generator values in the presentation's generator order."""

    values: tuple[int, ...]
    presentation: GroupoidPresentation

    def __post_init__(self):
        if len(self.values) != len(self.presentation.generators):
            raise ValueError("one value per generator is required")

    @property
    def assignment(self) -> dict[str, int]:
        return dict(zip(self.presentation.generator_ids, self.values))

    def __getitem__(self, gen_id: str) -> int:
        try:
            return self.values[self.presentation.gen_index[gen_id]]
        except KeyError:
            raise UnknownGenerator(gen_id) from None

    def __hash__(self):
        return hash(self.values)

    def __lt__(self, other):
        return self.values < other.values

    def __eq__(self, other):
        if not isinstance(other, GroupoidHom):
            return NotImplemented
        return self.values == other.values and self.presentation == other.presentation


@dataclass(frozen=True)
class NatClass:
    rep: GroupoidHom
    members: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.members)


def compile_word(P: GroupoidPresentation, w: Word) -> tuple[tuple[int, int], ...]:
    idx = P.gen_index
    try:
        return tuple((idx[g], s) for g, s in w.letters)
    except KeyError as e:
        raise UnknownGenerator(e.args[0]) from None


def eval_compiled(G: FiniteGroup, code, values) -> int:
    mul, inv = G.mul, G.inv
    r = G.identity
    for k, s in code:
        x = values[k]
        r = mul[x if s > 0 else inv[x]][r]
    return r


def evaluate(h: GroupoidHom, w: Word, G: FiniteGroup) -> int:
    """Product over the letters of ``w``, later letters multiplying on the left."""
    return eval_compiled(G, compile_word(h.presentation, w), h.values)


class _Relation:
    __slots__ = ("loop", "vars", "solvable")

    def __init__(self, loop):
        # loop = lhs followed by rhs^-1; the relation holds iff it evaluates to 1
        self.loop = loop
        self.vars = sorted({k for k, _ in loop})
        counts: dict[int, int] = {}
        for k, _ in loop:
            counts[k] = counts.get(k, 0) + 1
        self.solvable = {k for k, c in counts.items() if c == 1}


class Enumerator:
    """Backtracking search over generator values.

    Generators are branched on in presentation order.  After each assignment,
    any relation with exactly one unassigned generator occurring once is
    solved for it, and fully assigned relations are checked.
    """

    def __init__(self, P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET):
        self.P, self.G, self.budget = P, G, budget
        self.n = len(P.generators)
        self.rels = []
        for r in P.relations:
            lhs = compile_word(P, r.lhs)
            rhs = compile_word(P, r.rhs)
            loop = lhs + tuple((k, -s) for k, s in reversed(rhs))
            if loop:
                self.rels.append(_Relation(loop))
        self.candidates = 0

    def _solve(self, rel: _Relation, k: int, vals) -> int:
        mul, inv, e = self.G.mul, self.G.inv, self.G.identity
        before = e  # product of letters traversed before the unknown
        after = e  # product of letters traversed after it
        pos = next(i for i, (j, _) in enumerate(rel.loop) if j == k)
        for j, s in rel.loop[:pos]:
            x = vals[j]
            before = mul[x if s > 0 else inv[x]][before]
        for j, s in rel.loop[pos + 1 :]:
            x = vals[j]
            after = mul[x if s > 0 else inv[x]][after]
        # after * v * before = 1
        v = inv[mul[before][after]]
        return v if rel.loop[pos][1] > 0 else inv[v]

    def _propagate(self, vals: list, pending: list) -> list | None:
        G = self.G
        changed = True
        while changed:
            changed = False
            still = []
            for rel in pending:
                free = [k for k in rel.vars if vals[k] is None]
                if not free:
                    if eval_compiled(G, rel.loop, vals) != G.identity:
                        return None
                elif len(free) == 1 and free[0] in rel.solvable:
                    vals[free[0]] = self._solve(rel, free[0], vals)
                    changed = True
                    if eval_compiled(G, rel.loop, vals) != G.identity:
                        return None
                else:
                    still.append(rel)
            pending = still
        return pending

    def _count(self):
        self.candidates += 1
        if self.candidates > self.budget:
            raise BudgetExceeded(self.budget)

    def _search(self, vals: list, pending: list) -> Iterator[tuple[int, ...]]:
        pending = self._propagate(vals, pending)
        if pending is None:
            return
        try:
            k = vals.index(None)
        except ValueError:
            yield tuple(vals)
            return
        for x in self.G.elements:
            self._count()
            child = list(vals)
            child[k] = x
            yield from self._search(child, pending)

    def root(self) -> tuple[list, list] | None:
        vals = [None] * self.n
        pending = self._propagate(vals, list(self.rels))
        if pending is None:
            return None
        return vals, pending

    def branches(self) -> list[tuple[list, list]]:
        """Split the search at the first branching generator."""
        start = self.root()
        if start is None:
            return []
        vals, pending = start
        if None not in vals:
            return [(vals, pending)]
        k = vals.index(None)
        out = []
        for x in self.G.elements:
            child = list(vals)
            child[k] = x
            out.append((child, pending))
        return out

    def iter_branch(self, vals, pending, counted: bool) -> Iterator[tuple[int, ...]]:
        if counted:
            self._count()
        yield from self._search(list(vals), pending)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        start = self.root()
        if start is None:
            return iter(())
        return self._search(*start)


def _branch_job(args):
    P, G, budget, vals, pending_idx, counted, reducer = args
    en = Enumerator(P, G, budget)
    pending = [en.rels[i] for i in pending_idx]
    acc = reducer(en.iter_branch(vals, pending, counted))
    return acc, en.candidates


def run_reduced(
    P: GroupoidPresentation,
    G: FiniteGroup,
    reducer: Callable[[Iterator[tuple[int, ...]]], object],
    merge: Callable[[list], object],
    budget: int = DEFAULT_BUDGET,
    parallel: int = 1,
):
    """Feed every hom (as a value tuple) through ``reducer``.

    With ``parallel > 1`` the search is split on the first branching
    generator, each branch is reduced in a worker process, and the partial
    results are passed in branch order to ``merge``.  ``reducer`` must be
    picklable when running in parallel.
    """
    en = Enumerator(P, G, budget)
    if parallel <= 1:
        return merge([reducer(iter(en))])
    branches = en.branches()
    counted = not (len(branches) == 1 and None not in branches[0][0])
    index = {id(r): i for i, r in enumerate(en.rels)}
    jobs = [
        (P, G, budget, vals, [index[id(r)] for r in pending], counted, reducer)
        for vals, pending in branches
    ]
    with ProcessPoolExecutor(max_workers=parallel) as ex:
        results = list(ex.map(_branch_job, jobs))
    if sum(c for _, c in results) > budget:
        raise BudgetExceeded(budget)
    return merge([acc for acc, _ in results])


def _collect(it):
    return list(it)


def _concat_sorted(parts):
    return sorted(itertools.chain.from_iterable(parts))


def enumerate_hom_values(
    P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1
) -> list[tuple[int, ...]]:
    return run_reduced(P, G, _collect, _concat_sorted, budget, parallel)


def enumerate_homs(
    P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1
) -> list[GroupoidHom]:
    """All homs ``P -> G`` in lexicographic order of generator values."""
    return [GroupoidHom(v, P) for v in enumerate_hom_values(P, G, budget, parallel)]


def count_homs(P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in Enumerator(P, G, budget))


def is_hom(P: GroupoidPresentation, G: FiniteGroup, values: Sequence[int]) -> bool:
    return all(
        eval_compiled(G, compile_word(P, r.lhs), values) == eval_compiled(G, compile_word(P, r.rhs), values)
        for r in P.relations
    )


# ---------------------------------------------------------------- natural isos


def gauge(P: GroupoidPresentation, G: FiniteGroup, values, eta: dict[str, int]) -> tuple[int, ...]:
    """Apply a natural transformation: ``a ↦ eta[t(a)] · f(a) · eta[s(a)]^-1``."""
    mul, inv = G.mul, G.inv
    return tuple(
        mul[mul[eta[a.tgt]][x]][inv[eta[a.src]]] for a, x in zip(P.generators, values)
    )


def _check_same(f: GroupoidHom, g: GroupoidHom):
    if f.presentation != g.presentation:
        raise MismatchedPresentations("homs live on different presentations")


def is_naturally_isomorphic(
    f: GroupoidHom, g: GroupoidHom, G: FiniteGroup
) -> dict[str, int] | None:
    """A witness ``eta`` with ``g = eta · f``, or ``None``.

    For each path component, ``eta`` at the root is tried over all of ``G``
    and propagated along a spanning forest; the remaining generators are
    then checked.
    """
    _check_same(f, g)
    P = f.presentation
    mul, inv = G.mul, G.inv
    fv, gv = f.values, g.values
    adj: dict[str, list[tuple[int, str, str]]] = {x: [] for x in P.object_ids}
    for k, a in enumerate(P.generators):
        adj[a.src].append((k, a.src, a.tgt))
        adj[a.tgt].append((k, a.src, a.tgt))

    eta: dict[str, int] = {}
    for comp in path_components(P):
        root = comp[0]
        found = None
        for x in [G.identity] + [y for y in G.elements if y != G.identity]:
            local = {root: x}
            order = [root]
            for o in order:
                for k, s, t in adj[o]:
                    if s == o and t not in local:
                        # g(a) = eta_t f(a) eta_s^-1  =>  eta_t = g(a) eta_s f(a)^-1
                        local[t] = mul[mul[gv[k]][local[s]]][inv[fv[k]]]
                        order.append(t)
                    elif t == o and s not in local:
                        # eta_s = g(a)^-1 eta_t f(a)
                        local[s] = mul[mul[inv[gv[k]]][local[t]]][fv[k]]
                        order.append(s)
            ok = all(
                mul[mul[local[P.generators[k].tgt]][fv[k]]][inv[local[P.generators[k].src]]] == gv[k]
                for o in comp
                for k, s, _ in adj[o]
                if s == o
            )
            if ok:
                found = local
                break
        if found is None:
            return None
        eta.update(found)
    return eta


def natural_iso_brute(f: GroupoidHom, g: GroupoidHom, G: FiniteGroup) -> dict[str, int] | None:
    """Exhaustive search over all ``G^objects``; a test oracle."""
    _check_same(f, g)
    P = f.presentation
    for combo in itertools.product(G.elements, repeat=len(P.objects)):
        eta = dict(zip(P.object_ids, combo))
        if gauge(P, G, f.values, eta) == g.values:
            return eta
    return None


@functools.lru_cache(maxsize=None)
def _generating_set(G: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    span = {G.identity}
    for x in G.elements:
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        span = set(span)
        while frontier:
            y = frontier.pop()
            for s in gens:
                z = G.mul[s][y]
                if z not in span:
                    span.add(z)
                    frontier.append(z)
    return tuple(gens)


def gauge_orbit(P: GroupoidPresentation, G: FiniteGroup, values) -> set[tuple[int, ...]]:
    """Orbit of a hom under natural transformations, found by breadth-first search."""
    e = G.identity
    active = [o for o in P.object_ids if any(o in (a.src, a.tgt) for a in P.generators)]
    moves = []
    for o in active:
        for s in _generating_set(G):
            eta = {x: e for x in P.object_ids}
            eta[o] = s
            moves.append(eta)
    orbit = {tuple(values)}
    frontier = [tuple(values)]
    while frontier:
        v = frontier.pop()
        for eta in moves:
            w = gauge(P, G, v, eta)
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


class ClassTable:
    """Natural-isomorphism classes of ``P -> G`` with a lookup from every hom."""

    def __init__(self, P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1):
        self.P, self.G = P, G
        self.homs = enumerate_hom_values(P, G, budget, parallel)
        self.index: dict[tuple[int, ...], int] = {}
        self.classes: list[NatClass] = []
        for v in self.homs:  # lexicographic order, so the first unseen hom is its class minimum
            if v in self.index:
                continue
            orbit = sorted(gauge_orbit(P, G, v))
            k = len(self.classes)
            for w in orbit:
                self.index[w] = k
            self.classes.append(NatClass(GroupoidHom(v, P), tuple(orbit)))

    def __len__(self):
        return len(self.classes)

    def reps(self) -> list[tuple[int, ...]]:
        return [c.rep.values for c in self.classes]


def nat_classes(
    P: GroupoidPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET, parallel: int = 1
) -> list[NatClass]:
    return ClassTable(P, G, budget, parallel).classes


def theta_extension(
    f: GroupoidHom, extended: GroupoidPresentation, gamma: str, x: int
) -> GroupoidHom:
    """Extend ``f`` to a presentation with one extra free generator ``gamma``."""
    if gamma not in extended.gen_index:
        raise UnknownGenerator(gamma)
    old = f.assignment
    values = []
    for a in extended.generators:
        if a.id == gamma:
            values.append(x)
        elif a.id in old:
            values.append(old[a.id])
        else:
            raise UnknownGenerator(a.id)
    return GroupoidHom(tuple(values), extended)


def restrict(h: GroupoidHom, P: GroupoidPresentation) -> GroupoidHom:
    """Restriction to a sub-presentation sharing generator ids."""
    return GroupoidHom(tuple(h[a.id] for a in P.generators), P)


@dataclass(frozen=True)
class Counterexample:
    hom: GroupoidHom
    relation: int
    lhs: int
    rhs: int


def g_consistency_check(
    m: PresentationMap, G: FiniteGroup, budget: int = DEFAULT_BUDGET
) -> Counterexample | None:
    """Check that every hom of the target pulls back to a hom of the source.

    This is a necessary condition for ``m`` to be a well defined groupoid map.
    """
    if not m.source.relations:
        return None
    T = m.target
    imgs = [
        (compile_word(T, apply_map(m, r.lhs)), compile_word(T, apply_map(m, r.rhs)))
        for r in m.source.relations
    ]
    for v in Enumerator(T, G, budget):
        for k, (l, r) in enumerate(imgs):
            a, b = eval_compiled(G, l, v), eval_compiled(G, r, v)
            if a != b:
                return Counterexample(GroupoidHom(v, T), k, a, b)
    return None
