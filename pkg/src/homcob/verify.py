"""Invariant suites run by ``homcob verify``.

Each suite returns a JSON-ready report with one entry per check and, for
failures, the counterexample.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from . import builders
from .group import FiniteGroup
from .homs import compile_word, count_homs, eval_compiled, is_hom
from .io import matrix_to_json
from .presentation import GroupoidPresentation, PresentationMap, pushout
from .randomized import random_composable_pair, random_pushout_instance
from .tqft import FG_matrix, bbFG, bFG, compose, identity_cospan, tensor, with_basepoint

DEFAULT_SEED = 20240501


def _check(name: str, passed: bool, **evidence) -> dict:
    out = {"name": name, "passed": bool(passed)}
    if evidence:
        out["evidence"] = evidence
    return out


def brute_hom_values(P: GroupoidPresentation, G: FiniteGroup) -> list[tuple[int, ...]]:
    """All homs by trying every assignment; the oracle for the backtracking search."""
    return [
        v for v in itertools.product(G.elements, repeat=len(P.generators)) if is_hom(P, G, v)
    ]


def _restrictions(m: PresentationMap, G: FiniteGroup, homs) -> Counter:
    code = [compile_word(m.target, m.generator_map[a.id]) for a in m.source.generators]
    return Counter(tuple(eval_compiled(G, w, v) for w in code) for v in homs)


def agreeing_pairs(f: PresentationMap, g: PresentationMap, G: FiniteGroup) -> int:
    """#{(h1, h2)} of homs of the two targets that agree on the apex, by brute force."""
    left = _restrictions(f, G, brute_hom_values(f.target, G))
    right = _restrictions(g, G, brute_hom_values(g.target, G))
    return sum(n * right[r] for r, n in left.items())


# ------------------------------------------------------------------ suites


def suite_group_axioms(G: FiniteGroup, rng: random.Random, **_) -> list[dict]:
    els = list(G.elements)
    if G.order <= 64:
        triples = itertools.product(els, repeat=3)
    else:
        triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(20000))
    m = G.mul
    bad = next(((a, b, c) for a, b, c in triples if m[m[a][b]][c] != m[a][m[b][c]]), None)
    checks = [_check("associativity", bad is None, counterexample=bad)]
    e = G.identity
    checks.append(_check("identity", all(m[e][x] == x == m[x][e] for x in els)))
    checks.append(_check("inverses", all(m[G.inv[x]][x] == e == m[x][G.inv[x]] for x in els)))
    checks.append(_check("inverse involution", all(G.inv[G.inv[x]] == x for x in els)))
    classes = G.conjugacy_classes()
    cover = sorted(x for c in classes for x in c) == els
    closed = all({G.conj(g, x) for x in c for g in els} == set(c) for c in classes)
    checks.append(_check("conjugacy partition", cover and closed, sizes=[len(c) for c in classes]))
    return checks


def suite_pushout_oracle(G: FiniteGroup, rng: random.Random, trials: int = 50, **_) -> list[dict]:
    checks = []
    for t in range(trials):
        PY, f, g = random_pushout_instance(rng)
        P, pM, pN = pushout(PY, f, g)
        got = count_homs(P, G)
        want = agreeing_pairs(f, g, G)
        merges = len(f.target.objects) + len(g.target.objects) - len(P.objects)
        # independent equivalence closure on the object sets
        classes = [{("M", x)} for x in f.target.object_ids] + [{("N", x)} for x in g.target.object_ids]
        for y in PY.object_ids:
            a, b = ("M", f.object_map[y]), ("N", g.object_map[y])
            ca = next(c for c in classes if a in c)
            cb = next(c for c in classes if b in c)
            if ca is not cb:
                classes.remove(cb)
                ca |= cb
        checks.append(
            _check(
                f"pushout #{t}",
                got == want and len(P.objects) == len(classes),
                homs=got,
                agreeing_pairs=want,
                objects=len(P.objects),
                merges=merges,
            )
        )
    return checks


def _builder_cospans():
    return [
        builders.pair_of_pants(),
        builders.three_strand_tube(),
        identity_cospan(builders.circle()),
        builders.artin_braid_generator(2, 1),
    ]


def suite_basepoint_invariance(G: FiniteGroup, rng: random.Random, **_) -> list[dict]:
    checks = []
    for c in _builder_cospans():
        raw, norm, fg = bFG(c, G), bbFG(c, G), FG_matrix(c, G)
        for at in c.M.object_ids:
            c2 = with_basepoint(c, at)
            raw2 = bFG(c2, G)
            factor_ok = all(
                b == G.order * a for ra, rb in zip(raw.entries, raw2.entries) for a, b in zip(ra, rb)
            )
            checks.append(
                _check(
                    f"{c.label} + basepoint at {at}",
                    factor_ok and bbFG(c2, G) == norm and FG_matrix(c2, G) == fg,
                    factor=G.order,
                    bFG_total_before=str(sum(sum(r) for r in raw.entries)),
                    bFG_total_after=str(sum(sum(r) for r in raw2.entries)),
                )
            )
    return checks


def suite_functoriality(G: FiniteGroup, rng: random.Random, trials: int = 20, **_) -> list[dict]:
    checks = []
    for t in range(trials):
        c1, c2 = random_composable_pair(rng)
        lhs = FG_matrix(compose(c1, c2), G)
        rhs = FG_matrix(c2, G) @ FG_matrix(c1, G)
        ev = {} if lhs == rhs else {"composite": matrix_to_json(lhs), "product": matrix_to_json(rhs)}
        checks.append(_check(f"random pair #{t}", lhs == rhs, **ev))
    return checks


def suite_identity(G: FiniteGroup, rng: random.Random, **_) -> list[dict]:
    checks = []
    for name in ("circle", "two-circles", "figure-eight", "empty"):
        A = FG_matrix(identity_cospan(builders.SPACES[name]()), G)
        checks.append(_check(f"identity on {name}", A.is_identity(), dimension=A.shape[0]))
    return checks


def _kron_check(c1, c2, G) -> dict:
    A, B = FG_matrix(c1, G), FG_matrix(c2, G)
    T = FG_matrix(tensor(c1, c2), G)
    rows_ok = [h.values for h in T.row_basis] == [
        a.values + b.values for a in A.row_basis for b in B.row_basis
    ]
    cols_ok = [h.values for h in T.col_basis] == [
        a.values + b.values for a in A.col_basis for b in B.col_basis
    ]
    return _check(
        f"{c1.label} x {c2.label}",
        rows_ok and cols_ok and T.entries == A.kron(B),
        shape=list(T.shape),
    )


def suite_tensor(G: FiniteGroup, rng: random.Random, **_) -> list[dict]:
    circ = identity_cospan(builders.circle())
    pants = builders.pair_of_pants()
    cap = builders.circle_cap()
    return [_kron_check(a, b, G) for a, b in ((circ, pants), (pants, circ), (cap, pants), (circ, circ))]


def suite_braid_relations(G: FiniteGroup, rng: random.Random, **_) -> list[dict]:
    def s(n, i, inv=False):
        return FG_matrix(builders.artin_braid_generator(n, i, inv), G)

    checks = []
    for i in (1,):
        a, ai = s(2, i), s(2, i, True)
        checks.append(_check("n=2 sigma1 sigma1^-1 = I", (a @ ai).is_identity() and (ai @ a).is_identity()))
    s1, s2 = s(3, 1), s(3, 2)
    checks.append(_check("n=3 braid relation", s1 @ s2 @ s1 == s2 @ s1 @ s2, dimension=s1.shape[0]))
    checks.append(_check("n=3 sigma2 sigma2^-1 = I", (s2 @ s(3, 2, True)).is_identity()))
    t1, t3 = s(4, 1), s(4, 3)
    checks.append(_check("n=4 far commutation", t1 @ t3 == t3 @ t1, dimension=t1.shape[0]))
    return checks


SUITES = {
    "group-axioms": suite_group_axioms,
    "pushout-oracle": suite_pushout_oracle,
    "basepoint-invariance": suite_basepoint_invariance,
    "functoriality": suite_functoriality,
    "identity": suite_identity,
    "tensor": suite_tensor,
    "braid-relations": suite_braid_relations,
}


def run_suite(name: str, G: FiniteGroup, seed: int = DEFAULT_SEED) -> dict:
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    checks = suite(G, random.Random(seed))
    return {
        "suite": name,
        "group": G.name or f"order {G.order}",
        "seed": seed,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
