"""Acceptance criteria 1-10, one recorded PASS/FAIL line each; all checks exact."""

import hashlib
import random
import time

from homcob.builders import (
    artin_braid_generator,
    circle,
    circle_cap,
    disjoint_circles,
    figure_eight,
    loop_braid_generator,
    pair_of_pants,
    three_strand_tube,
)
from homcob.cli import main
from homcob.group import make_cyclic, make_symmetric
from homcob.homs import count_homs
from homcob.presentation import GroupoidPresentation, pushout
from homcob.randomized import LIMITS, random_composable_pair, random_pushout_instance
from homcob.tqft import FG_matrix, bbFG, bFG, compose, identity_cospan, object_space, tensor, with_basepoint
from homcob.verify import DEFAULT_SEED, agreeing_pairs

from acceptance_log import record
from oracles import pants_entry, tube_entry

Z2, Z3, S3 = make_cyclic(2), make_cyclic(3), make_symmetric(3)


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_pair_of_pants():
    def run():
        A = FG_matrix(pair_of_pants(), S3)
        bad = [
            (r, c)
            for r, g in enumerate(A.row_basis)
            for c, f in enumerate(A.col_basis)
            if A[r, c] != pants_entry(S3, f["x1"], f["x2"], g["y1"])
        ]
        return A, bad

    (A, bad), dt = timed(run)
    ok = not bad and dt < 1.0
    record(1, "pair-of-pants matches brute-force formula, S3", ok, f"{A.shape[0]}x{A.shape[1]}, {len(bad)} mismatches, {dt:.2f}s")
    assert not bad
    assert dt < 1.0


def test_criterion_02_three_strand_tube():
    def run():
        A = FG_matrix(three_strand_tube(), S3)
        bad = [
            (r, c)
            for r, g in enumerate(A.row_basis)
            for c, f in enumerate(A.col_basis)
            if A[r, c] != tube_entry(S3, f["x1"], f["x2"], g["y1"])
        ]
        return A, bad

    (A, bad), dt = timed(run)
    ok = not bad and dt < 1.0
    record(2, "three-strand tube is |G| * [g1 ~ f1 f2], S3", ok, f"{A.shape[0]}x{A.shape[1]}, {len(bad)} mismatches, {dt:.2f}s")
    assert not bad
    assert dt < 1.0


def test_criterion_03_identity_law():
    spaces = {"circle": circle(), "two circles": disjoint_circles(2), "figure-eight": figure_eight()}

    def run():
        return [
            (name, G.name)
            for name, P in spaces.items()
            for G in (Z2, Z3, S3)
            if not FG_matrix(identity_cospan(P), G).is_identity()
        ]

    bad, dt = timed(run)
    ok = not bad and dt < 5.0
    record(3, "identity cylinder gives identity matrix (3 spaces x Z2, Z3, S3)", ok, f"failures {bad}, {dt:.2f}s")
    assert not bad
    assert dt < 5.0


def within_limits(c):
    return all(
        len(P.objects) <= LIMITS["objects"]
        and len(P.generators) <= LIMITS["generators"]
        and len(P.relations) <= LIMITS["relations"]
        for P in (c.X, c.Y, c.M)
    )


def test_criterion_04_functoriality():
    trials = 20

    def run():
        bad, sizes_ok = [], True
        for G in (Z2, S3):
            rng = random.Random(DEFAULT_SEED)
            for t in range(trials):
                c1, c2 = random_composable_pair(rng)
                sizes_ok &= within_limits(c1) and within_limits(c2)
                if FG_matrix(compose(c1, c2), G) != FG_matrix(c2, G) @ FG_matrix(c1, G):
                    bad.append((G.name, t))
        return bad, sizes_ok

    (bad, sizes_ok), dt = timed(run)
    ok = not bad and sizes_ok and dt < 60.0
    record(4, f"functoriality on {trials} random pairs each for Z2, S3", ok, f"failures {bad}, {dt:.2f}s")
    assert sizes_ok
    assert not bad
    assert dt < 60.0


def test_criterion_05_basepoint_invariance():
    cospans = [
        pair_of_pants(),
        three_strand_tube(),
        circle_cap(),
        identity_cospan(circle()),
        artin_braid_generator(2, 1),
        loop_braid_generator(2, 1, "permutation"),
    ]
    bad, checked = [], 0
    for c in cospans:
        raw, norm, fg = bFG(c, S3), bbFG(c, S3), FG_matrix(c, S3)
        for at in c.M.object_ids:
            c2 = with_basepoint(c, at)
            checked += 1
            if bFG(c2, S3) != raw.scaled(S3.order) or bbFG(c2, S3) != norm or FG_matrix(c2, S3) != fg:
                bad.append((c.label, at))
    record(5, "extra basepoint scales bFG by |G|, fixes bbFG and FG, S3", not bad, f"{checked} cases, failures {bad}")
    assert not bad


def test_criterion_06_dimensions():
    dims = (
        object_space(circle(), S3)[1],
        object_space(disjoint_circles(2), S3)[1],
        object_space(GroupoidPresentation(), S3)[1],
        object_space(GroupoidPresentation(), Z2)[1],
    )
    ok = dims == (3, 9, 1, 1)
    record(6, "dimensions: circle 3, two circles 9, empty 1", ok, f"got {dims}")
    assert ok


def test_criterion_07_monoidal():
    pairs = [
        (pair_of_pants(), identity_cospan(circle())),
        (circle_cap(), pair_of_pants()),
        (artin_braid_generator(2, 1), circle_cap()),
        (identity_cospan(disjoint_circles(2)), loop_braid_generator(2, 1)),
    ]
    bad = [
        (a.label, b.label)
        for a, b in pairs
        if FG_matrix(tensor(a, b), Z2).entries != FG_matrix(a, Z2).kron(FG_matrix(b, Z2))
    ]
    record(7, "tensor product gives Kronecker product, Z2", not bad, f"{len(pairs)} pairs, failures {bad}")
    assert not bad


def test_criterion_08_pushouts():
    trials = 50

    def run():
        rng = random.Random(DEFAULT_SEED)
        bad = []
        for t in range(trials):
            PY, f, g = random_pushout_instance(rng)
            P, _, _ = pushout(PY, f, g)
            if count_homs(P, Z2) != agreeing_pairs(f, g, Z2):
                bad.append(t)
        return bad

    bad, dt = timed(run)
    ok = not bad and dt < 30.0
    record(8, f"pushout hom count equals agreeing pairs, {trials} random cases, Z2", ok, f"failures {bad}, {dt:.2f}s")
    assert not bad
    assert dt < 30.0


def test_criterion_09_braid_representation():
    def run():
        s1, s2 = FG_matrix(artin_braid_generator(3, 1), S3), FG_matrix(artin_braid_generator(3, 2), S3)
        t1 = FG_matrix(artin_braid_generator(3, 1, inverse=True), S3)
        t2 = FG_matrix(artin_braid_generator(3, 2, inverse=True), S3)
        a, b = FG_matrix(artin_braid_generator(4, 1), S3), FG_matrix(artin_braid_generator(4, 3), S3)
        return {
            "braid": s1 @ s2 @ s1 == s2 @ s1 @ s2,
            "inverse": all((x @ y).is_identity() and (y @ x).is_identity() for x, y in ((s1, t1), (s2, t2))),
            "far": a @ b == b @ a,
            "nontrivial": not s1.is_identity(),
        }

    res, dt = timed(run)
    ok = all(res.values()) and dt < 60.0
    record(9, "braid relation, inverses (n=3) and far commutation (n=4), S3", ok, f"{res}, {dt:.2f}s")
    assert all(res.values())
    assert dt < 60.0


def test_criterion_10_determinism(tmp_path):
    fixtures = {}
    for name, argv in {
        "pants": ["example", "pair-of-pants"],
        "tube": ["example", "three-strand-tube"],
        "artin": ["example", "artin", "--n", "3", "--i", "2"],
    }.items():
        fixtures[name] = tmp_path / f"{name}.json"
        assert main(argv + ["-o", str(fixtures[name])]) == 0

    digests = {}
    for name, path in fixtures.items():
        for p in (1, 2, 8):
            out = tmp_path / f"{name}-{p}.json"
            assert main(["tqft", str(path), "--group", "S3", "--raw", "--normalized", "--parallel", str(p), "-o", str(out)]) == 0
            digests.setdefault(name, set()).add(hashlib.sha256(out.read_bytes()).hexdigest())
    ok = all(len(d) == 1 for d in digests.values())
    record(10, "tqft output byte-identical for --parallel 1, 2, 8", ok, f"{len(fixtures)} fixtures")
    assert ok
