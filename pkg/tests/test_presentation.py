import random

import pytest
from hypothesis import given, settings, strategies as st

from homcob.builders import artin_automorphism, bouquet, circle, disjoint_circles, points
from homcob.presentation import (
    EndpointMismatch,
    Generator,
    GroupoidPresentation,
    Obj,
    PresentationMap,
    Relation,
    SourceMismatch,
    UnknownGenerator,
    UnknownObject,
    Word,
    add_basepoint,
    apply_map,
    compose_maps,
    compose_words,
    coproduct,
    identity_map,
    invert_word,
    path_components,
    pushout,
    validate,
)
from homcob.randomized import random_pushout_instance

# two objects p, q; loops a at p, c at q; b: p -> q
PQ = GroupoidPresentation(
    (Obj("p"), Obj("q")),
    (Generator("a", "p", "p"), Generator("b", "p", "q"), Generator("c", "q", "q")),
)


def random_word(rng, P, start, length):
    letters = []
    at = start
    for _ in range(length):
        options = [(a.id, 1, a.tgt) for a in P.generators if a.src == at]
        options += [(a.id, -1, a.src) for a in P.generators if a.tgt == at]
        if not options:
            break
        g, s, at = rng.choice(options)
        letters.append((g, s))
    return P.word(letters, src=start)


def test_validate_empty_is_ok():
    assert validate(GroupoidPresentation()) == []


def test_validate_undeclared_source():
    P = GroupoidPresentation((Obj("p"),), (Generator("a", "z", "p"),))
    assert any("undeclared source" in v for v in validate(P))


def test_validate_relation_endpoints():
    bad = PQ.with_relations([Relation(PQ.letter("a"), PQ.letter("c"))])
    assert any("different endpoints" in v for v in validate(bad))


def test_validate_duplicate_ids_and_broken_chain():
    P = GroupoidPresentation((Obj("p"), Obj("p")))
    assert "duplicate object ids" in validate(P)
    broken = PQ.with_relations([Relation(Word((("b", 1), ("a", 1)), "p", "p"), Word.empty("p"))])
    assert any("breaks" in v for v in validate(broken))


def test_compose_with_empty_word():
    w = PQ.word([("a", 1), ("b", 1)])
    assert compose_words(Word.empty("p"), w) == w
    assert compose_words(w, Word.empty("q")) == w


def test_compose_with_inverse_reduces_to_empty():
    w = PQ.word([("a", 1), ("b", 1), ("c", -1)])
    assert compose_words(w, invert_word(w)) == Word.empty("p")
    assert compose_words(invert_word(w), w) == Word.empty("q")


def test_compose_simple_and_mismatch():
    a, b = PQ.letter("a"), PQ.letter("b")
    assert compose_words(a, b).letters == (("a", 1), ("b", 1))
    with pytest.raises(EndpointMismatch):
        compose_words(b, a)


def test_invert_word():
    assert invert_word(Word.empty("p")) == Word.empty("p")
    assert invert_word(PQ.letter("a")).letters == (("a", -1),)
    w = PQ.word([("a", 1), ("b", 1)])
    assert invert_word(w).letters == (("b", -1), ("a", -1))
    assert (invert_word(w).src, invert_word(w).tgt) == ("q", "p")


def test_product_notation_reads_right_to_left():
    F = bouquet(2)
    w = F.product("x1 x2 x1^-1")
    assert w.letters == (("x1", -1), ("x2", 1), ("x1", 1))


def test_apply_identity_map():
    w = PQ.word([("a", 1), ("b", 1), ("c", -1)])
    assert apply_map(identity_map(PQ), w) == w


def test_apply_map_to_empty_image():
    C = circle()
    m = PresentationMap(C, C, {"*": "*"}, {"x": Word.empty("*")})
    assert apply_map(m, C.letter("x")) == Word.empty("*")


def test_apply_artin_map():
    sigma = artin_automorphism(2, 1)
    assert len(apply_map(sigma, sigma.source.letter("x1"))) == 3


def test_apply_map_unknown_generator():
    C = circle()
    m = PresentationMap(C, C, {"*": "*"}, {})
    with pytest.raises(UnknownGenerator):
        apply_map(m, C.letter("x"))


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_compose_words_associative(seed):
    rng = random.Random(seed)
    u = random_word(rng, PQ, "p", rng.randint(0, 5))
    v = random_word(rng, PQ, u.tgt, rng.randint(0, 5))
    w = random_word(rng, PQ, v.tgt, rng.randint(0, 5))
    assert compose_words(compose_words(u, v), w) == compose_words(u, compose_words(v, w))
    assert invert_word(invert_word(u)) == u


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_apply_map_distributes(seed):
    rng = random.Random(seed)
    F = bouquet(3)
    m = artin_automorphism(3, rng.choice((1, 2)), rng.random() < 0.5)
    u = random_word(rng, F, "*", rng.randint(0, 6))
    v = random_word(rng, F, "*", rng.randint(0, 6))
    assert apply_map(m, compose_words(u, v)) == compose_words(apply_map(m, u), apply_map(m, v))
    assert apply_map(m, invert_word(u)) == invert_word(apply_map(m, u))


def test_compose_maps_matches_sequential_application():
    s1, s2 = artin_automorphism(3, 1), artin_automorphism(3, 2)
    both = compose_maps(s2, s1)
    w = s1.source.product("x1 x2 x3")
    assert apply_map(both, w) == apply_map(s2, apply_map(s1, w))


def test_coproduct_with_empty():
    P, inj1, inj2 = coproduct(GroupoidPresentation(), PQ)
    assert len(P.objects) == 2 and len(P.generators) == 3
    assert validate(P) == []


def test_coproduct_of_two_circles():
    P, inj1, inj2 = coproduct(circle(), circle())
    assert len(P.objects) == 2 and len(P.generators) == 2
    assert inj1.on_object("*") != inj2.on_object("*")
    assert len(path_components(P)) == 2


def test_pushout_over_empty_apex_is_coproduct():
    E = GroupoidPresentation()
    f = PresentationMap(E, PQ, {}, {})
    g = PresentationMap(E, circle(), {}, {})
    P, _, _ = pushout(E, f, g)
    C, _, _ = coproduct(PQ, circle())
    assert P == C


def test_pushout_of_identities():
    P, pM, pN = pushout(PQ, identity_map(PQ), identity_map(PQ))
    assert len(P.objects) == 2
    assert len(P.generators) == 6
    assert len(P.relations) == 3
    assert validate(P) == []


def test_pushout_source_mismatch():
    with pytest.raises(SourceMismatch):
        pushout(circle(), identity_map(PQ), identity_map(PQ))


def brute_classes(pairs, items):
    """Equivalence closure by repeated merging until stable."""
    label = {x: x for x in items}
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            la, lb = label[a], label[b]
            if la != lb:
                lo = min(la, lb)
                for x in items:
                    if label[x] in (la, lb):
                        label[x] = lo
                changed = True
    return len(set(label.values()))


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_pushout_object_count_matches_closure_oracle(seed):
    rng = random.Random(seed)
    PY, f, g = random_pushout_instance(rng)
    P, pM, pN = pushout(PY, f, g)
    items = [("M", x) for x in f.target.object_ids] + [("N", x) for x in g.target.object_ids]
    pairs = [(("M", f.object_map[y]), ("N", g.object_map[y])) for y in PY.object_ids]
    assert len(P.objects) == brute_classes(pairs, items)
    assert validate(P) == []
    # pM ∘ f and pN ∘ g agree on objects
    for y in PY.object_ids:
        assert pM.on_object(f.on_object(y)) == pN.on_object(g.on_object(y))


def test_pushout_representative_is_minimal_id():
    Y = points(1)
    M = GroupoidPresentation((Obj("b"), Obj("a")))
    N = GroupoidPresentation((Obj("z"),))
    P, pM, pN = pushout(Y, PresentationMap(Y, M, {"p1": "b"}, {}), PresentationMap(Y, N, {"p1": "z"}, {}))
    assert set(P.object_ids) == {"L.a", "L.b"}
    assert pN.on_object("z") == "L.b"


def test_add_basepoint():
    C = circle()
    P, gamma = add_basepoint(C, "*", "new")
    assert len(P.objects) == 2
    assert P.generator_ids == ("x", gamma)
    assert P.gen[gamma].src == "*"
    with pytest.raises(UnknownObject):
        add_basepoint(C, "nope")
    P2, gamma2 = add_basepoint(P, "*")
    assert gamma2 != gamma and len(P2.objects) == 3


def test_path_components():
    assert len(path_components(points(3))) == 3
    assert path_components(PQ) == [("p", "q")]
    A, B = disjoint_circles(2), PQ
    P, _, _ = coproduct(A, B)
    assert len(path_components(P)) == len(path_components(A)) + len(path_components(B))
