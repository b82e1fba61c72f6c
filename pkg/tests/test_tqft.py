import random
from fractions import Fraction

import pytest

from homcob.builders import circle, circle_cap, disjoint_circles, figure_eight, pair_of_pants, torsion
from homcob.presentation import GroupoidPresentation, PresentationMap
from homcob.randomized import random_composable_pair
from homcob.tqft import (
    BoundaryMismatch,
    Cospan,
    FG_matrix,
    InvariantViolation,
    bbFG,
    bFG,
    compose,
    empty_cospan,
    identity_cospan,
    normalization,
    object_space,
    tensor,
    with_basepoint,
)


def test_raw_identity_cylinder_circle_z2(Z2):
    m = bFG(identity_cospan(circle()), Z2)
    assert m.entries == [[2, 0], [0, 2]]
    assert normalization(identity_cospan(circle()), Z2) == Fraction(1, 2)
    assert bbFG(identity_cospan(circle()), Z2).is_identity()


def test_normalized_is_raw_times_prefactor(S3):
    c = pair_of_pants()
    assert c.extra_basepoints == 1
    assert bbFG(c, S3) == bFG(c, S3).scaled(Fraction(1, 6))


@pytest.mark.parametrize("seed", range(6))
def test_bbFG_composition_is_product(seed, Z2):
    c1, c2 = random_composable_pair(random.Random(seed))
    assert bbFG(compose(c1, c2), Z2) == bbFG(c2, Z2) @ bbFG(c1, Z2)


@pytest.mark.parametrize("P", [circle(), disjoint_circles(2), figure_eight(), torsion(2), GroupoidPresentation()])
def test_identity_cylinder_is_identity(P, S3):
    assert FG_matrix(identity_cospan(P), S3).is_identity()


def test_composition_with_identity(S3):
    c = pair_of_pants()
    ref = FG_matrix(c, S3)
    assert FG_matrix(compose(c, identity_cospan(c.Y)), S3) == ref
    assert FG_matrix(compose(identity_cospan(c.X), c), S3) == ref


def test_cylinder_composed_with_itself_has_same_hom_count(S3):
    from homcob.homs import count_homs

    c = identity_cospan(circle())
    assert count_homs(compose(c, c).M, S3) == count_homs(c.M, S3) * S3.order


def test_tensor_is_kronecker(Z2):
    c1, c2 = pair_of_pants(), identity_cospan(circle())
    t = FG_matrix(tensor(c1, c2), Z2)
    assert t.entries == FG_matrix(c1, Z2).kron(FG_matrix(c2, Z2))


def test_entries_are_nonnegative_with_bounded_denominators(S3):
    for c in (pair_of_pants(), circle_cap(), identity_cospan(figure_eight())):
        m = FG_matrix(c, S3)
        assert m.nonnegative()
        bound = S3.order ** len(c.M.objects)
        assert all(bound % v.denominator == 0 for row in m.entries for v in row)


def test_empty_cospan(S3):
    m = FG_matrix(empty_cospan(), S3)
    assert m.shape == (1, 1) and m.is_identity()


def test_object_space_dimensions(S3, Z2):
    assert object_space(circle(), S3)[1] == 3
    assert object_space(disjoint_circles(2), S3)[1] == 9
    assert object_space(GroupoidPresentation(), S3)[1] == 1
    assert object_space(figure_eight(), Z2)[1] == 4


def test_cap_sends_only_trivial_class(S3):
    m = FG_matrix(circle_cap(), S3)
    assert m.shape == (1, 3)
    assert m.entries == [[1, 0, 0]]


def test_basepoint_scaling(S3):
    c = pair_of_pants()
    c2 = with_basepoint(c, "r")
    assert bFG(c2, S3) == bFG(c, S3).scaled(Fraction(6))
    assert bbFG(c2, S3) == bbFG(c, S3)
    assert FG_matrix(c2, S3) == FG_matrix(c, S3)


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        compose(pair_of_pants(), identity_cospan(figure_eight()))


def test_invariant_violation_on_shared_images():
    C = circle()
    M = circle()
    i = PresentationMap(C, M, {"*": "*"}, {"x": M.letter("x")})
    with pytest.raises(InvariantViolation):
        Cospan(C, C, M, i, i)


def test_matmul_checks_bases(S3):
    a = FG_matrix(pair_of_pants(), S3)
    with pytest.raises(ValueError):
        a @ a
