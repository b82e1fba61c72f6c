"""Finite-group TQFT on cospans of finitely presented groupoids."""

from .group import FiniteGroup, conjugacy_classes, from_cayley_table, make_cyclic, make_dihedral, make_symmetric
from .homs import (
    BudgetExceeded,
    GroupoidHom,
    NatClass,
    enumerate_homs,
    evaluate,
    g_consistency_check,
    is_naturally_isomorphic,
    nat_classes,
    theta_extension,
)
from .presentation import (
    GroupoidPresentation,
    PresentationMap,
    Word,
    add_basepoint,
    apply_map,
    compose_words,
    coproduct,
    invert_word,
    path_components,
    pushout,
    validate,
)
from .tqft import Cospan, TqftMatrix, FG_matrix, bbFG, bFG, compose, identity_cospan, object_space, tensor

__all__ = [name for name in dir() if not name.startswith("_")]
