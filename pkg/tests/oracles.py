"""Independent brute-force references used by the test suite."""

from fractions import Fraction


def conj_related(G, x, y):
    """x ~ y by scanning every conjugator."""
    return any(G.mul[G.mul[k][x]][G.inv[k]] == y for k in G.elements)


def pants_entry(G, f1, f2, g1):
    """#{d : d^-1 f2 d f1 ~ g1}."""
    m, inv = G.mul, G.inv
    return sum(1 for d in G.elements if conj_related(G, m[m[m[inv[d]][f2]][d]][f1], g1))


def tube_entry(G, f1, f2, g1):
    return G.order if conj_related(G, G.mul[f1][f2], g1) else 0


def pair_orbit_count(G):
    """Burnside count of pairs up to simultaneous conjugation, centralisers by brute force."""
    total = 0
    for k in G.elements:
        fixed = sum(1 for x in G.elements if G.mul[k][x] == G.mul[x][k])
        total += fixed * fixed
    return Fraction(total, G.order)


def is_permutation_matrix(entries):
    n = len(entries)
    return (
        all(sorted(row) == [0] * (n - 1) + [1] for row in entries)
        and all(sorted(col) == [0] * (n - 1) + [1] for col in zip(*entries))
    )
