"""Shared helpers for the test suite."""

from coxconj import coxmat
from coxconj.coxmat import CoxeterSystem


def path_system(labels):
    """Path diagram with the given consecutive edge labels."""
    n = len(labels) + 1
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i, lab in enumerate(labels):
        m[i][i + 1] = m[i + 1][i] = lab
    return CoxeterSystem(m)


def affine_system(family, l):
    """Untwisted affine Coxeter system in the Kac numbering."""
    ref, _special = coxmat._affine_reference(family, l)
    return CoxeterSystem(ref)


def random_word(rng, rank, length):
    return tuple(rng.randrange(rank) for _ in range(length))
