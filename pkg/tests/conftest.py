import random
from itertools import combinations_with_replacement

import pytest

from ffgeom.fields import make_field
from ffgeom.polynomials import MultivariatePolynomial

PRIME_POWERS_64 = [
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    37, 41, 43, 47, 49, 53, 59, 61, 64,
]


def field_for(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return make_field(p, k)
    raise ValueError(q)


def random_poly(rng, fld, nvars, max_deg, nterms=None):
    """Random nonzero sparse polynomial of total degree <= max_deg."""
    while True:
        terms = {}
        for _ in range(nterms or rng.randint(1, 5)):
            deg = rng.randint(0, max_deg)
            exps = [0] * nvars
            for _ in range(deg):
                exps[rng.randrange(nvars)] += 1
            c = rng.randrange(1, fld.q)
            terms[tuple(exps)] = c
        poly = MultivariatePolynomial(nvars, fld, terms)
        if not poly.is_zero():
            return poly


def random_homogeneous_poly(rng, fld, nvars, deg, nterms=None):
    """Random nonzero homogeneous polynomial of degree exactly deg."""
    monomials = list(combinations_with_replacement(range(nvars), deg))
    while True:
        terms = {}
        for _ in range(nterms or rng.randint(1, 5)):
            combo = rng.choice(monomials)
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            terms[tuple(exps)] = rng.randrange(1, fld.q)
        poly = MultivariatePolynomial(nvars, fld, terms)
        if not poly.is_zero():
            return poly


@pytest.fixture
def rng():
    return random.Random(20240817)
