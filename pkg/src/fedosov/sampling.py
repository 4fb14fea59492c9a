"""Seeded pseudo-random polynomials and elements for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .element import WeylFormElement
from .poly import RationalPoly


def _exponents(rng, nvars, degree):
    e = [0] * nvars
    for _ in range(degree):
        e[rng.randrange(nvars)] += 1
    return tuple(e)


def random_coeff(rng):
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def random_poly(rng, nvars, max_degree=3, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_exponents(rng, nvars, rng.randint(0, max_degree))] = random_coeff(rng)
    return RationalPoly(terms, nvars)


def random_homogeneous_poly(rng, nvars, degree, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_exponents(rng, nvars, degree)] = random_coeff(rng)
    return RationalPoly(terms, nvars)


def random_element(rng, nvars, validity=8, coeff_degree=3, max_terms=5, max_form=None, forms=True):
    """Random element with every term of W-degree at most ``validity``."""
    max_form = nvars if max_form is None else max_form
    subsets = [()]
    if forms:
        subsets = [c for q in range(max_form + 1) for c in combinations(range(1, nvars + 1), q)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.randint(0, validity)
        m = rng.randint(0, w // 2)
        mu = _exponents(rng, nvars, w - 2 * m)
        nu = rng.choice(subsets)
        terms[(m, mu, nu)] = random_poly(rng, nvars, coeff_degree, 2)
    return WeylFormElement(terms, nvars, validity)


def rng_for(seed):
    return random.Random(seed)
