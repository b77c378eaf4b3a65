"""Shared random generators for the randomized suites.

Everything is driven by an explicit ``random.Random`` so that each suite
is reproducible; the acceptance tests pin their seeds.
"""

import random
from fractions import Fraction

import pytest

from rescalc import (
    Current,
    ElementaryTerm,
    Factor,
    Kind,
    Monomial,
    MonomialIdeal,
    PolyCoeff,
    normalize,
    zero,
)


def random_current(
    rng: random.Random,
    n: int,
    max_terms: int = 3,
    max_exp: int = 4,
    forms: bool = True,
) -> Current:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        factors = []
        for _i in range(n):
            kind = rng.choice([Kind.NONE, Kind.NONE, Kind.PV, Kind.RES])
            if kind == Kind.NONE:
                factors.append(Factor.none())
            else:
                factors.append(Factor(kind, rng.randint(1, max_exp)))
        alpha = tuple(rng.randint(0, 2) for _ in range(n))
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        if forms:
            dz = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
            dzb = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, 1))))
        else:
            dz = dzb = ()
        coeff = PolyCoeff.term(
            n,
            coef=Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            alpha=alpha,
            beta=beta,
            dz=dz,
            dzb=dzb,
        )
        if not coeff.is_zero:
            terms.append(ElementaryTerm(coeff, tuple(factors)))
    if not terms:
        return zero(n)
    return normalize(terms, n=n)


def random_monomial(rng: random.Random, n: int, max_exp: int = 3) -> Monomial:
    exps = [rng.randint(0, max_exp - 1) for _ in range(n)]
    if not any(exps):
        exps[rng.randrange(n)] = rng.randint(1, max_exp)
    return Monomial.make(exps)


def random_ideal(
    rng: random.Random, n: int, max_gens: int = 6, max_exp: int = 4
) -> MonomialIdeal:
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        g = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(g):
            gens.append(g)
    if not gens:
        gens.append(tuple(1 if i == 0 else 0 for i in range(n)))
    return MonomialIdeal.from_gens(n, gens)


def random_ci_tuple(rng: random.Random, n: int, max_exp: int = 3):
    """A tuple of monomials with pairwise disjoint supports (always a
    complete intersection)."""
    vars_ = list(range(1, n + 1))
    rng.shuffle(vars_)
    nu = rng.randint(1, n)
    cut = sorted(rng.sample(range(1, n), nu - 1)) if nu > 1 else []
    blocks = []
    prev = 0
    for c in cut + [len(vars_)]:
        block = vars_[prev:c]
        prev = c
        if block:
            blocks.append(block)
    blocks = blocks[:nu]
    out = []
    for block in blocks:
        used = rng.sample(block, rng.randint(1, len(block)))
        exps = [0] * n
        for i in used:
            exps[i - 1] = rng.randint(1, max_exp)
        out.append(Monomial.make(tuple(exps)))
    return tuple(out)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
