"""Normal form, dbar, bidegree, and residue signatures."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rescalc import (
    Current,
    DimensionMismatch,
    ElementaryTerm,
    Factor,
    Kind,
    PolyCoeff,
    antiholomorphic_degrees,
    bidegree,
    bidegree_part,
    dbar,
    normalize,
    parse_current,
    residue_signature,
    smooth_mul,
    support_codim_lower_bound,
    unit,
    zero,
)
from conftest import random_current


def term(n, coeff, factors):
    return ElementaryTerm(coeff, tuple(factors))


class TestNormalize:
    def test_cancellation(self):
        a = parse_current("res[1/z]", 1)
        assert (a - a).is_zero

    def test_conjugate_kills_residue(self):
        # zbar * dbar[1/z] = 0
        t = term(
            1,
            PolyCoeff.term(1, beta=(1,)),
            [Factor.res(1)],
        )
        assert normalize([t]).is_zero

    def test_dzbar_kills_residue(self):
        t = term(1, PolyCoeff.term(1, dzb=(1,)), [Factor.res(1)])
        assert normalize([t]).is_zero

    def test_like_terms_merge(self):
        t1 = term(1, PolyCoeff.scalar(1, 2), [Factor.pv(1)])
        t2 = term(1, PolyCoeff.scalar(1, 3), [Factor.pv(1)])
        out = normalize([t1, t2])
        assert len(out.terms) == 1
        assert out.terms[0].coeff.pieces[0].coef == Fraction(5)
        assert out == parse_current("5*pv[1/z]", 1)

    def test_holomorphic_power_contracts_into_pv(self):
        # z * [1/z^2] = [1/z];  z^3 * [1/z^2] = z
        t = term(1, PolyCoeff.term(1, alpha=(1,)), [Factor.pv(2)])
        assert normalize([t]) == parse_current("pv[1/z]", 1)
        t = term(1, PolyCoeff.term(1, alpha=(3,)), [Factor.pv(2)])
        assert normalize([t]) == parse_current("z", 1)

    def test_holomorphic_power_contracts_into_residue(self):
        t = term(1, PolyCoeff.term(1, alpha=(1,)), [Factor.res(2)])
        assert normalize([t]) == parse_current("res[1/z]", 1)
        t = term(1, PolyCoeff.term(1, alpha=(2,)), [Factor.res(2)])
        assert normalize([t]).is_zero

    def test_dimension_mismatch(self):
        t1 = term(1, PolyCoeff.scalar(1, 1), [Factor.pv(1)])
        t2 = term(2, PolyCoeff.scalar(2, 1), [Factor.pv(1), Factor.none()])
        with pytest.raises(DimensionMismatch):
            normalize([t1, t2])

    def test_idempotent_randomized(self):
        rng = random.Random(7)
        for _ in range(200):
            T = random_current(rng, rng.randint(1, 4))
            assert normalize(T.terms, n=T.n) == T


class TestResidueSignature:
    def test_mixed_term(self):
        T = parse_current("pv[1/w]*res[1/z]", 2)
        assert residue_signature(T.terms[0]) == frozenset({1})

    def test_no_residues(self):
        T = parse_current("3*pv[1/z^3]", 2)
        assert residue_signature(T.terms[0]) == frozenset()

    def test_two_residues(self):
        T = parse_current("res[1/z]*res[1/w^2]", 2)
        assert residue_signature(T.terms[0]) == frozenset({1, 2})

    def test_codim_bound_equals_signature_size(self):
        rng = random.Random(11)
        for _ in range(100):
            T = random_current(rng, rng.randint(1, 4))
            for t in T.terms:
                assert support_codim_lower_bound(t) == len(residue_signature(t))
                for q in antiholomorphic_degrees(Current(T.n, (t,))):
                    assert q >= len(residue_signature(t))


class TestBidegree:
    def test_pure_term(self):
        T = parse_current("res[1/z^2]*res[1/w]", 2)
        assert bidegree(T.terms[0]) == (0, 2)

    def test_part_selects_degree(self):
        T = parse_current("pv[1/w]*res[1/z] + res[1/z^2]*res[1/w]", 2)
        assert bidegree_part(T, 1) == parse_current("pv[1/w]*res[1/z]", 2)
        assert bidegree_part(T, 2) == parse_current("res[1/z^2]*res[1/w]", 2)

    def test_part_of_zero(self):
        assert bidegree_part(zero(2), 1).is_zero

    def test_parts_sum_to_whole(self):
        rng = random.Random(23)
        for _ in range(100):
            T = random_current(rng, rng.randint(1, 4))
            total = zero(T.n)
            for q in range(0, 2 * T.n + 1):
                total = total + bidegree_part(T, q)
            assert total == T

    def test_uniform_part_is_identity(self):
        T = parse_current("res[1/z] + res[1/w]", 2)
        assert bidegree_part(T, 1) == T


class TestDbar:
    def test_pv_to_residue(self):
        assert dbar(parse_current("pv[1/z]", 1)) == parse_current("res[1/z]", 1)

    def test_residue_is_closed(self):
        assert dbar(parse_current("res[1/z]", 1)).is_zero

    def test_coleff_herrera_product_is_closed(self):
        assert dbar(parse_current("res[1/z^2]*res[1/w]", 2)).is_zero

    def test_conjugate_coefficient(self):
        # dbar(zbar) = dzb1
        T = parse_current("conj(z)", 1)
        assert dbar(T) == parse_current("dzb1", 1)

    def test_dbar_squared_randomized(self):
        rng = random.Random(5)
        for _ in range(200):
            T = random_current(rng, rng.randint(1, 4))
            assert dbar(dbar(T)).is_zero


@st.composite
def small_currents(draw):
    n = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10**9))
    return random_current(random.Random(seed), n)


class TestAlgebraProperties:
    @given(small_currents())
    @settings(max_examples=60, deadline=None)
    def test_normalize_idempotent(self, T):
        assert normalize(T.terms, n=T.n) == T

    @given(small_currents())
    @settings(max_examples=60, deadline=None)
    def test_dbar_squared_zero(self, T):
        assert dbar(dbar(T)).is_zero

    @given(small_currents(), st.integers(0, 10**9))
    @settings(max_examples=60, deadline=None)
    def test_smooth_mul_graded_leibniz(self, T, seed):
        rng = random.Random(seed)
        n = T.n
        dz = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
        dzb = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
        xi = PolyCoeff.term(
            n,
            coef=Fraction(rng.randint(1, 3)),
            alpha=tuple(rng.randint(0, 2) for _ in range(n)),
            beta=tuple(rng.randint(0, 2) for _ in range(n)),
            dz=dz,
            dzb=dzb,
        )
        if xi.is_zero:
            return
        deg = len(dz) + len(dzb)
        lhs = dbar(smooth_mul(xi, T))
        rhs = smooth_mul(xi, dbar(T)).scale((-1) ** deg)
        for t in dbar(smooth_mul(xi, unit(n))).terms:
            rhs = rhs + smooth_mul(t.coeff, T)
        assert lhs == rhs

    def test_antiholomorphic_annihilation_on_signature(self):
        rng = random.Random(13)
        checked = 0
        while checked < 100:
            T = random_current(rng, rng.randint(1, 4))
            for t in T.terms:
                sig = residue_signature(t)
                if not sig:
                    continue
                i = sorted(sig)[0]
                single = Current(T.n, (t,))
                conj = PolyCoeff.term(T.n, beta=tuple(
                    1 if j == i - 1 else 0 for j in range(T.n)
                ))
                wedge = PolyCoeff.term(T.n, dzb=(i,))
                assert smooth_mul(conj, single).is_zero
                assert smooth_mul(wedge, single).is_zero
                checked += 1
