"""Monomial multiplication, [1/g] and dbar[1/g] products, iterated products."""

import itertools
import random

import pytest

from rescalc import (
    Monomial,
    coleff_herrera,
    dbar,
    is_monomial_complete_intersection,
    mul_monomial,
    parse_current,
    pv_mul,
    res_mul,
    residue_pv_product,
    residue_signature,
    unit,
    zero,
)
from conftest import random_ci_tuple, random_current, random_monomial


def var(n, i, e=1):
    return Monomial.var(n, i, e)


class TestMulMonomial:
    def test_pv_shift(self):
        assert mul_monomial(var(1, 1), parse_current("pv[1/z^2]", 1)) == parse_current(
            "pv[1/z]", 1
        )

    def test_kills_own_residue(self):
        assert mul_monomial(var(1, 1), parse_current("res[1/z]", 1)).is_zero

    def test_residue_shift_two_ways(self):
        # z * dbar[1/z^2] via the product rule: dbar(z * [1/z^2]) = dbar[1/z]
        direct = mul_monomial(var(1, 1), parse_current("res[1/z^2]", 1))
        via_leibniz = dbar(mul_monomial(var(1, 1), parse_current("pv[1/z^2]", 1)))
        assert direct == via_leibniz == parse_current("res[1/z]", 1)


class TestPvMul:
    @pytest.mark.parametrize("a,b", list(itertools.product(range(1, 5), repeat=2)))
    def test_pv_times_pv(self, a, b):
        lhs = pv_mul(var(1, 1, a), parse_current(f"pv[1/z^{b}]", 1))
        assert lhs == parse_current(f"pv[1/z^{a + b}]", 1)

    @pytest.mark.parametrize("a,b", list(itertools.product(range(1, 5), repeat=2)))
    def test_pv_times_residue_dies(self, a, b):
        assert pv_mul(var(1, 1, a), parse_current(f"res[1/z^{b}]", 1)).is_zero

    def test_disjoint_variables(self):
        out = pv_mul(var(2, 2), parse_current("res[1/z]", 2))
        assert out == parse_current("pv[1/w]*res[1/z]", 2)

    def test_rejects_constant_denominator(self):
        with pytest.raises(ValueError):
            pv_mul(Monomial.make((0,)), unit(1))


class TestResMul:
    @pytest.mark.parametrize("a,b", list(itertools.product(range(1, 5), repeat=2)))
    def test_residue_of_pv(self, a, b):
        lhs = res_mul(var(1, 1, a), parse_current(f"pv[1/z^{b}]", 1))
        assert lhs == parse_current(f"res[1/z^{a + b}]", 1)

    def test_on_unit(self):
        assert res_mul(var(1, 1), unit(1)) == parse_current("res[1/z]", 1)

    def test_two_variable_denominator_expands(self):
        out = res_mul(Monomial.make((1, 1)), unit(2))
        # dbar of the double principal value, computed independently
        assert out == dbar(pv_mul(Monomial.make((1, 1)), unit(2)))
        sigs = sorted(sorted(residue_signature(t)) for t in out.terms)
        assert sigs == [[1], [2]]

    def test_support_meets_denominator(self):
        rng = random.Random(41)
        for _ in range(100):
            n = rng.randint(1, 3)
            T = random_current(rng, n)
            g = random_monomial(rng, n)
            out = res_mul(g, T)
            for t in out.terms:
                assert residue_signature(t) & set(g.support())


class TestLeibnizRules:
    def test_both_identities_randomized(self):
        rng = random.Random(43)
        for _ in range(200):
            n = rng.randint(1, 3)
            T = random_current(rng, n, max_exp=3)
            g = random_monomial(rng, n)
            assert dbar(pv_mul(g, T)) == res_mul(g, T) + pv_mul(g, dbar(T))
            assert dbar(res_mul(g, T)) == res_mul(g, dbar(T)).scale(-1)


class TestIteratedProducts:
    def test_two_residues(self):
        out = residue_pv_product([var(2, 1, 2), var(2, 2)], q=2)
        assert out == parse_current("res[1/z^2]*res[1/w]", 2)

    def test_mixed(self):
        out = residue_pv_product([var(2, 1), var(2, 2)], q=1)
        assert out == parse_current("res[1/z]*pv[1/w]", 2)

    def test_no_residues(self):
        out = residue_pv_product([var(1, 1)], q=0)
        assert out == parse_current("pv[1/z]", 1)

    def test_q_out_of_range(self):
        with pytest.raises(ValueError):
            residue_pv_product([var(1, 1)], q=2)

    def test_coleff_herrera_basic(self):
        assert coleff_herrera([var(2, 1, 2), var(2, 2)]) == parse_current(
            "res[1/z^2]*res[1/w]", 2
        )

    def test_coleff_herrera_anticommutes(self):
        a = coleff_herrera([var(2, 1), var(2, 2)])
        b = coleff_herrera([var(2, 2), var(2, 1)])
        assert a == b.scale(-1)

    def test_empty_product_is_one(self):
        assert coleff_herrera([], n=2) == unit(2)

    def test_permutation_sign_on_disjoint_tuples(self):
        rng = random.Random(47)
        for _ in range(30):
            n = rng.randint(2, 4)
            fs = list(random_ci_tuple(rng, n))
            if len(fs) < 2:
                continue
            base = coleff_herrera(fs, n)
            k = rng.randrange(len(fs) - 1)
            swapped = fs[:k] + [fs[k + 1], fs[k]] + fs[k + 2 :]
            assert coleff_herrera(swapped, n) == base.scale(-1)


class TestCompleteIntersections:
    def test_pure_powers(self):
        assert is_monomial_complete_intersection([var(2, 1, 2), var(2, 2)])

    def test_shared_variable_fails(self):
        z, zw = Monomial.make((1, 0)), Monomial.make((1, 1))
        assert not is_monomial_complete_intersection([z, zw])

    def test_single_mixed_monomial(self):
        assert is_monomial_complete_intersection([Monomial.make((1, 1))])

    def test_empty_tuple(self):
        assert is_monomial_complete_intersection([], n=3)

    def test_first_entry_kills_product(self):
        rng = random.Random(53)
        for _ in range(100):
            n = rng.randint(1, 4)
            fs = random_ci_tuple(rng, n)
            q = rng.randint(1, len(fs))
            T = residue_pv_product(fs, q, n=n)
            assert mul_monomial(fs[0], T).is_zero

    def test_last_pv_entry_cancels(self):
        rng = random.Random(59)
        done = 0
        while done < 100:
            n = rng.randint(2, 4)
            fs = random_ci_tuple(rng, n)
            if len(fs) < 2:
                continue
            q = rng.randint(1, len(fs) - 1)
            T = residue_pv_product(fs, q, n=n)
            dropped = residue_pv_product(fs[:-1], q, n=n)
            assert mul_monomial(fs[-1], T) == dropped
            done += 1
