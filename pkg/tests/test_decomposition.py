"""Annihilators, prime components, and the verified decomposition."""

import random
from fractions import Fraction

import pytest

from rescalc import (
    CellSet,
    Current,
    CurrentVector,
    DualityMismatch,
    Monomial,
    MonomialIdeal,
    MonomialModule,
    MonomialPrime,
    PolyCoeff,
    annihilator,
    bidegree_part,
    coleff_herrera,
    decompose,
    duality_check,
    kills,
    leading_annihilator_check,
    parse_current,
    parse_ideal,
    prime_component,
    residue_signature,
    restrict,
    sep_check,
    zero,
)
from conftest import random_ci_tuple, random_current


def vec(src, n):
    return CurrentVector.of(parse_current(src, n))


def poly(n, *monos):
    out = PolyCoeff.zero(n)
    for coef, alpha in monos:
        out = out + PolyCoeff.term(n, coef=coef, alpha=alpha)
    return out


class TestKills:
    def test_variable_kills_its_residue(self):
        T = vec("pv[1/w]*res[1/z]", 2)
        assert kills([poly(2, (1, (1, 0)))], T)

    def test_difference_does_not(self):
        T = vec("pv[1/w]*res[1/z]", 2)
        phi = poly(2, (1, (0, 1)), (-1, (1, 0)))  # w - z
        assert not kills([phi], T)

    def test_unit_never_kills(self):
        T = vec("res[1/z]", 1)
        assert not kills([poly(1, (1, (0,)))], T)

    def test_linearity(self):
        rng = random.Random(83)
        for _ in range(50):
            n = rng.randint(1, 3)
            T = CurrentVector.of(random_current(rng, n))
            M = annihilator(T, trials=20)
            gens = M.components[0].gens
            if len(gens) < 2:
                continue
            a = poly(n, (Fraction(2, 3), gens[0]))
            b = poly(n, (-3, gens[1]))
            assert kills([a], T) and kills([b], T)
            assert kills([a + b], T)
            m = tuple(rng.randint(0, 2) for _ in range(n))
            assert kills([poly(n, (1, tuple(x + y for x, y in zip(gens[0], m))))], T)


class TestAnnihilator:
    def test_worked_component_values(self):
        assert annihilator(vec("pv[1/w]*res[1/z]", 2)) == MonomialModule.from_ideal(
            parse_ideal("z", 2)
        )
        assert annihilator(vec("res[1/z^2]*res[1/w]", 2)) == MonomialModule.from_ideal(
            parse_ideal("z^2, w", 2)
        )

    @pytest.mark.parametrize("a", [1, 2, 3, 4])
    def test_single_residue_power(self, a):
        assert annihilator(vec(f"res[1/z^{a}]", 1)) == MonomialModule.from_ideal(
            parse_ideal(f"z^{a}", 1)
        )

    def test_pv_only_has_zero_annihilator(self):
        M = annihilator(vec("pv[1/z]", 1))
        assert M.components[0].is_zero

    def test_zero_vector_gives_full_module(self):
        M = annihilator(CurrentVector.of(zero(2), zero(2)))
        assert M.is_full

    def test_every_generator_kills(self):
        rng = random.Random(89)
        for _ in range(50):
            n = rng.randint(1, 3)
            T = CurrentVector.of(random_current(rng, n), random_current(rng, n))
            M = annihilator(T, trials=50)
            for k, comp in enumerate(M.components):
                for g in comp.gens:
                    phi = [PolyCoeff.zero(n)] * T.rank
                    phi[k] = poly(n, (1, g))
                    assert kills(phi, T)

    def test_primary_when_signature_constant(self):
        # every term of antiholomorphic degree |S| with signature exactly S
        rng = random.Random(97)
        done = 0
        while done < 60:
            n = rng.randint(1, 3)
            T0 = random_current(rng, n, forms=False)
            terms = [
                t
                for t in T0.terms
                if residue_signature(t)
                and not any(any(p.beta) for p in t.coeff.pieces)
            ]
            if not terms:
                continue
            S = residue_signature(terms[0])
            kept = [t for t in terms if residue_signature(t) == S]
            T = CurrentVector.of(Current(n, tuple(kept)))
            M = annihilator(T, trials=30)
            assert M.components[0].is_primary() == MonomialPrime.of(S)
            done += 1


class TestPrimeComponent:
    def setup_method(self):
        self.R = vec("pv[1/w]*res[1/z] + res[1/z^2]*res[1/w]", 2)
        self.p = MonomialPrime.of({1})
        self.q = MonomialPrime.of({1, 2})
        self.ass = {self.p, self.q}

    def test_embedded_pair(self):
        assert prime_component(self.R, self.p, self.ass) == vec(
            "pv[1/w]*res[1/z]", 2
        )
        assert prime_component(self.R, self.q, self.ass) == vec(
            "res[1/z^2]*res[1/w]", 2
        )

    def test_singleton_is_plain_restriction(self):
        T = vec("res[1/z]", 2)
        out = prime_component(T, self.p, {self.p})
        W = CellSet.coord_variety(2, {1})
        assert out.components[0] == restrict(W, T.components[0])

    def test_requires_membership(self):
        with pytest.raises(ValueError):
            prime_component(self.R, MonomialPrime.of({2}), self.ass)


class TestSepCheck:
    def test_true_on_axis_component(self):
        assert sep_check(vec("pv[1/w]*res[1/z]", 2), MonomialPrime.of({1}))

    def test_vacuous_at_top_codimension(self):
        assert sep_check(vec("res[1/z^2]*res[1/w]", 2), MonomialPrime.of({1, 2}))

    def test_false_with_deep_mass(self):
        T = vec("pv[1/z]*res[1/w] + res[1/z]*res[1/w]", 2)
        assert not sep_check(T, MonomialPrime.of({2}))


class TestLeadingAnnihilator:
    def test_worked_component(self):
        assert leading_annihilator_check(
            vec("pv[1/w]*res[1/z]", 2), MonomialPrime.of({1})
        )

    def test_single_degree_trivial(self):
        assert leading_annihilator_check(
            vec("res[1/z^2]*res[1/w]", 2), MonomialPrime.of({1, 2})
        )

    def test_artificial_mixed_component(self):
        # res[1/z] + res[1/z]*res[1/w] against (z): computed, not assumed
        T = vec("res[1/z] + res[1/z]*res[1/w]", 2)
        p = MonomialPrime.of({1})
        lead = CurrentVector.of(bidegree_part(T.components[0], 1))
        expected = annihilator(T) == annihilator(lead)
        assert leading_annihilator_check(T, p) == expected
        assert expected  # both annihilators are (z) here

    def test_zero_component_rejected(self):
        with pytest.raises(ValueError):
            leading_annihilator_check(
                CurrentVector.of(zero(2)), MonomialPrime.of({1})
            )


class TestDecompose:
    def test_worked_example(self):
        R = vec("pv[1/w]*res[1/z] + res[1/z^2]*res[1/w]", 2)
        J = MonomialModule.from_ideal(parse_ideal("z^2, z*w", 2))
        rep = decompose(R, J)
        assert rep.all_ok
        by_prime = {c.prime: c for c in rep.components}
        assert set(by_prime) == {MonomialPrime.of({1}), MonomialPrime.of({1, 2})}
        assert by_prime[MonomialPrime.of({1})].annihilator == MonomialModule.from_ideal(
            parse_ideal("z", 2)
        )
        assert by_prime[
            MonomialPrime.of({1, 2})
        ].annihilator == MonomialModule.from_ideal(parse_ideal("z^2, w", 2))
        inter = rep.components[0].annihilator.intersect(rep.components[1].annihilator)
        assert inter == J

    def test_principal_squarefree(self):
        n = 2
        R = CurrentVector.of(coleff_herrera([Monomial.make((1, 1))], n))
        J = MonomialModule.from_ideal(parse_ideal("z*w", n))
        rep = decompose(R, J)
        assert rep.all_ok
        assert {c.prime for c in rep.components} == {
            MonomialPrime.of({1}),
            MonomialPrime.of({2}),
        }

    def test_single_component(self):
        n = 2
        R = CurrentVector.of(coleff_herrera([Monomial.var(n, 1, 2), Monomial.var(n, 2)]))
        J = MonomialModule.from_ideal(parse_ideal("z^2, w", n))
        rep = decompose(R, J)
        assert rep.all_ok
        assert len(rep.components) == 1
        assert rep.components[0].current == R

    def test_duality_mismatch(self):
        R = vec("res[1/z]", 2)
        J = MonomialModule.from_ideal(parse_ideal("z^2, z*w", 2))
        with pytest.raises(DualityMismatch):
            decompose(R, J)

    def test_zero_slot_rejected(self):
        R = CurrentVector.of(parse_current("res[1/z]", 2), parse_current("pv[1/z]", 2))
        J = MonomialModule.from_components(
            (parse_ideal("z", 2), MonomialIdeal.zero(2))
        )
        with pytest.raises(ValueError):
            decompose(R, J)

    def test_rank_two(self):
        n = 2
        R = CurrentVector.of(
            coleff_herrera([Monomial.var(n, 1, 2)], n),
            coleff_herrera([Monomial.var(n, 2)], n),
        )
        J = MonomialModule.from_gens(n, 2, [(1, (2, 0)), (2, (0, 1))])
        rep = decompose(R, J)
        assert rep.all_ok
        assert {c.prime for c in rep.components} == {
            MonomialPrime.of({1}),
            MonomialPrime.of({2}),
        }

    def test_iteration_order_independent(self):
        R = vec("pv[1/w]*res[1/z] + res[1/z^2]*res[1/w]", 2)
        ass = [MonomialPrime.of({1}), MonomialPrime.of({1, 2})]
        direct = {p: prime_component(R, p, ass) for p in ass}
        flipped = {p: prime_component(R, p, list(reversed(ass))) for p in ass}
        assert direct == flipped
        J = MonomialModule.from_ideal(parse_ideal("z^2, z*w", 2))
        assert decompose(R, J) == decompose(R, J)


class TestDualityCheck:
    def test_worked_pair(self):
        assert duality_check([Monomial.var(2, 1, 2), Monomial.var(2, 2)])

    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_one_variable_power(self, a):
        assert duality_check([Monomial.make((a,))])

    def test_mixed_supports(self):
        fs = [Monomial.make((1, 1, 0)), Monomial.make((0, 0, 1))]
        assert duality_check(fs, 3)

    def test_rejects_non_ci(self):
        with pytest.raises(ValueError):
            duality_check([Monomial.make((1, 0)), Monomial.make((1, 1))])

    def test_randomized(self):
        rng = random.Random(101)
        for _ in range(25):
            n = rng.randint(1, 4)
            fs = random_ci_tuple(rng, n)
            assert duality_check(fs, n, trials=40)
