"""Annihilators of current vectors and the decomposition along associated primes.

A :class:`CurrentVector` models a current acting on vectors of r0
polynomials: the action of phi = (phi_1, ..., phi_r0) is
sum_k phi_k * component_k.  The annihilator is computed exactly on the
monomial level -- a monomial kills a normalized current precisely when it
kills every term, and it kills a term precisely when it reaches the
exponent of one of the term's residue factors -- and then certified by a
randomized search for polynomial killers outside the monomial module.

:func:`decompose` slices a current along the associated primes of a
module by restricting to V(p) minus the strictly larger associated
varieties, takes annihilators, and verifies every property a minimal
primary decomposition must have, reporting each verdict with a witness
on failure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from .calculus import (
    Monomial,
    coleff_herrera,
    is_monomial_complete_intersection,
    mul_polynomial,
)
from .constructible import CellSet, restrict
from .currents import (
    Current,
    Kind,
    PolyCoeff,
    bidegree_part,
    from_coeff,
    max_alpha_degree,
    max_residue_exponent,
    zero,
)
from .errors import DimensionMismatch, DualityMismatch, NonMonomialAnnihilator
from .grammar import format_current, format_module, format_prime
from .monomials import MonomialIdeal, MonomialModule, MonomialPrime

DEFAULT_TRIALS = 200
DEFAULT_SEED = 0


@dataclass(frozen=True)
class CurrentVector:
    """r0 current components acting on vectors of r0 polynomials."""

    components: Tuple[Current, ...]

    @staticmethod
    def of(*components: Current) -> "CurrentVector":
        if not components:
            raise ValueError("a current vector needs at least one component")
        n = components[0].n
        if any(c.n != n for c in components):
            raise DimensionMismatch("components over different variable counts")
        return CurrentVector(tuple(components))

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: "CurrentVector") -> "CurrentVector":
        self._same(other)
        return CurrentVector(
            tuple(a + b for a, b in zip(self.components, other.components))
        )

    def _same(self, other: "CurrentVector") -> None:
        if self.rank != other.rank:
            raise DimensionMismatch("current vectors of different rank")
        if self.n != other.n:
            raise DimensionMismatch("current vectors over different variable counts")

    def restrict(self, W: CellSet) -> "CurrentVector":
        return CurrentVector(tuple(restrict(W, c) for c in self.components))

    def antiholomorphic_part(self, q: int) -> "CurrentVector":
        return CurrentVector(tuple(bidegree_part(c, q) for c in self.components))


def _zero_vector(n: int, rank: int) -> CurrentVector:
    return CurrentVector((zero(n),) * rank)


def _format_vector(T: CurrentVector) -> str:
    if T.rank == 1:
        return format_current(T.components[0])
    return "; ".join(
        f"e{k}: {format_current(c)}" for k, c in enumerate(T.components, start=1)
    )


def _format_poly_vector(phi: Sequence[PolyCoeff], n: int) -> str:
    if len(phi) == 1:
        return format_current(from_coeff(phi[0]))
    return "; ".join(
        f"e{k}: {format_current(from_coeff(p))}" for k, p in enumerate(phi, start=1)
    )


def kills(phi: Sequence[PolyCoeff], T: CurrentVector) -> bool:
    """Whether the polynomial vector annihilates the current vector."""
    if len(phi) != T.rank:
        raise DimensionMismatch(f"vector length {len(phi)} != rank {T.rank}")
    total = zero(T.n)
    for p, c in zip(phi, T.components):
        if not p.is_polynomial:
            raise ValueError("annihilator tests take polynomial entries")
        total = total + mul_polynomial(p, c)
    return total.is_zero


def _monomial_annihilator(c: Current) -> MonomialIdeal:
    """Exact monomial annihilator of one component.

    A monomial s^gamma kills a normalized current iff it kills every term,
    and it kills a term iff gamma_i >= a_i for some residue factor
    dbar[1/s_i^(a_i)] of the term; so the monomial annihilator is the
    intersection over terms of the pure-power ideals of their residue
    factors (the zero ideal for a term with no residue factor).
    """
    n = c.n
    ann = MonomialIdeal.unit(n)
    for t in c.terms:
        gens = []
        for i, f in enumerate(t.factors):
            if f.kind == Kind.RES:
                gens.append(tuple(f.exp if j == i else 0 for j in range(n)))
        ann = ann.intersect(MonomialIdeal.from_gens(n, gens))
        if ann.is_zero:
            break
    return ann


def _degree_bounds(T: CurrentVector) -> Tuple[int, ...]:
    return tuple(
        max(
            max(max_residue_exponent(c, i) for c in T.components),
            0,
        )
        + max(max_alpha_degree(c, i) for c in T.components)
        + 1
        for i in range(1, T.n + 1)
    )


def _random_polynomial(
    rng: random.Random, n: int, bounds: Tuple[int, ...], pool: Sequence[Tuple[int, ...]]
) -> PolyCoeff:
    out = PolyCoeff.zero(n)
    for _ in range(rng.randint(1, 3)):
        if pool and rng.random() < 0.5:
            base = rng.choice(pool)
            extra = tuple(rng.randint(0, 1) for _ in range(n))
            mono = tuple(a + b for a, b in zip(base, extra))
        else:
            mono = tuple(rng.randint(0, bounds[i]) for i in range(n))
        coef = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
        out = out + PolyCoeff.term(n, coef=coef, alpha=mono)
    return out


def annihilator(
    T: CurrentVector,
    *,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    component: str = "",
) -> MonomialModule:
    """The annihilator module of a current vector.

    The monomial part is exact; a randomized certification pass (at least
    ``trials`` random polynomial vectors, degree-bounded per variable by
    the largest residue exponent plus the largest coefficient degree plus
    one) then searches for killers outside it.  Finding one raises
    :class:`NonMonomialAnnihilator` with the witness.
    """
    n, rank = T.n, T.rank
    if T.is_zero:
        return MonomialModule.full(n, rank)
    M = MonomialModule.from_components(
        tuple(_monomial_annihilator(c) for c in T.components)
    )
    rng = random.Random(seed)
    bounds = _degree_bounds(T)
    pools = tuple(c.gens for c in M.components)
    for _ in range(max(trials, 0)):
        phi = tuple(
            _random_polynomial(rng, n, bounds, pools[k]) for k in range(rank)
        )
        if all(p.is_zero for p in phi):
            continue
        if kills(phi, T) and not M.contains(phi):
            raise NonMonomialAnnihilator(_format_poly_vector(phi, n), component)
    return M


def prime_component(
    R: CurrentVector, p: MonomialPrime, ass: Iterable[MonomialPrime]
) -> CurrentVector:
    """R restricted to V(p) minus the strictly larger associated varieties."""
    ass = frozenset(ass)
    if p not in ass:
        raise ValueError(f"{sorted(p.vars)} is not one of the associated primes")
    if p.is_zero:
        raise ValueError("the zero prime has no current component")
    W = CellSet.coord_variety(R.n, p.vars)
    for q in sorted(ass, key=MonomialPrime.sort_key):
        if q != p and q.vars > p.vars:
            W = W - CellSet.coord_variety(R.n, q.vars)
    return R.restrict(W)


def sep_check(T: CurrentVector, p: MonomialPrime) -> bool:
    """Restriction to every strictly deeper coordinate variety vanishes."""
    rest = sorted(set(range(1, T.n + 1)) - p.vars)
    for size in range(1, len(rest) + 1):
        for extra in itertools.combinations(rest, size):
            W = CellSet.coord_variety(T.n, p.vars | set(extra))
            if not T.restrict(W).is_zero:
                return False
    return True


def leading_annihilator_check(
    Rp: CurrentVector,
    p: MonomialPrime,
    *,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> bool:
    """Whether ann(Rp) equals the annihilator of its lowest-degree part.

    The lowest antiholomorphic degree of a component supported on V(p) is
    codim p; the verdict compares the two annihilator modules.
    """
    if Rp.is_zero:
        raise ValueError("the component is zero")
    q = len(p.vars)
    full = annihilator(Rp, seed=seed, trials=trials)
    lead = annihilator(Rp.antiholomorphic_part(q), seed=seed, trials=trials)
    return full == lead


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class ComponentReport:
    prime: MonomialPrime
    current: CurrentVector
    annihilator: MonomialModule
    primary: Verdict
    sep: Verdict
    leading: Verdict


@dataclass(frozen=True)
class DecompositionReport:
    """The map p -> (R^p, ann R^p) plus every verification verdict."""

    n: int
    rank: int
    module: MonomialModule
    ass: Tuple[MonomialPrime, ...]
    components: Tuple[ComponentReport, ...]
    sum_check: Verdict
    intersection_check: Verdict
    minimality_check: Verdict

    @property
    def all_ok(self) -> bool:
        if not (self.sum_check.ok and self.intersection_check.ok and self.minimality_check.ok):
            return False
        return all(
            c.primary.ok and c.sep.ok and c.leading.ok for c in self.components
        )


def _intersect_all(mods: Sequence[MonomialModule], n: int, rank: int) -> MonomialModule:
    out = MonomialModule.full(n, rank)
    for m in mods:
        out = out.intersect(m)
    return out


def decompose(
    R: CurrentVector,
    J: MonomialModule,
    *,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> DecompositionReport:
    """Slice R along the associated primes of J and verify the decomposition.

    Preconditions: the quotient by J has positive codimension (no zero
    slot ideal, J proper) and ann(R) equals J; inconsistent inputs raise
    :class:`DualityMismatch`.  The report is a pure function of (R, J).
    """
    if R.rank != J.rank:
        raise DimensionMismatch(f"current rank {R.rank} != module rank {J.rank}")
    if R.n != J.n:
        raise DimensionMismatch("current and module over different variable counts")
    if not J.is_proper:
        raise ValueError("the full module admits no decomposition")
    if any(c.is_zero for c in J.components):
        raise ValueError(
            "a zero slot ideal puts (0) among the associated primes; "
            "the quotient must have positive codimension"
        )
    ann_R = annihilator(R, seed=seed, trials=trials, component="input")
    if ann_R != J:
        raise DualityMismatch(format_module(ann_R), format_module(J))

    ass = tuple(sorted(J.ass_primes(), key=MonomialPrime.sort_key))
    comps = []
    for p in ass:
        Rp = prime_component(R, p, ass)
        tag = format_prime(p, R.n)
        Qp = annihilator(Rp, seed=seed, trials=trials, component=tag)
        if Rp.is_zero:
            primary = Verdict(False, f"component at {tag} is zero")
            sep = Verdict(True)
            leading = Verdict(True)
        else:
            got = Qp.is_primary()
            if got == p:
                primary = Verdict(True)
            else:
                found = format_prime(got, R.n) if got else "no prime"
                primary = Verdict(
                    False, f"annihilator at {tag} is not {tag}-primary ({found})"
                )
            sep_ok = sep_check(Rp, p)
            sep = Verdict(sep_ok, None if sep_ok else f"mass beyond V{tag}")
            lead_ok = leading_annihilator_check(Rp, p, seed=seed, trials=trials)
            leading = Verdict(
                lead_ok,
                None
                if lead_ok
                else f"annihilator at {tag} differs from its lowest-degree part's",
            )
        comps.append(
            ComponentReport(
                prime=p, current=Rp, annihilator=Qp,
                primary=primary, sep=sep, leading=leading,
            )
        )

    total = _zero_vector(R.n, R.rank)
    for c in comps:
        total = total + c.current
    sum_ok = all(a == b for a, b in zip(total.components, R.components))
    sum_check = Verdict(
        sum_ok, None if sum_ok else f"component sum is {_format_vector(total)}"
    )

    inter = _intersect_all([c.annihilator for c in comps], R.n, R.rank)
    inter_ok = inter == J
    intersection_check = Verdict(
        inter_ok, None if inter_ok else f"intersection is {format_module(inter)}"
    )

    removable = []
    for k in range(len(comps)):
        rest = [c.annihilator for j, c in enumerate(comps) if j != k]
        if _intersect_all(rest, R.n, R.rank) == J:
            removable.append(format_prime(comps[k].prime, R.n))
    minimality_check = Verdict(
        not removable,
        None if not removable else "removable component(s): " + ", ".join(removable),
    )

    return DecompositionReport(
        n=R.n,
        rank=R.rank,
        module=J,
        ass=ass,
        components=tuple(comps),
        sum_check=sum_check,
        intersection_check=intersection_check,
        minimality_check=minimality_check,
    )


def duality_check(
    f_list: Sequence[Monomial],
    n: Optional[int] = None,
    *,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> bool:
    """annihilator(coleff_herrera(f)) == (f), for a complete intersection."""
    if f_list:
        n = f_list[0].n if n is None else n
    if n is None:
        raise DimensionMismatch("variable count required for an empty tuple")
    if not is_monomial_complete_intersection(f_list, n):
        raise ValueError("the tuple is not a monomial complete intersection")
    mu = coleff_herrera(f_list, n)
    ann = annihilator(CurrentVector.of(mu), seed=seed, trials=trials)
    ideal = MonomialIdeal.from_gens(n, (f.exps for f in f_list))
    return ann == MonomialModule.from_ideal(ideal)
