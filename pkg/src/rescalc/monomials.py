"""Monomial ideals, monomial primes, and componentwise monomial modules.

Ideals are stored by their unique minimal generating set; membership of a
polynomial is divisibility of each of its monomials by some generator.
:func:`primary_decomposition_oracle` is a self-contained brute-force
decomposition by recursive generator splitting, used as the independent
reference for everything the current machinery computes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple, Union

from .currents import PolyCoeff
from .errors import DimensionMismatch

ExpVec = Tuple[int, ...]


def _divides(u: ExpVec, v: ExpVec) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _lcm(u: ExpVec, v: ExpVec) -> ExpVec:
    return tuple(max(a, b) for a, b in zip(u, v))


def _minimize(gens: Iterable[ExpVec]) -> Tuple[ExpVec, ...]:
    gens = sorted(set(gens))
    out = []
    for g in gens:
        if not any(h != g and _divides(h, g) for h in gens):
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class MonomialPrime:
    """The prime generated by a set of variables; the empty set is (0)."""

    vars: FrozenSet[int]

    @staticmethod
    def of(vars_: Iterable[int]) -> "MonomialPrime":
        return MonomialPrime(frozenset(vars_))

    @property
    def codim(self) -> int:
        return len(self.vars)

    @property
    def is_zero(self) -> bool:
        return not self.vars

    def sort_key(self):
        return (len(self.vars), tuple(sorted(self.vars)))

    def __lt__(self, other: "MonomialPrime") -> bool:
        return self.sort_key() < other.sort_key()


PolyLike = Union[PolyCoeff, Iterable[ExpVec]]


def _monomials_of(phi: PolyLike) -> Tuple[ExpVec, ...]:
    if isinstance(phi, PolyCoeff):
        if not phi.is_polynomial:
            raise ValueError("membership is defined for polynomials only")
        return phi.monomials()
    return tuple(tuple(v) for v in phi)


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: Tuple[ExpVec, ...]

    @staticmethod
    def from_gens(n: int, gens: Iterable[ExpVec]) -> "MonomialIdeal":
        gens = tuple(tuple(int(e) for e in g) for g in gens)
        for g in gens:
            if len(g) != n:
                raise DimensionMismatch(f"generator {g} not over {n} variables")
            if any(e < 0 for e in g):
                raise ValueError(f"generator {g} has a negative exponent")
        return MonomialIdeal(n, _minimize(gens))

    @staticmethod
    def zero(n: int) -> "MonomialIdeal":
        return MonomialIdeal(n, ())

    @staticmethod
    def unit(n: int) -> "MonomialIdeal":
        return MonomialIdeal(n, ((0,) * n,))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def contains_monomial(self, v: ExpVec) -> bool:
        return any(_divides(g, v) for g in self.gens)

    def contains(self, phi: PolyLike) -> bool:
        """Membership of a polynomial: every monomial divisible by a generator."""
        return all(self.contains_monomial(m) for m in _monomials_of(phi))

    def includes(self, other: "MonomialIdeal") -> bool:
        self._same(other)
        return all(self.contains_monomial(g) for g in other.gens)

    def _same(self, other: "MonomialIdeal") -> None:
        if self.n != other.n:
            raise DimensionMismatch("ideals over different variable counts")

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._same(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.n)
        return MonomialIdeal.from_gens(
            self.n, (_lcm(u, v) for u in self.gens for v in other.gens)
        )

    def with_gen(self, v: ExpVec) -> "MonomialIdeal":
        return MonomialIdeal.from_gens(self.n, self.gens + (tuple(v),))

    def support(self) -> FrozenSet[int]:
        """Variables appearing in some minimal generator."""
        return frozenset(
            i + 1 for i in range(self.n) if any(g[i] for g in self.gens)
        )

    def is_primary(self) -> Optional[MonomialPrime]:
        """The associated prime if the ideal is primary, else ``None``.

        A monomial ideal is primary exactly when every variable occurring
        in a generator also occurs as a pure power generator; the zero
        ideal is (0)-primary.
        """
        if self.is_unit:
            raise ValueError("the unit ideal is not proper")
        if self.is_zero:
            return MonomialPrime.of(())
        supp = self.support()
        pures = {
            next(i + 1 for i, e in enumerate(g) if e)
            for g in self.gens
            if sum(1 for e in g if e) == 1
        }
        if supp <= pures:
            return MonomialPrime.of(supp)
        return None

    def ass_primes(self) -> FrozenSet[MonomialPrime]:
        """Associated primes, via the decomposition oracle."""
        if self.is_zero or self.is_unit:
            raise ValueError("associated primes require a proper nonzero ideal")
        comps = primary_decomposition_oracle(self)
        return frozenset(c.is_primary() for c in comps)


def _split_once(I: MonomialIdeal) -> Optional[Tuple[MonomialIdeal, MonomialIdeal]]:
    # pick a variable with no pure power generator and a mixed generator using it
    pures = {
        next(i + 1 for i, e in enumerate(g) if e)
        for g in I.gens
        if sum(1 for e in g if e) == 1
    }
    for i in sorted(I.support() - pures):
        for g in I.gens:
            if g[i - 1] and sum(1 for e in g if e) >= 2:
                u = tuple(e if j == i - 1 else 0 for j, e in enumerate(g))
                v = tuple(0 if j == i - 1 else e for j, e in enumerate(g))
                return I.with_gen(u), I.with_gen(v)
    return None


def _decompose_raw(I: MonomialIdeal, seen: Dict[MonomialIdeal, Tuple[MonomialIdeal, ...]]):
    if I in seen:
        return seen[I]
    split = _split_once(I)
    if split is None:
        out: Tuple[MonomialIdeal, ...] = (I,)
    else:
        a, b = split
        out = _decompose_raw(a, seen) + _decompose_raw(b, seen)
    seen[I] = out
    return out


def primary_decomposition_oracle(I: MonomialIdeal) -> Tuple[MonomialIdeal, ...]:
    """A minimal primary decomposition by recursive generator splitting.

    Whenever a minimal generator m factors as u * v with disjoint variable
    supports, I = (I + (u)) cap (I + (v)); recursing until every piece is
    primary, then merging pieces with equal primes and dropping redundant
    pieces, yields a minimal decomposition.  Components are returned in a
    canonical order, so the result is deterministic.
    """
    if I.is_zero or I.is_unit:
        raise ValueError("primary decomposition requires a proper nonzero ideal")
    raw = _decompose_raw(I, {})
    by_prime: Dict[MonomialPrime, MonomialIdeal] = {}
    for c in raw:
        p = c.is_primary()
        assert p is not None
        by_prime[p] = c if p not in by_prime else by_prime[p].intersect(c)
    comps = [by_prime[p] for p in sorted(by_prime, key=MonomialPrime.sort_key)]
    # drop components whose removal keeps the intersection equal to I
    changed = True
    while changed:
        changed = False
        for k in range(len(comps)):
            rest = comps[:k] + comps[k + 1 :]
            if not rest:
                break
            inter = rest[0]
            for c in rest[1:]:
                inter = inter.intersect(c)
            if inter == I:
                comps = rest
                changed = True
                break
    return tuple(
        sorted(comps, key=lambda c: (c.is_primary().sort_key(), c.gens))
    )


@dataclass(frozen=True)
class MonomialModule:
    """A componentwise monomial submodule of a rank-r free module."""

    rank: int
    components: Tuple[MonomialIdeal, ...]

    @staticmethod
    def from_components(components: Sequence[MonomialIdeal]) -> "MonomialModule":
        components = tuple(components)
        if not components:
            raise ValueError("module rank must be >= 1")
        n = components[0].n
        if any(c.n != n for c in components):
            raise DimensionMismatch("component ideals over different variable counts")
        return MonomialModule(len(components), components)

    @staticmethod
    def from_ideal(I: MonomialIdeal) -> "MonomialModule":
        return MonomialModule.from_components((I,))

    @staticmethod
    def from_gens(
        n: int, rank: int, gens: Iterable[Tuple[int, ExpVec]]
    ) -> "MonomialModule":
        slots: list = [[] for _ in range(rank)]
        for k, vec in gens:
            if not 1 <= k <= rank:
                raise ValueError(f"basis index {k} outside 1..{rank}")
            slots[k - 1].append(vec)
        return MonomialModule.from_components(
            tuple(MonomialIdeal.from_gens(n, s) for s in slots)
        )

    @staticmethod
    def full(n: int, rank: int) -> "MonomialModule":
        return MonomialModule.from_components((MonomialIdeal.unit(n),) * rank)

    @property
    def n(self) -> int:
        return self.components[0].n

    def gens(self) -> Tuple[Tuple[int, ExpVec], ...]:
        return tuple(
            (k + 1, g)
            for k, c in enumerate(self.components)
            for g in c.gens
        )

    @property
    def is_proper(self) -> bool:
        return any(c.is_proper for c in self.components)

    @property
    def is_full(self) -> bool:
        return not self.is_proper

    def _same(self, other: "MonomialModule") -> None:
        if self.rank != other.rank:
            raise DimensionMismatch("modules of different rank")
        if self.n != other.n:
            raise DimensionMismatch("modules over different variable counts")

    def contains(self, phi: Sequence[PolyLike]) -> bool:
        """Membership of a vector of polynomials, slot by slot."""
        if len(phi) != self.rank:
            raise DimensionMismatch(f"vector length {len(phi)} != rank {self.rank}")
        return all(c.contains(p) for c, p in zip(self.components, phi))

    def intersect(self, other: "MonomialModule") -> "MonomialModule":
        self._same(other)
        return MonomialModule.from_components(
            tuple(a.intersect(b) for a, b in zip(self.components, other.components))
        )

    def includes(self, other: "MonomialModule") -> bool:
        self._same(other)
        return all(a.includes(b) for a, b in zip(self.components, other.components))

    def ass_primes(self) -> FrozenSet[MonomialPrime]:
        """Associated primes: the union over slots; a zero slot contributes (0)."""
        if not self.is_proper:
            raise ValueError("associated primes require a proper module")
        out: set = set()
        for c in self.components:
            if c.is_unit:
                continue
            if c.is_zero:
                out.add(MonomialPrime.of(()))
            else:
                out |= c.ass_primes()
        return frozenset(out)

    def is_primary(self) -> Optional[MonomialPrime]:
        """The common prime if every non-unit slot is primary to it, else None."""
        if not self.is_proper:
            raise ValueError("the full module is not proper")
        primes = set()
        for c in self.components:
            if c.is_unit:
                continue
            p = c.is_primary()
            if p is None:
                return None
            primes.add(p)
        if len(primes) == 1:
            return primes.pop()
        return None

    def primary_decomposition(self) -> Tuple["MonomialModule", ...]:
        """Minimal primary decomposition, lifted slotwise from the ideal oracle."""
        if not self.is_proper:
            raise ValueError("primary decomposition requires a proper module")
        pieces: Dict[MonomialPrime, MonomialModule] = {}
        for k, c in enumerate(self.components):
            if c.is_unit:
                continue
            if c.is_zero:
                comps = (MonomialIdeal.zero(self.n),)
            else:
                comps = primary_decomposition_oracle(c)
            for q in comps:
                slots = list(MonomialModule.full(self.n, self.rank).components)
                slots[k] = q
                piece = MonomialModule.from_components(tuple(slots))
                p = q.is_primary() if not q.is_zero else MonomialPrime.of(())
                pieces[p] = piece if p not in pieces else pieces[p].intersect(piece)
        comps = [pieces[p] for p in sorted(pieces, key=MonomialPrime.sort_key)]
        changed = True
        while changed:
            changed = False
            for k in range(len(comps)):
                rest = comps[:k] + comps[k + 1 :]
                if not rest:
                    break
                inter = rest[0]
                for c in rest[1:]:
                    inter = inter.intersect(c)
                if inter == self:
                    comps = rest
                    changed = True
                    break
        return tuple(comps)
