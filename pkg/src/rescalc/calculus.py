"""Products of currents with monomials, [1/g], and dbar[1/g].

The multiplication tables, per variable i with g-exponent c > 0:

    s_i^c           against  empty slot:  multiplies the coefficient
                             [1/s_i^a]:   [1/s_i^(a-c)], or s_i^(c-a) when c >= a
                             dbar[1/s_i^a]: dbar[1/s_i^(a-c)], or 0 when c >= a
    [1/s_i^c] from the left  empty slot:  [1/s_i^c]
                             [1/s_i^a]:   [1/s_i^(a+c)]
                             dbar[1/s_i^a]: 0 (the whole term dies)

dbar[1/g] ^ T is defined by the Leibniz rearrangement

    dbar[1/g] ^ T  =  dbar([1/g] T) - [1/g] dbar(T),

which reproduces the one-variable table ([1/s^a][1/s^b] = [1/s^(a+b)],
[1/s^a] dbar[1/s^b] = 0, dbar[1/s^a] [1/s^b] = dbar[1/s^(a+b)]) and makes
both Leibniz identities hold by construction.  These left products are not
(anti-)commutative in general and the engine never reorders them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

from .constructible import CellSet, min_cell_codim
from .currents import (
    Current,
    ElementaryTerm,
    Factor,
    Kind,
    PolyCoeff,
    Scalar,
    dbar,
    from_coeff,
    normalize,
    smooth_mul,
)
from .errors import DimensionMismatch


@dataclass(frozen=True)
class Monomial:
    """A monomial s^gamma, as its exponent vector."""

    exps: Tuple[int, ...]

    @staticmethod
    def make(exps: Sequence[int]) -> "Monomial":
        t = tuple(int(e) for e in exps)
        if any(e < 0 for e in t):
            raise ValueError("monomial exponents must be nonnegative")
        return Monomial(t)

    @staticmethod
    def var(n: int, i: int, exp: int = 1) -> "Monomial":
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        return Monomial.make(tuple(exp if j == i - 1 else 0 for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def is_one(self) -> bool:
        return not any(self.exps)

    def support(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, e in enumerate(self.exps) if e)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.n != other.n:
            raise DimensionMismatch("monomials over different variable counts")
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))


def mul_monomial(m: Monomial, T: Current) -> Current:
    """s^gamma * T, extended linearly; residue factors shrink or die."""
    if m.n != T.n:
        raise DimensionMismatch("monomial and current dimensions differ")
    return smooth_mul(PolyCoeff.term(T.n, alpha=m.exps), T)


def mul_polynomial(phi: PolyCoeff, T: Current) -> Current:
    """phi * T for a polynomial phi with rational coefficients."""
    if not phi.is_polynomial:
        raise ValueError("multiplier must be a polynomial (no sbar, no form part)")
    return smooth_mul(phi, T)


def pv_mul(g: Monomial, T: Current) -> Current:
    """The left product [1/g] ^ T for a nonconstant monomial g."""
    if g.n != T.n:
        raise DimensionMismatch("monomial and current dimensions differ")
    if g.is_one:
        raise ValueError("principal value denominator must contain a variable")
    out = []
    for term in T.terms:
        factors = list(term.factors)
        dead = False
        for i in g.support():
            kind, a = factors[i - 1]
            c = g.exps[i - 1]
            if kind == Kind.RES:
                dead = True
                break
            if kind == Kind.PV:
                factors[i - 1] = Factor.pv(a + c)
            else:
                factors[i - 1] = Factor.pv(c)
        if not dead:
            out.append(ElementaryTerm(term.coeff, tuple(factors)))
    return normalize(out, n=T.n)


def res_mul(g: Monomial, T: Current) -> Current:
    """The left product dbar[1/g] ^ T, via the Leibniz rearrangement."""
    return dbar(pv_mul(g, T)) - pv_mul(g, dbar(T))


CoeffLike = Union[PolyCoeff, Scalar]


def _as_coeff(n: int, alpha: CoeffLike) -> PolyCoeff:
    if isinstance(alpha, PolyCoeff):
        if alpha.n != n:
            raise DimensionMismatch("coefficient dimension differs from the monomials'")
        return alpha
    return PolyCoeff.scalar(n, alpha)


def _tuple_n(f_list: Sequence[Monomial], n: Optional[int]) -> int:
    if f_list:
        m = f_list[0].n
        if any(f.n != m for f in f_list):
            raise DimensionMismatch("monomials over different variable counts")
        if n is not None and n != m:
            raise DimensionMismatch("explicit variable count disagrees with the monomials")
        return m
    if n is None:
        raise DimensionMismatch("variable count required for an empty product")
    return n


def residue_pv_product(
    f_list: Sequence[Monomial],
    q: int,
    alpha: CoeffLike = 1,
    n: Optional[int] = None,
) -> Current:
    """dbar[1/f_1] ^ ... ^ dbar[1/f_q] ^ [1/f_(q+1)] ... [1/f_nu] ^ alpha.

    The factors are applied right to left, so the list order is the order
    in which the product is written.
    """
    n = _tuple_n(f_list, n)
    if not 0 <= q <= len(f_list):
        raise ValueError(f"residue count {q} outside 0..{len(f_list)}")
    T = from_coeff(_as_coeff(n, alpha))
    for f in reversed(f_list[q:]):
        T = pv_mul(f, T)
    for f in reversed(f_list[:q]):
        T = res_mul(f, T)
    return T


def coleff_herrera(f_list: Sequence[Monomial], n: Optional[int] = None) -> Current:
    """The Coleff-Herrera product dbar[1/f_1] ^ ... ^ dbar[1/f_nu]."""
    return residue_pv_product(f_list, len(f_list), 1, n=n)


def common_zero_cells(f_list: Sequence[Monomial], n: Optional[int] = None) -> CellSet:
    """The common zero set of the monomials, as a cell set."""
    n = _tuple_n(f_list, n)
    W = CellSet.full(n)
    for f in f_list:
        V = CellSet.empty(n)
        for i in f.support():
            V = V | CellSet.hyperplane(n, i)
        W = W & V
    return W


def is_monomial_complete_intersection(
    f_list: Sequence[Monomial], n: Optional[int] = None
) -> bool:
    """Whether the common zero set has codimension exactly len(f_list)."""
    n = _tuple_n(f_list, n)
    W = common_zero_cells(f_list, n)
    if W.is_empty:
        return False
    return min_cell_codim(W) == len(f_list)
