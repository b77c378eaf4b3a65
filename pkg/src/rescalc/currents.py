"""Exact currents built from principal-value and residue factors.

A current over coordinates s_1, ..., s_n is a finite sum of elementary
terms.  Each term is a product

    c * s^alpha * sbar^beta * ds_D ^ A ^ prod_i [1/s_i^(a_i)]

where the factor slot of each variable is empty, a principal value
``[1/s_i^a]``, or a residue factor ``dbar[1/s_i^a]``; the coefficient data
(rational scalar, monomial exponents, form indices) is exact.  ``A`` is the
antiholomorphic one-form block: the coefficient's dsbar_i entries and the
residue factors, interleaved in ascending variable order.  The holomorphic
ds block also ascends and sits to the left of ``A``.  Every operation that
creates or moves a one-form multiplies by (-1)^(transpositions needed to
restore this orientation), so two equal currents have identical
representations and equality testing is exact.

Normal form reductions, applied by :func:`normalize` and preserved by all
operations:

  * a coefficient piece carrying sbar_i or dsbar_i against a residue
    factor at i is zero and is dropped;
  * a holomorphic power s_i^k in a coefficient is folded into the factor
    at i:  s_i^k [1/s_i^a] = [1/s_i^(a-k)] (k < a) or s_i^(k-a) (k >= a),
    and s_i^k dbar[1/s_i^a] = dbar[1/s_i^(a-k)] (k < a) or 0 (k >= a);
  * pieces with equal exponent/form data merge, zero scalars drop;
  * terms with equal factor vectors merge, empty terms drop, and the
    term list is sorted under the factor-vector order.

All values are immutable; every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch

MAX_VARS = 16
MAX_EXP = 1 << 15

Scalar = Union[int, Fraction]


class Kind(IntEnum):
    NONE = 0
    PV = 1
    RES = 2


class Factor(NamedTuple):
    kind: Kind
    exp: int

    @staticmethod
    def none() -> "Factor":
        return _FACTOR_NONE

    @staticmethod
    def pv(exp: int) -> "Factor":
        if exp < 1:
            raise ValueError("principal value exponent must be >= 1")
        return Factor(Kind.PV, exp)

    @staticmethod
    def res(exp: int) -> "Factor":
        if exp < 1:
            raise ValueError("residue exponent must be >= 1")
        return Factor(Kind.RES, exp)


_FACTOR_NONE = Factor(Kind.NONE, 0)


class Piece(NamedTuple):
    """One monomial piece of a coefficient form.

    ``alpha``/``beta`` are the holomorphic/antiholomorphic monomial
    exponents, ``dz``/``dzb`` the ascending variable indices of the ds and
    dsbar wedge factors contributed by the coefficient.
    """

    coef: Fraction
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    dz: Tuple[int, ...]
    dzb: Tuple[int, ...]

    @property
    def key(self):
        return (self.alpha, self.beta, self.dz, self.dzb)


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"scalar must be exact (int or Fraction), got {type(c).__name__}")


def _merge_ordered(a: Tuple[int, ...], b: Tuple[int, ...]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Merge two strictly ascending tuples into one.

    Returns ``(sign, merged)`` where ``sign`` is (-1)^(transpositions needed
    to sort the concatenation a+b), or ``None`` if the tuples share an
    element (the wedge collapses).
    """
    sign = 1
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
            if (len(a) - i) % 2:
                sign = -sign
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


@dataclass(frozen=True)
class PolyCoeff:
    """A coefficient form: an exact sum of monomial pieces."""

    n: int
    pieces: Tuple[Piece, ...]

    @staticmethod
    def make(n: int, pieces: Iterable[Piece]) -> "PolyCoeff":
        acc: dict = {}
        for p in pieces:
            if len(p.alpha) != n or len(p.beta) != n:
                raise DimensionMismatch(f"coefficient piece not over {n} variables")
            acc[p.key] = acc.get(p.key, Fraction(0)) + p.coef
        canon = tuple(
            Piece(c, *key) for key, c in sorted(acc.items()) if c != 0
        )
        return PolyCoeff(n, canon)

    @staticmethod
    def term(
        n: int,
        coef: Scalar = 1,
        alpha: Optional[Sequence[int]] = None,
        beta: Optional[Sequence[int]] = None,
        dz: Sequence[int] = (),
        dzb: Sequence[int] = (),
    ) -> "PolyCoeff":
        a = tuple(alpha) if alpha is not None else (0,) * n
        b = tuple(beta) if beta is not None else (0,) * n
        for v in (*dz, *dzb):
            if not 1 <= v <= n:
                raise ValueError(f"form index {v} outside 1..{n}")
        if len(set(dz)) != len(dz) or len(set(dzb)) != len(dzb):
            return PolyCoeff.zero(n)
        piece = Piece(_as_fraction(coef), a, b, tuple(sorted(dz)), tuple(sorted(dzb)))
        return PolyCoeff.make(n, [piece])

    @staticmethod
    def scalar(n: int, c: Scalar) -> "PolyCoeff":
        return PolyCoeff.term(n, coef=c)

    @staticmethod
    def one(n: int) -> "PolyCoeff":
        return PolyCoeff.scalar(n, 1)

    @staticmethod
    def zero(n: int) -> "PolyCoeff":
        return PolyCoeff(n, ())

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def is_polynomial(self) -> bool:
        """True when this is a plain polynomial in s (no sbar, no forms)."""
        return all(
            not any(p.beta) and not p.dz and not p.dzb for p in self.pieces
        )

    def __add__(self, other: "PolyCoeff") -> "PolyCoeff":
        if self.n != other.n:
            raise DimensionMismatch("coefficient dimensions differ")
        return PolyCoeff.make(self.n, self.pieces + other.pieces)

    def __neg__(self) -> "PolyCoeff":
        return self.scale(-1)

    def __sub__(self, other: "PolyCoeff") -> "PolyCoeff":
        return self + (-other)

    def scale(self, c: Scalar) -> "PolyCoeff":
        c = _as_fraction(c)
        if c == 0:
            return PolyCoeff.zero(self.n)
        return PolyCoeff(self.n, tuple(p._replace(coef=p.coef * c) for p in self.pieces))

    def monomials(self) -> Tuple[Tuple[int, ...], ...]:
        """Holomorphic exponent vectors of the pieces (for polynomials)."""
        return tuple(p.alpha for p in self.pieces)


@dataclass(frozen=True)
class ElementaryTerm:
    coeff: PolyCoeff
    factors: Tuple[Factor, ...]

    @property
    def n(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class Current:
    """A finite sum of elementary terms in normal form."""

    n: int
    terms: Tuple[ElementaryTerm, ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Current") -> "Current":
        if self.n != other.n:
            raise DimensionMismatch("currents live over different variable counts")
        return normalize(self.terms + other.terms, n=self.n)

    def __neg__(self) -> "Current":
        return self.scale(-1)

    def __sub__(self, other: "Current") -> "Current":
        return self + (-other)

    def scale(self, c: Scalar) -> "Current":
        c = _as_fraction(c)
        if c == 0:
            return zero(self.n)
        return Current(
            self.n,
            tuple(ElementaryTerm(t.coeff.scale(c), t.factors) for t in self.terms),
        )


def zero(n: int) -> Current:
    return Current(n, ())


def unit(n: int) -> Current:
    return from_coeff(PolyCoeff.one(n))


def from_coeff(xi: PolyCoeff) -> Current:
    """The smooth current given by a coefficient form (all factor slots empty)."""
    bare = (Factor.none(),) * xi.n
    return normalize([ElementaryTerm(xi, bare)], n=xi.n)


Atom = Tuple[Piece, Tuple[Factor, ...]]


def _atoms(T: Current) -> Iterator[Atom]:
    for t in T.terms:
        for p in t.coeff.pieces:
            yield p, t.factors


def _normalize_atoms(n: int, atoms: Iterable[Atom]) -> Current:
    acc: dict = {}
    for piece, factors in atoms:
        if len(factors) != n or len(piece.alpha) != n:
            raise DimensionMismatch(f"term not over {n} variables")
        coef = piece.coef
        if coef == 0:
            continue
        alpha = list(piece.alpha)
        new_factors = list(factors)
        dead = False
        for i in range(n):
            kind, a = new_factors[i]
            if kind == Kind.NONE:
                continue
            k = alpha[i]
            if kind == Kind.RES:
                # sbar_i and dsbar_i annihilate a residue factor at i
                if piece.beta[i] > 0 or (i + 1) in piece.dzb:
                    dead = True
                    break
                if k:
                    if k >= a:
                        dead = True
                        break
                    new_factors[i] = Factor.res(a - k)
                    alpha[i] = 0
            else:  # PV
                if k:
                    if k >= a:
                        new_factors[i] = Factor.none()
                        alpha[i] = k - a
                    else:
                        new_factors[i] = Factor.pv(a - k)
                        alpha[i] = 0
        if dead:
            continue
        fkey = tuple(new_factors)
        pkey = (tuple(alpha), piece.beta, piece.dz, piece.dzb)
        slot = acc.setdefault(fkey, {})
        slot[pkey] = slot.get(pkey, Fraction(0)) + coef
    terms = []
    for fkey in sorted(acc):
        pieces = tuple(
            Piece(c, *key) for key, c in sorted(acc[fkey].items()) if c != 0
        )
        if pieces:
            terms.append(ElementaryTerm(PolyCoeff(n, pieces), fkey))
    return Current(n, tuple(terms))


def normalize(raw: Iterable[ElementaryTerm], n: Optional[int] = None) -> Current:
    """Reduce a list of elementary terms to the unique normal form.

    Idempotent; raises :class:`DimensionMismatch` when the terms disagree
    on the number of variables (or with an explicit ``n``).
    """
    raw = tuple(raw)
    if n is None:
        if not raw:
            raise DimensionMismatch("cannot infer the variable count of an empty sum")
        n = raw[0].n
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}")
    atoms = []
    for t in raw:
        if t.n != n:
            raise DimensionMismatch(f"term over {t.n} variables in a sum over {n}")
        for p in t.coeff.pieces:
            atoms.append((p, t.factors))
    return _normalize_atoms(n, atoms)


def residue_signature(t: ElementaryTerm) -> frozenset:
    """Variable indices carrying a residue factor."""
    return frozenset(i + 1 for i, f in enumerate(t.factors) if f.kind == Kind.RES)


def support_codim_lower_bound(t: ElementaryTerm) -> int:
    """The term is supported inside the subspace cut out by its residue variables."""
    return sum(1 for f in t.factors if f.kind == Kind.RES)


def _piece_q(piece: Piece, factors: Tuple[Factor, ...]) -> int:
    return len(piece.dzb) + sum(1 for f in factors if f.kind == Kind.RES)


def bidegree(t: ElementaryTerm) -> Tuple[int, int]:
    """The (holomorphic, antiholomorphic) form degree of a pure term.

    Raises ``ValueError`` when the coefficient pieces disagree (a merged
    term may be of mixed degree; use :func:`bidegree_part` to split).
    """
    degs = {(len(p.dz), _piece_q(p, t.factors)) for p in t.coeff.pieces}
    if len(degs) != 1:
        raise ValueError("term has mixed bidegree")
    return degs.pop()


def bidegree_part(T: Current, q: int) -> Current:
    """The sub-sum of antiholomorphic degree exactly ``q``."""
    kept = [
        (p, factors) for p, factors in _atoms(T) if _piece_q(p, factors) == q
    ]
    return _normalize_atoms(T.n, kept)


def antiholomorphic_degrees(T: Current) -> frozenset:
    return frozenset(_piece_q(p, f) for p, f in _atoms(T))


def smooth_mul(xi: PolyCoeff, T: Current) -> Current:
    """Left multiplication by a coefficient form: xi ^ T, in normal form."""
    if xi.n != T.n:
        raise DimensionMismatch("coefficient and current dimensions differ")
    n = T.n
    out = []
    for term in T.terms:
        res_idx = tuple(
            i + 1 for i, f in enumerate(term.factors) if f.kind == Kind.RES
        )
        for piece in term.coeff.pieces:
            anti = _merge_ordered(piece.dzb, res_idx)
            if anti is None:  # cannot happen in normal form
                continue
            _, anti_block = anti
            for xp in xi.pieces:
                mz = _merge_ordered(xp.dz, piece.dz)
                if mz is None:
                    continue
                sz, dz_new = mz
                # xp's dsbar entries move past the full antiholomorphic block
                mzb = _merge_ordered(xp.dzb, anti_block)
                if mzb is None:
                    continue
                szb, _ = mzb
                dzb_new = tuple(sorted(xp.dzb + piece.dzb))
                # the right factor's ds block passes the left factor's dsbar block
                sblock = -1 if (len(piece.dz) * len(xp.dzb)) % 2 else 1
                coef = xp.coef * piece.coef * sz * szb * sblock
                alpha = tuple(x + y for x, y in zip(xp.alpha, piece.alpha))
                beta = tuple(x + y for x, y in zip(xp.beta, piece.beta))
                out.append((Piece(coef, alpha, beta, dz_new, dzb_new), term.factors))
    return _normalize_atoms(n, out)


def dbar(T: Current) -> Current:
    """The dbar operator, extended by the graded Leibniz rule.

    A principal value [1/s_i^a] differentiates to the residue factor
    dbar[1/s_i^a]; residue factors and holomorphic data differentiate to
    zero; the sbar monomial of a coefficient differentiates to dsbar
    pieces.  Signs follow the canonical orientation: reaching a site costs
    (-1)^(form degree to its left), and the produced one-form is moved to
    its ascending slot with one sign per transposition.
    """
    n = T.n
    out = []
    for piece, factors in _atoms(T):
        res_idx = tuple(i + 1 for i, f in enumerate(factors) if f.kind == Kind.RES)
        merged = _merge_ordered(piece.dzb, res_idx)
        if merged is None:
            continue
        _, anti_block = merged
        p_deg = len(piece.dz)
        q_deg = len(anti_block)
        anti_set = set(anti_block)
        # sites in the sbar monomial of the coefficient
        for i in range(1, n + 1):
            b = piece.beta[i - 1]
            if b == 0 or i in anti_set:
                continue
            passed = p_deg + sum(1 for l in anti_block if l < i)
            sign = -1 if passed % 2 else 1
            beta = list(piece.beta)
            beta[i - 1] -= 1
            out.append(
                (
                    Piece(
                        piece.coef * b * sign,
                        piece.alpha,
                        tuple(beta),
                        piece.dz,
                        tuple(sorted(piece.dzb + (i,))),
                    ),
                    factors,
                )
            )
        # principal value sites
        for j in range(1, n + 1):
            kind, a = factors[j - 1]
            if kind != Kind.PV or j in piece.dzb:
                continue
            passed = p_deg + q_deg + sum(1 for l in anti_block if l > j)
            sign = -1 if passed % 2 else 1
            new_factors = factors[: j - 1] + (Factor.res(a),) + factors[j:]
            out.append((piece._replace(coef=piece.coef * sign), new_factors))
    return _normalize_atoms(n, out)


def max_residue_exponent(T: Current, i: int) -> int:
    """Largest residue exponent at variable ``i`` over all terms (0 if none)."""
    best = 0
    for t in T.terms:
        f = t.factors[i - 1]
        if f.kind == Kind.RES:
            best = max(best, f.exp)
    return best


def max_alpha_degree(T: Current, i: int) -> int:
    """Largest holomorphic coefficient exponent at variable ``i``."""
    return max((p.alpha[i - 1] for p, _ in _atoms(T)), default=0)
