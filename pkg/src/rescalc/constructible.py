"""Constructible sets generated by coordinate hyperplanes, and restriction.

Every set in the Boolean algebra generated by the hyperplanes
H_i = {s_i = 0} is a disjoint union of cells

    W_omega = {s_i = 0 for i in omega, s_i != 0 for i not in omega},

one for each subset omega of {1, ..., n}.  A :class:`CellSet` stores the
subset of the power set that a constructible set occupies, as a bitset of
length 2^n; two set expressions denote the same constructible set exactly
when their cell sets are equal.

Restriction of a current to a constructible set keeps the terms whose
residue signature is one of the set's cells.
"""

from __future__ import annotations

import typing
from dataclasses import dataclass
from typing import Iterable, Tuple

from .currents import Current, ElementaryTerm, Kind, MAX_VARS
from .errors import DimensionMismatch


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}")


def _mask_of(n: int, vars_: Iterable[int]) -> int:
    mask = 0
    for i in vars_:
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class CellSet:
    """A constructible set, stored as the set of cells it covers."""

    n: int
    bits: int

    @staticmethod
    def empty(n: int) -> "CellSet":
        _check_n(n)
        return CellSet(n, 0)

    @staticmethod
    def full(n: int) -> "CellSet":
        _check_n(n)
        return CellSet(n, (1 << (1 << n)) - 1)

    @staticmethod
    def hyperplane(n: int, i: int) -> "CellSet":
        """{s_i = 0}: the cells whose variable set contains i."""
        _check_n(n)
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        bits = 0
        for m in range(1 << n):
            if m & (1 << (i - 1)):
                bits |= 1 << m
        return CellSet(n, bits)

    @staticmethod
    def coord_variety(n: int, vars_: Iterable[int]) -> "CellSet":
        """The subspace {s_i = 0 for i in vars_}: cells containing vars_."""
        _check_n(n)
        need = _mask_of(n, vars_)
        bits = 0
        for m in range(1 << n):
            if m & need == need:
                bits |= 1 << m
        return CellSet(n, bits)

    @staticmethod
    def cell(n: int, omega: Iterable[int]) -> "CellSet":
        _check_n(n)
        return CellSet(n, 1 << _mask_of(n, omega))

    def _same(self, other: "CellSet") -> None:
        if self.n != other.n:
            raise DimensionMismatch("cell sets live over different variable counts")

    def __invert__(self) -> "CellSet":
        return CellSet(self.n, self.bits ^ ((1 << (1 << self.n)) - 1))

    def __and__(self, other: "CellSet") -> "CellSet":
        self._same(other)
        return CellSet(self.n, self.bits & other.bits)

    def __or__(self, other: "CellSet") -> "CellSet":
        self._same(other)
        return CellSet(self.n, self.bits | other.bits)

    def __sub__(self, other: "CellSet") -> "CellSet":
        self._same(other)
        return CellSet(self.n, self.bits & ~other.bits)

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def has_cell(self, omega: Iterable[int]) -> bool:
        return bool(self.bits >> _mask_of(self.n, omega) & 1)

    def members(self) -> Tuple[frozenset, ...]:
        """The cells, as variable-index sets, in ascending mask order."""
        out = []
        for m in range(1 << self.n):
            if self.bits >> m & 1:
                out.append(frozenset(i + 1 for i in range(self.n) if m >> i & 1))
        return tuple(out)


# ---------------------------------------------------------------------------
# set expressions


@dataclass(frozen=True)
class Hyperplane:
    index: int


@dataclass(frozen=True)
class CoordVariety:
    vars: frozenset


@dataclass(frozen=True)
class Cell:
    omega: frozenset


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Full:
    pass


@dataclass(frozen=True)
class Complement:
    inner: "SetExpr"


@dataclass(frozen=True)
class Intersection:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Union:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Difference:
    left: "SetExpr"
    right: "SetExpr"


SetExpr = typing.Union[
    Hyperplane, CoordVariety, Cell, Empty, Full, Complement, Intersection, Union, Difference
]


def cells_of(expr: SetExpr, n: int) -> CellSet:
    """Evaluate a set expression to its canonical cell set."""
    if isinstance(expr, Hyperplane):
        return CellSet.hyperplane(n, expr.index)
    if isinstance(expr, CoordVariety):
        return CellSet.coord_variety(n, expr.vars)
    if isinstance(expr, Cell):
        return CellSet.cell(n, expr.omega)
    if isinstance(expr, Empty):
        return CellSet.empty(n)
    if isinstance(expr, Full):
        return CellSet.full(n)
    if isinstance(expr, Complement):
        return ~cells_of(expr.inner, n)
    if isinstance(expr, Intersection):
        return cells_of(expr.left, n) & cells_of(expr.right, n)
    if isinstance(expr, Union):
        return cells_of(expr.left, n) | cells_of(expr.right, n)
    if isinstance(expr, Difference):
        return cells_of(expr.left, n) - cells_of(expr.right, n)
    raise TypeError(f"not a set expression: {expr!r}")


def _signature_mask(t: ElementaryTerm) -> int:
    mask = 0
    for i, f in enumerate(t.factors):
        if f.kind == Kind.RES:
            mask |= 1 << i
    return mask


def restrict(W: CellSet, T: Current) -> Current:
    """Restriction of a current to a constructible set.

    Keeps exactly the terms whose residue signature is a cell of ``W``;
    the result is again in normal form.
    """
    if W.n != T.n:
        raise DimensionMismatch("set and current live over different variable counts")
    kept = tuple(t for t in T.terms if W.bits >> _signature_mask(t) & 1)
    return Current(T.n, kept)


def min_cell_codim(W: CellSet) -> int:
    """The smallest cell size of a nonempty cell set."""
    if W.is_empty:
        raise ValueError("the empty set has no cells")
    best = W.n + 1
    for m in range(1 << W.n):
        if W.bits >> m & 1:
            best = min(best, bin(m).count("1"))
    return best
