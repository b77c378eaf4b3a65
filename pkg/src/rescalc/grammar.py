"""Text grammars for currents, constructible sets, ideals, and modules.

Current expressions::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := primary ('*' primary)*
    primary := rational | 'pv[1/' mono ']' | 'res[1/' mono ']'
             | 'conj(' mono ')' | 'dz'INT | 'dzb'INT | var ('^' INT)?
    mono    := monofactor ('*' monofactor)* ;  monofactor := '1' | var ('^' INT)?

Variables are ``z1 .. zn``; for n <= 4 the aliases ``z, w, u, v`` are also
accepted (and preferred when printing).  A term is evaluated right to
left: each primary acts on the product of everything to its right, so
``pv[1/w]*res[1/z]`` is the left product [1/w] ^ dbar[1/z].  Rationals are
``p`` or ``p/q``.

Set expressions::

    sexpr   := sterm (('|' | '\\') sterm)*
    sterm   := sfactor ('&' sfactor)*
    sfactor := '~' sfactor | '(' sexpr ')' | 'empty' | 'full'
             | 'V(' var (',' var)* ')' | 'H(' var ')' | 'W{' [INT (',' INT)*] '}'

``V`` is the subspace where the listed variables vanish, ``H`` a coordinate
hyperplane, ``W{...}`` a single cell (``W{}`` is the dense cell).  ``~``
binds tightest, then ``&``, then ``|`` and ``\\`` at equal precedence,
left associative.

Ideals are comma-separated monomials (``z^2, z*w``); ordered monomial
lists for products use the same syntax.  Modules are comma-separated
``e<k>: mono`` entries.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from . import constructible as cs
from .calculus import Monomial, mul_monomial, pv_mul, res_mul
from .constructible import CellSet, cells_of
from .currents import (
    Current,
    ElementaryTerm,
    Kind,
    MAX_EXP,
    MAX_VARS,
    Piece,
    PolyCoeff,
    smooth_mul,
    unit,
)
from .errors import ParseError
from .monomials import MonomialIdeal, MonomialModule, MonomialPrime

_ALIASES = ("z", "w", "u", "v")


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*|\d+|\S")


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _tokenize(src: str) -> List[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        m = _TOKEN_RE.match(src, i)
        assert m is not None
        toks.append(_Tok(m.group(), line, col))
        col += m.end() - i
        i = m.end()
    toks.append(_Tok("", line, col))
    return toks


class _Parser:
    def __init__(self, src: str, n: int):
        if not 1 <= n <= MAX_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_VARS}")
        self.toks = _tokenize(src)
        self.pos = 0
        self.n = n

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            shown = repr(t.text) if t.text else "end of input"
            self.fail(f"expected {text!r}, found {shown}")
        return self.next()

    def at_end(self) -> bool:
        return not self.peek().text

    def finish(self):
        if not self.at_end():
            self.fail(f"unexpected trailing input {self.peek().text!r}")

    # -- shared pieces ------------------------------------------------------

    def var_index(self, tok: _Tok) -> int:
        name = tok.text
        if re.fullmatch(r"z\d+", name):
            i = int(name[1:])
            if not 1 <= i <= self.n:
                self.fail(f"unknown variable {name!r} (n = {self.n})", tok)
            return i
        if name in _ALIASES and self.n <= 4:
            i = _ALIASES.index(name) + 1
            if i <= self.n:
                return i
        self.fail(f"unknown variable {name!r}", tok)

    def is_var(self, text: str) -> bool:
        if re.fullmatch(r"z\d+", text):
            return True
        return text in _ALIASES and self.n <= 4

    def integer(self) -> int:
        t = self.peek()
        if not t.text.isdigit():
            self.fail("expected an integer")
        return int(self.next().text)

    def exponent(self) -> int:
        t = self.peek()
        e = self.integer()
        if e < 1:
            self.fail("exponent must be >= 1", t)
        if e > MAX_EXP:
            self.fail(f"exponent overflow (limit {MAX_EXP})", t)
        return e

    def monomial(self) -> Monomial:
        exps = [0] * self.n
        while True:
            t = self.peek()
            if t.text == "1":
                self.next()
            elif self.is_var(t.text):
                i = self.var_index(self.next())
                e = 1
                if self.peek().text == "^":
                    self.next()
                    e = self.exponent()
                exps[i - 1] += e
                if exps[i - 1] > MAX_EXP:
                    self.fail(f"exponent overflow (limit {MAX_EXP})", t)
            else:
                self.fail("expected a monomial")
            if self.peek().text == "*":
                self.next()
            else:
                return Monomial.make(exps)

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek().text == "/":
            self.next()
            t = self.peek()
            den = self.integer()
            if den == 0:
                self.fail("zero denominator", t)
            return Fraction(num, den)
        return Fraction(num)


# ---------------------------------------------------------------------------
# current expressions

_DZ_RE = re.compile(r"(dzb|dz)(\d+)\Z")

_Apply = Callable[[Current], Current]


def _parse_primary(p: _Parser) -> _Apply:
    t = p.peek()
    if t.text.isdigit():
        c = p.rational()
        return lambda acc: acc.scale(c)
    if not t.text or not t.text[0].isalpha():
        p.fail(f"unexpected {t.text!r}" if t.text else "unexpected end of input")
    if t.text == "pv" or t.text == "res":
        kind = p.next().text
        p.expect("[")
        one = p.peek()
        if one.text != "1":
            p.fail("expected '1' in the numerator", one)
        p.next()
        p.expect("/")
        mtok = p.peek()
        g = p.monomial()
        if g.is_one:
            p.fail("denominator must contain a variable", mtok)
        p.expect("]")
        if kind == "pv":
            return lambda acc: pv_mul(g, acc)
        return lambda acc: res_mul(g, acc)
    if t.text == "conj":
        p.next()
        p.expect("(")
        m = p.monomial()
        p.expect(")")
        xi = PolyCoeff.term(p.n, beta=m.exps)
        return lambda acc: smooth_mul(xi, acc)
    m = _DZ_RE.fullmatch(t.text)
    if m:
        p.next()
        i = int(m.group(2))
        if not 1 <= i <= p.n:
            p.fail(f"form index {i} outside 1..{p.n}", t)
        if m.group(1) == "dz":
            xi = PolyCoeff.term(p.n, dz=(i,))
        else:
            xi = PolyCoeff.term(p.n, dzb=(i,))
        return lambda acc: smooth_mul(xi, acc)
    if p.is_var(t.text):
        i = p.var_index(p.next())
        e = 1
        if p.peek().text == "^":
            p.next()
            e = p.exponent()
        g = Monomial.var(p.n, i, e)
        return lambda acc: mul_monomial(g, acc)
    p.fail(f"unexpected {t.text!r}")


def _starts_primary(p: _Parser, t: _Tok) -> bool:
    if not t.text:
        return False
    if t.text.isdigit():
        return True
    if t.text in ("pv", "res", "conj") or _DZ_RE.fullmatch(t.text):
        return True
    return p.is_var(t.text)


def _parse_term(p: _Parser) -> Current:
    ops = [_parse_primary(p)]
    while True:
        if p.peek().text == "*":
            p.next()
        elif not _starts_primary(p, p.peek()):
            break
        ops.append(_parse_primary(p))
    acc = unit(p.n)
    for op in reversed(ops):
        acc = op(acc)
    return acc


def parse_current(src: str, n: int) -> Current:
    """Parse a current expression over n variables into normal form."""
    p = _Parser(src, n)
    sign = 1
    if p.peek().text in ("+", "-"):
        sign = -1 if p.next().text == "-" else 1
    total = _parse_term(p).scale(sign)
    while p.peek().text in ("+", "-"):
        sign = -1 if p.next().text == "-" else 1
        total = total + _parse_term(p).scale(sign)
    p.finish()
    return total


def parse_current_vector(src: str, n: int) -> Tuple[Current, ...]:
    """Parse either a single expression (rank 1) or ';'-separated
    ``e<k>: expr`` entries into a component tuple."""
    if not re.match(r"\s*e\d+\s*:", src):
        return (parse_current(src, n),)
    entries = {}
    rank = 0
    for chunk in src.split(";"):
        if not chunk.strip():
            continue
        m = re.match(r"\s*e(\d+)\s*:(.*)\Z", chunk, re.S)
        if not m:
            raise ParseError("expected 'e<k>: expression'", 1, 1)
        k = int(m.group(1))
        if k < 1:
            raise ParseError("basis index must be >= 1", 1, 1)
        if k in entries:
            raise ParseError(f"duplicate basis index e{k}", 1, 1)
        entries[k] = parse_current(m.group(2), n)
        rank = max(rank, k)
    from .currents import zero

    return tuple(entries.get(k, zero(n)) for k in range(1, rank + 1))


# ---------------------------------------------------------------------------
# set expressions


def _parse_set_factor(p: _Parser) -> cs.SetExpr:
    t = p.peek()
    if t.text == "~":
        p.next()
        return cs.Complement(_parse_set_factor(p))
    if t.text == "(":
        p.next()
        e = _parse_set_expr(p)
        p.expect(")")
        return e
    if t.text == "empty":
        p.next()
        return cs.Empty()
    if t.text == "full":
        p.next()
        return cs.Full()
    if t.text == "V":
        p.next()
        p.expect("(")
        vars_ = [p.var_index(p.next())]
        while p.peek().text == ",":
            p.next()
            vars_.append(p.var_index(p.next()))
        p.expect(")")
        return cs.CoordVariety(frozenset(vars_))
    if t.text == "H":
        p.next()
        p.expect("(")
        i = p.var_index(p.next())
        p.expect(")")
        return cs.Hyperplane(i)
    if t.text == "W":
        p.next()
        p.expect("{")
        omega = []
        if p.peek().text != "}":
            while True:
                it = p.peek()
                i = p.integer()
                if not 1 <= i <= p.n:
                    p.fail(f"cell index {i} outside 1..{p.n}", it)
                omega.append(i)
                if p.peek().text == ",":
                    p.next()
                else:
                    break
        p.expect("}")
        return cs.Cell(frozenset(omega))
    p.fail(f"unexpected {t.text!r}" if t.text else "unexpected end of input")


def _parse_set_term(p: _Parser) -> cs.SetExpr:
    e = _parse_set_factor(p)
    while p.peek().text == "&":
        p.next()
        e = cs.Intersection(e, _parse_set_factor(p))
    return e


def _parse_set_expr(p: _Parser) -> cs.SetExpr:
    e = _parse_set_term(p)
    while p.peek().text in ("|", "\\"):
        op = p.next().text
        rhs = _parse_set_term(p)
        e = cs.Union(e, rhs) if op == "|" else cs.Difference(e, rhs)
    return e


def parse_set_expr(src: str, n: int) -> cs.SetExpr:
    p = _Parser(src, n)
    e = _parse_set_expr(p)
    p.finish()
    return e


def parse_set(src: str, n: int) -> CellSet:
    """Parse a set expression and evaluate it to its canonical cell set."""
    return cells_of(parse_set_expr(src, n), n)


# ---------------------------------------------------------------------------
# ideals and modules


def parse_monomial_list(src: str, n: int) -> Tuple[Monomial, ...]:
    """An ordered comma-separated list of monomials."""
    p = _Parser(src, n)
    out = [p.monomial()]
    while p.peek().text == ",":
        p.next()
        out.append(p.monomial())
    p.finish()
    return tuple(out)


def parse_ideal(src: str, n: int) -> MonomialIdeal:
    return MonomialIdeal.from_gens(n, (m.exps for m in parse_monomial_list(src, n)))


def parse_module(src: str, n: int) -> MonomialModule:
    """Comma-separated ``e<k>: mono`` entries; the rank is the largest index."""
    p = _Parser(src, n)
    gens = []
    rank = 0
    while True:
        t = p.peek()
        m = re.fullmatch(r"e(\d+)", t.text)
        if not m:
            p.fail("expected a basis entry 'e<k>'")
        k = int(m.group(1))
        if k < 1:
            p.fail("basis index must be >= 1", t)
        p.next()
        p.expect(":")
        gens.append((k, p.monomial().exps))
        rank = max(rank, k)
        if p.peek().text == ",":
            p.next()
        else:
            break
    p.finish()
    return MonomialModule.from_gens(n, rank, gens)


# ---------------------------------------------------------------------------
# printing (canonical, byte-stable, round-trips through the parsers)


def format_var(i: int, n: int) -> str:
    if n <= 4:
        return _ALIASES[i - 1]
    return f"z{i}"


def format_monomial_exps(exps: Sequence[int], n: int) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(format_var(i, n))
        elif e > 1:
            parts.append(f"{format_var(i, n)}^{e}")
    return "*".join(parts) if parts else "1"


def format_monomial(m: Monomial) -> str:
    return format_monomial_exps(m.exps, m.n)


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _piece_body(piece: Piece, factors, n: int) -> List[str]:
    parts: List[str] = []
    if any(piece.alpha):
        parts.append(format_monomial_exps(piece.alpha, n))
    if any(piece.beta):
        parts.append(f"conj({format_monomial_exps(piece.beta, n)})")
    for i in piece.dz:
        parts.append(f"dz{i}")
    res_idx = {
        i + 1: f.exp for i, f in enumerate(factors) if f.kind == Kind.RES
    }
    for i in sorted(set(piece.dzb) | set(res_idx)):
        if i in res_idx:
            e = res_idx[i]
            mono = format_var(i, n) if e == 1 else f"{format_var(i, n)}^{e}"
            parts.append(f"res[1/{mono}]")
        else:
            parts.append(f"dzb{i}")
    for i, f in enumerate(factors, start=1):
        if f.kind == Kind.PV:
            mono = format_var(i, n) if f.exp == 1 else f"{format_var(i, n)}^{f.exp}"
            parts.append(f"pv[1/{mono}]")
    return parts


def format_current(T: Current) -> str:
    """Canonical text of a current; parses back to the identical value."""
    if T.is_zero:
        return "0"
    chunks: List[Tuple[bool, str]] = []
    for term in T.terms:
        for piece in term.coeff.pieces:
            body = _piece_body(piece, term.factors, T.n)
            c = piece.coef
            neg = c < 0
            mag = -c if neg else c
            if not body:
                text = _format_fraction(mag)
            elif mag == 1:
                text = "*".join(body)
            else:
                text = "*".join([_format_fraction(mag)] + body)
            chunks.append((neg, text))
    out = []
    for k, (neg, text) in enumerate(chunks):
        if k == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out)


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "0"
    gens = sorted(I.gens, reverse=True)
    return ", ".join(format_monomial_exps(g, I.n) for g in gens)


def format_module(M: MonomialModule) -> str:
    if M.rank == 1:
        return format_ideal(M.components[0])
    parts = []
    for k, c in enumerate(M.components, start=1):
        parts.append(f"e{k}: {format_ideal(c)}")
    return "; ".join(parts)


def format_prime(p: MonomialPrime, n: int) -> str:
    if p.is_zero:
        return "(0)"
    return "(" + ", ".join(format_var(i, n) for i in sorted(p.vars)) + ")"


def format_cells(W: CellSet) -> str:
    if W.is_empty:
        return "empty"
    return " | ".join(
        "W{" + ",".join(str(i) for i in sorted(m)) + "}" for m in W.members()
    )
