"""Exact polynomial identities in the four commuting scalars a, a', b, b'.

The separability conditions in :mod:`entwit.witnesses` rest on scalar
polynomial identities.  This module expands both sides exactly (arbitrary
precision rationals, sparse exponent-vector representation) and decides
equality term by term -- no floating point anywhere.

Grammar for :func:`parse`::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' power)?          # right-associative
    atom   := INT | VAR | '(' expr ')'
    VAR    := a | a' | b | b'

Precedence is ^ > unary minus > * > binary +/-, an explicit '*' is required
between factors, and power exponents must fold to non-negative integer
constants.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

__all__ = [
    "VARIABLES",
    "Polynomial",
    "ParseError",
    "Var", "IntLit", "Neg", "Add", "Sub", "Mul", "Pow",
    "parse",
    "pretty",
    "expand",
    "eval_expr",
    "equal",
    "builtin_identity",
    "verify",
]

VARIABLES = ("a", "a'", "b", "b'")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Exponent = tuple[int, int, int, int]
_ZERO_EXP: Exponent = (0, 0, 0, 0)


class Polynomial:
    """Sparse polynomial: map from length-4 exponent vectors to Fractions.

    Instances are canonical (no zero coefficients stored) and immutable;
    arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction] | None = None):
        canonical: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 4 or any(e < 0 for e in exp):
                raise ValueError(f"exponent vector must be 4 non-negative integers, got {exp}")
            coeff = Fraction(coeff)
            if coeff != 0:
                canonical[exp] = canonical.get(exp, Fraction(0)) + coeff
                if canonical[exp] == 0:
                    del canonical[exp]
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls({_ZERO_EXP: Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        exp = [0, 0, 0, 0]
        exp[_VAR_INDEX[name]] = 1
        return cls({tuple(exp): Fraction(1)})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_value(self) -> Fraction | None:
        """The value as a Fraction if the polynomial is constant, else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {_ZERO_EXP}:
            return self._terms[_ZERO_EXP]
        return None

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[exp] = out.get(exp, Fraction(0)) + c1 * c2
        return Polynomial(out)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("polynomial power requires a non-negative exponent")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != 4:
            raise ValueError("evaluation point must assign all 4 variables")
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            term = coeff
            for v, e in zip(values, exp):
                term *= v**e
            total += term
        return total

    def __repr__(self):
        if not self._terms:
            return "Polynomial(0)"
        bits = []
        for exp in sorted(self._terms, reverse=True):
            coeff = self._terms[exp]
            factors = [str(coeff)]
            for name, e in zip(VARIABLES, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            bits.append("*".join(factors))
        return "Polynomial(" + " + ".join(bits) + ")"


# --- AST ---------------------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __post_init__(self):
        if self.name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True)
class IntLit(Expr):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("integer literals are unsigned; use Neg for negatives")


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError("power exponents must be non-negative integers")


class ParseError(ValueError):
    """Syntax or name error, carrying the byte offset into the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_SYMBOLS = set("+-*^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            while j < n and text[j] == "'":
                j += 1
            name = text[i:j]
            if name not in _VAR_INDEX:
                raise ParseError(f"unknown identifier {name!r}", i)
            tokens.append(("VAR", name, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r} but found {tok[1] or 'end of input'!r}",
                             tok[2])
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[0] == "*":
            self.take()
            left = Mul(left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        exp_offset = self.peek()[2]
        exponent_expr = self.power()  # right-associative
        value = expand(exponent_expr).constant_value()
        if value is None or value.denominator != 1 or value < 0:
            raise ParseError("power exponent must fold to a non-negative integer",
                             exp_offset)
        return Pow(base, int(value))

    def atom(self) -> Expr:
        kind, text, offset = self.take()
        if kind == "INT":
            return IntLit(int(text))
        if kind == "VAR":
            return Var(text)
        if kind == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {text or 'end of input'!r}", offset)


def parse(text: str) -> Expr:
    """Parse ``text`` into an AST; raises :class:`ParseError` with the offset."""
    return _Parser(text).parse()


def _precedence(e: Expr) -> int:
    if isinstance(e, (Var, IntLit)):
        return 4
    if isinstance(e, Pow):
        return 3
    if isinstance(e, Neg):
        return 2
    if isinstance(e, Mul):
        return 1
    return 0  # Add / Sub


def _wrap(child: Expr, parent_prec: int, *, tight: bool = False) -> str:
    text = pretty(child)
    child_prec = _precedence(child)
    if child_prec < parent_prec or (tight and child_prec == parent_prec):
        return f"({text})"
    return text


def pretty(e: Expr) -> str:
    """Canonical text form; ``parse(pretty(e))`` reproduces ``e`` exactly."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, 2)
    if isinstance(e, Pow):
        return _wrap(e.base, 3, tight=True) + f"^{e.exponent}"
    if isinstance(e, Mul):
        return _wrap(e.left, 1) + "*" + _wrap(e.right, 1, tight=True)
    if isinstance(e, Add):
        return _wrap(e.left, 0) + " + " + _wrap(e.right, 0, tight=True)
    if isinstance(e, Sub):
        return _wrap(e.left, 0) + " - " + _wrap(e.right, 0, tight=True)
    raise TypeError(f"not an expression node: {e!r}")


def expand(e: Expr) -> Polynomial:
    """Fully expanded canonical polynomial with exact rational coefficients."""
    if isinstance(e, Var):
        return Polynomial.variable(e.name)
    if isinstance(e, IntLit):
        return Polynomial.constant(e.value)
    if isinstance(e, Neg):
        return -expand(e.operand)
    if isinstance(e, Add):
        return expand(e.left) + expand(e.right)
    if isinstance(e, Sub):
        return expand(e.left) - expand(e.right)
    if isinstance(e, Mul):
        return expand(e.left) * expand(e.right)
    if isinstance(e, Pow):
        return expand(e.base) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: Expr, point: Sequence[Fraction]) -> Fraction:
    """Evaluate the AST directly (independently of :func:`expand`)."""
    if isinstance(e, Var):
        return Fraction(point[_VAR_INDEX[e.name]])
    if isinstance(e, IntLit):
        return Fraction(e.value)
    if isinstance(e, Neg):
        return -eval_expr(e.operand, point)
    if isinstance(e, Add):
        return eval_expr(e.left, point) + eval_expr(e.right, point)
    if isinstance(e, Sub):
        return eval_expr(e.left, point) - eval_expr(e.right, point)
    if isinstance(e, Mul):
        return eval_expr(e.left, point) * eval_expr(e.right, point)
    if isinstance(e, Pow):
        return eval_expr(e.base, point) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")


def equal(p: Polynomial, q: Polynomial) -> bool:
    """Exact term-by-term equality."""
    return p == q


_IDENTITY_NAMES = ("complex_norm", "ramanujan")


def builtin_identity(name: str, n: int | None = None) -> tuple[Expr, Expr]:
    """The two sides of a named identity, as ASTs exactly as displayed.

    ``complex_norm`` ignores ``n``; ``ramanujan`` accepts any n >= 1 and
    leaves validity to :func:`verify` (it holds only for n = 2 and n = 4).
    """
    if name == "complex_norm":
        lhs = parse("(a*b - a'*b')^2 + (a*b' + a'*b)^2")
        rhs = parse("(a^2 + a'^2)*(b^2 + b'^2)")
        return (lhs, rhs)
    if name == "ramanujan":
        if n is None or int(n) < 1:
            raise ValueError(f"the power-sum identity needs an exponent n >= 1, got {n!r}")
        n = int(n)
        lhs = parse(f"(a*b + a*b' + a'*b)^{n} + (a*b' + a'*b + a'*b')^{n}"
                    f" + (a*b - a'*b')^{n}")
        rhs = parse(f"(a'*b + a'*b' + a*b)^{n} + (a'*b' + a*b + a*b')^{n}"
                    f" + (a*b' - a'*b)^{n}")
        return (lhs, rhs)
    raise ValueError(f"unknown identity {name!r}; expected one of {_IDENTITY_NAMES}")


def _sample_point(rng: random.Random) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 20)) for _ in range(4))


def verify(name: str, n: int | None = None, *, trials: int = 20) -> bool:
    """Decide a builtin identity by exact expansion, cross-checked numerically.

    Both sides are evaluated at ``trials`` random rational points (seeded
    deterministically from the identity name and exponent); the sample must
    agree with the symbolic verdict, witnessing at least one disagreement
    when the verdict is false.
    """
    lhs, rhs = builtin_identity(name, n)
    verdict = equal(expand(lhs), expand(rhs))
    seed = zlib.crc32(f"{name}:{n}".encode())
    rng = random.Random(seed)
    witnessed = False
    for _ in range(trials):
        point = _sample_point(rng)
        agree = eval_expr(lhs, point) == eval_expr(rhs, point)
        if verdict and not agree:
            raise RuntimeError(f"symbolic equality of {name!r} contradicted at {point}")
        if not agree:
            witnessed = True
    if not verdict and not witnessed:
        raise RuntimeError(f"no numeric witness found for the inequality of {name!r}; "
                           f"symbolic expansion disagrees with sampling")
    return verdict
