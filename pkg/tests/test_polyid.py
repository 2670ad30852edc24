"""Exact polynomial layer: parser offsets, expansion, and identity checks."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from entwit import (
    ParseError,
    Polynomial,
    builtin_identity,
    equal,
    eval_expr,
    expand,
    parse,
    pretty,
    verify,
)
from entwit.polyid import Add, IntLit, Mul, Neg, Pow, Sub, Var

F = Fraction


# --- parsing -----------------------------------------------------------------


def test_parse_ast_structure():
    assert parse("a") == Var("a")
    assert parse("a'") == Var("a'")
    assert parse("12") == IntLit(12)
    assert parse("a*b - a'*b'") == Sub(
        Mul(Var("a"), Var("b")), Mul(Var("a'"), Var("b'"))
    )
    assert parse("-a + b") == Add(Neg(Var("a")), Var("b"))
    assert parse("(a + b)^2") == Pow(Add(Var("a"), Var("b")), 2)


def test_parse_precedence_and_associativity():
    # '*' binds tighter than '+', '^' tighter than unary '-'
    assert parse("a + b*a'") == Add(Var("a"), Mul(Var("b"), Var("a'")))
    assert parse("-a^2") == Neg(Pow(Var("a"), 2))
    # left-assoc chains
    assert parse("a - b - a'") == Sub(Sub(Var("a"), Var("b")), Var("a'"))


def test_parse_exponent_constant_folding():
    # exponents are folded at parse time, right-associatively
    assert parse("2^3^2") == Pow(IntLit(2), 9)
    assert expand(parse("2^3^2")).constant_value() == 512
    assert parse("a^(1+1)") == Pow(Var("a"), 2)
    assert expand(parse("a^0")) == Polynomial.constant(1)


@pytest.mark.parametrize(
    "text, offset, fragment",
    [
        ("a b", 2, "unexpected token 'b'"),
        ("c", 0, "unknown identifier 'c'"),
        ("a''", 0, 'unknown identifier "a\'\'"'),
        ("a^-1", 2, "unexpected token '-'"),
        ("a^(-1)", 2, "must fold to a non-negative integer"),
        ("a^b", 2, "must fold to a non-negative integer"),
        ("(a+b", 4, "expected ')'"),
        ("", 0, "unexpected token 'end of input'"),
        ("1/2", 1, "unexpected character '/'"),
    ],
)
def test_parse_errors_carry_offsets(text, offset, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.offset == offset
    assert fragment in str(exc.value)
    assert f"at offset {offset}" in str(exc.value)


# --- expansion ---------------------------------------------------------------


def test_expand_binomial_square():
    p = expand(parse("(a + b)^2"))
    assert p.terms == {
        (2, 0, 0, 0): F(1),
        (1, 0, 1, 0): F(2),
        (0, 0, 2, 0): F(1),
    }


def test_expand_commutator_square():
    p = expand(parse("(a*b - a'*b')^2"))
    assert p.terms == {
        (2, 0, 2, 0): F(1),
        (1, 1, 1, 1): F(-2),
        (0, 2, 0, 2): F(1),
    }


def test_expand_cancellation_yields_zero():
    assert expand(parse("(a + b)*(a - b) - a^2 + b^2")).is_zero()


def _random_expr(gen: random.Random, depth: int):
    if depth == 0 or gen.random() < 0.3:
        if gen.random() < 0.5:
            return Var(gen.choice(("a", "a'", "b", "b'")))
        return IntLit(gen.randrange(0, 7))
    kind = gen.choice(("add", "sub", "mul", "neg", "pow"))
    if kind == "neg":
        return Neg(_random_expr(gen, depth - 1))
    if kind == "pow":
        return Pow(_random_expr(gen, depth - 1), gen.randrange(0, 4))
    left = _random_expr(gen, depth - 1)
    right = _random_expr(gen, depth - 1)
    return {"add": Add, "sub": Sub, "mul": Mul}[kind](left, right)


def test_expand_is_a_ring_homomorphism():
    # expanding then evaluating must agree with direct AST evaluation
    gen = random.Random(2024)
    for _ in range(60):
        e = _random_expr(gen, 4)
        point = tuple(F(gen.randint(-9, 9), gen.randint(1, 5)) for _ in range(4))
        assert expand(e).evaluate(point) == eval_expr(e, point)


def test_pretty_round_trips_exactly():
    gen = random.Random(77)
    for _ in range(80):
        e = _random_expr(gen, 4)
        assert parse(pretty(e)) == e
    for name, n in (("complex_norm", None), ("ramanujan", 2), ("ramanujan", 3)):
        lhs, rhs = builtin_identity(name, n)
        assert parse(pretty(lhs)) == lhs
        assert parse(pretty(rhs)) == rhs


# --- identities --------------------------------------------------------------


def test_complex_norm_identity_holds():
    lhs, rhs = builtin_identity("complex_norm")
    assert equal(expand(lhs), expand(rhs))
    assert verify("complex_norm") is True


@pytest.mark.parametrize("n, holds", [(1, False), (2, True), (3, False), (4, True)])
def test_power_sum_identity_holds_only_for_2_and_4(n, holds):
    lhs, rhs = builtin_identity("ramanujan", n)
    assert equal(expand(lhs), expand(rhs)) is holds
    assert verify("ramanujan", n) is holds


def test_power_sum_n1_difference_is_explicit():
    lhs, rhs = builtin_identity("ramanujan", 1)
    diff = expand(lhs) - expand(rhs)
    # lhs - rhs = 2*a'*b - 2*a'*b'
    assert diff.terms == {(0, 1, 1, 0): F(2), (0, 1, 0, 1): F(-2)}


def test_identity_registry_validation():
    with pytest.raises(ValueError, match="unknown identity"):
        builtin_identity("pythagoras")
    with pytest.raises(ValueError, match="n >= 1"):
        builtin_identity("ramanujan")
    with pytest.raises(ValueError, match="n >= 1"):
        builtin_identity("ramanujan", 0)
    with pytest.raises(ValueError):
        verify("ramanujan", -2)


# --- Polynomial edge cases ---------------------------------------------------


def test_polynomial_constant_and_zero():
    assert Polynomial.zero().is_zero()
    assert Polynomial.zero().constant_value() == F(0)
    assert Polynomial.constant(F(3, 7)).constant_value() == F(3, 7)
    assert Polynomial.variable("b'").constant_value() is None


def test_polynomial_power_edges():
    p = Polynomial.variable("a") + Polynomial.constant(2)
    assert p**0 == Polynomial.constant(1)
    with pytest.raises(ValueError, match="non-negative"):
        p ** (-1)


def test_polynomial_construction_rejects_bad_exponents():
    with pytest.raises(ValueError):
        Polynomial({(1, 0, 0): F(1)})
    with pytest.raises(ValueError):
        Polynomial({(1, 0, 0, -1): F(1)})


def test_polynomial_drops_zero_coefficients():
    p = Polynomial({(1, 0, 0, 0): F(0), (0, 1, 0, 0): F(2)})
    assert p.terms == {(0, 1, 0, 0): F(2)}
    assert (p - p).is_zero()


def test_polynomial_is_immutable_and_hashable():
    p = Polynomial.variable("a")
    with pytest.raises(AttributeError):
        p._terms = {}
    q = Polynomial.variable("a")
    assert p == q and hash(p) == hash(q)
    assert (p == 5) is False


def test_polynomial_evaluate_needs_four_values():
    p = Polynomial.variable("a")
    with pytest.raises(ValueError, match="all 4 variables"):
        p.evaluate([F(1), F(2)])
    assert p.evaluate([F(5), F(0), F(0), F(0)]) == F(5)
