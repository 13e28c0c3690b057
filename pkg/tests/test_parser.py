"""Expression grammar: parsing, errors, print/parse round trips."""

import random

import pytest

from charlocus import (
    GradedPoly,
    ParseError,
    Z,
    Z2,
    expression_string,
    parse_class,
    pontryagin_ring,
    rp_ring,
    torsion_value_ring,
    w_ring,
)
from helpers import random_poly


class TestParsing:
    def test_rp_polynomial(self):
        ring = rp_ring(4)
        p = parse_class("1 + a + a^4", ring)
        assert dict(p.terms) == {(0,): 1, (1,): 1, (4,): 1}

    def test_free_polynomial(self):
        ring = w_ring(3, cap=9)
        p = parse_class("w1^3 + w3", ring)
        assert p == GradedPoly.gen(ring, "w1") ** 3 + GradedPoly.gen(ring, "w3")

    def test_binomial_power(self):
        ring = rp_ring(4)
        assert parse_class("(1+a)^5", ring) == parse_class("1 + a + a^4", ring)

    def test_whitespace_insignificant(self):
        ring = rp_ring(4)
        assert parse_class(" ( 1 + a ) ^ 5 ", ring) == parse_class("(1+a)^5", ring)

    def test_integer_coefficients_mod2(self):
        ring = rp_ring(4)
        assert parse_class("2*a", ring).is_zero()
        assert parse_class("3*a", ring) == parse_class("a", ring)

    def test_signed_integers_over_z(self):
        ring = pontryagin_ring(3, cap=40)
        p = parse_class("p2^2 + -1*p1*p3", ring, field=Z)
        assert p.coefficient(ring.monomial({"p2": 2})) == 1
        assert p.coefficient(ring.monomial({"p1": 1, "p3": 1})) == -1

    def test_products_and_parens(self):
        ring = w_ring(3, cap=9)
        p = parse_class("(w1 + w2) * (w1 + w3)", ring)
        assert p == parse_class("w1^2 + w1*w2 + w1*w3 + w2*w3", ring)

    def test_relation_absorbs_large_powers(self):
        # cap handling comes from the relation, not a parse error
        ring = rp_ring(4)
        assert parse_class("a^9", ring).is_zero()


class TestErrors:
    def test_syntax_error_reports_position(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError) as err:
            parse_class("a + + a", ring)
        assert err.value.position == 4

    def test_unknown_generator(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError, match="unknown generator 'b'"):
            parse_class("a + b", ring)

    def test_bad_exponent(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError):
            parse_class("a^0", ring)
        with pytest.raises(ParseError):
            parse_class("a^", ring)

    def test_unbalanced_paren(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError):
            parse_class("(1 + a", ring)

    def test_degree_overflow_in_free_ring(self):
        ring = w_ring(3, cap=9)
        with pytest.raises(ParseError, match="exceeds cap"):
            parse_class("w3^4", ring)

    def test_stray_character(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError):
            parse_class("a ? a", ring)

    def test_trailing_garbage(self):
        ring = rp_ring(4)
        with pytest.raises(ParseError):
            parse_class("a a", ring)


class TestRoundTrip:
    @pytest.mark.parametrize("make_ring,field", [
        (lambda: rp_ring(6), Z2),
        (lambda: w_ring(4, cap=10), Z2),
        (lambda: pontryagin_ring(3, cap=28), Z),
        (lambda: torsion_value_ring(2, 7, 24), Z2),
    ])
    def test_print_then_parse_is_identity(self, make_ring, field):
        rng = random.Random(2024)
        ring = make_ring()
        for _ in range(100):
            p = random_poly(ring, rng, field=field)
            assert parse_class(expression_string(p), ring, field=field) == p

    def test_zero_round_trip(self):
        ring = rp_ring(4)
        zero = GradedPoly.zero(ring)
        assert expression_string(zero) == "0"
        assert parse_class("0", ring).is_zero()
