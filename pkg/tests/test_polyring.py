from fractions import Fraction

import pytest

from cremona.errors import ContextMismatch, EmptyList, NotDivisible, ParseError, ZeroPolynomial
from cremona.polyring import (
    MultiPoly,
    VariableContext,
    add,
    degree_in,
    divide_exact,
    format_poly,
    gcd,
    gcd_many,
    is_homogeneous,
    mul,
    parse_poly,
    substitute,
    total_degree,
)

X = VariableContext.projective(2)
XS = VariableContext.projective(2, ("s",))
XT = VariableContext.projective(2, ("t",))


def P(text, ctx=X):
    return parse_poly(text, ctx)


class TestArithmetic:
    def test_cancellation(self):
        assert add(P("x0 + x1"), P("x0 - x1")) == P("2*x0")

    def test_zero_is_neutral(self):
        p = P("x0^2 - 3/4*x1*x2")
        assert p + MultiPoly.zero(X) == p

    def test_rational_coefficients(self):
        assert P("1/2*x0^2") + P("1/3*x0^2") == P("5/6*x0^2")

    def test_difference_of_squares(self):
        assert mul(P("x0 + x1"), P("x0 - x1")) == P("x0^2 - x1^2")

    def test_one_is_neutral(self):
        p = P("x0*x1 - 7")
        assert p * MultiPoly.one(X) == p

    def test_nodal_factor_expansion(self):
        lhs = P("x0 + s*x2", XS) * P("s^2*x0 + x2", XS)
        assert lhs == P("s^2*x0^2 + (1 + s^3)*x0*x2 + s*x2^2", XS)

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            P("x0") + P("x0", XS)

    def test_scalars_and_powers(self):
        assert P("x0 + 1") ** 3 == P("x0^3 + 3*x0^2 + 3*x0 + 1")
        assert 2 * P("x1") - 1 == P("2*x1 - 1")
        assert P("x0") * Fraction(1, 3) == P("1/3*x0")

    def test_lowest_terms(self):
        p = P("2/4*x0")
        assert p.terms == {(1, 0, 0): Fraction(1, 2)}


class TestDegrees:
    def test_total_degree(self):
        assert total_degree(P("x0*x1*x2"), ["x0", "x1", "x2"]) == 3
        assert total_degree(P("t^3*x0^2", XT), ["x0", "x1", "x2"]) == 2
        assert total_degree(MultiPoly.zero(X), ["x0"]) == float("-inf")

    def test_degree_in(self):
        assert degree_in(P("x0^2*x1 + x1^3"), "x0") == 2
        assert degree_in(P("x1^3"), "x0") == 0
        abc = VariableContext(("a", "b", "c", "x0", "x1", "x2"))
        f = parse_poly("b*x0^2 + c*x0*x2 + a*x2^2", abc)
        assert degree_in(f, "x0") == 2 and degree_in(f, "x1") == 0

    def test_degree_of_zero(self):
        with pytest.raises(ZeroPolynomial):
            degree_in(MultiPoly.zero(X), "x0")

    def test_homogeneity(self):
        assert is_homogeneous(P("x0*x1 + x2^2"))
        assert not is_homogeneous(P("x0 + x1*x2"))
        p = P("t^2*x0 + x1", XT)
        assert is_homogeneous(p, ["x0", "x1", "x2"])
        assert not is_homogeneous(p)


class TestSubstitute:
    def test_first_component_of_sigma_squared(self):
        out = substitute(P("x0*x1"), {"x0": P("x1*x2"), "x1": P("x0*x2")})
        assert out == P("x0*x1*x2^2")

    def test_identity_bindings(self):
        p = P("x0^3 - 2*x1*x2 + 5")
        assert substitute(p, {v: MultiPoly.var(X, v) for v in X.names}) == p

    def test_specialize_parameter(self):
        p = P("s^2*x0^2 + (1 + s^3)*x0*x2 + s*x2^2", XS)
        out = substitute(p, {"s": 0}, X)
        assert out == P("x0*x2")

    def test_rational_values(self):
        assert P("x0^2 + x1").evaluate([Fraction(1, 2), 3, 0]) == Fraction(13, 4)


class TestGcd:
    def test_common_linear_factor(self):
        g = gcd(P("x0^2 - x1^2"), P("(x0 + x1)^2"))
        assert g == P("x0 + x1")
        assert divide_exact(P("x0^2 - x1^2"), g) == P("x0 - x1")

    def test_gcd_with_itself_is_normalized(self):
        p = P("-6*x0*x1 + 4*x2^2")
        g = gcd(p, p)
        assert g == P("3*x0*x1 - 2*x2^2") or g == P("-3*x0*x1 + 2*x2^2")
        assert divide_exact(p, g).is_constant()

    def test_nodal_components(self):
        from cremona.family import nodal_cubic_family

        w = nodal_cubic_family(2)
        g = gcd_many(w.components)
        assert g == parse_poly("s^3*(x0 + s*x2)", w.ctx)

    def test_planted_factor(self):
        g = P("x0 + x1")
        assert gcd_many([P("x0") * g, P("x1") * g, P("x2") * g]) == g

    def test_coprime_coordinates(self):
        assert gcd_many([P("x0"), P("x1"), P("x2")]) == MultiPoly.one(X)

    def test_single_input(self):
        assert gcd_many([P("-2*x0 - 4*x1")]) == P("x0 + 2*x1")

    def test_empty_list(self):
        with pytest.raises(EmptyList):
            gcd_many([])

    def test_zero_inputs(self):
        z = MultiPoly.zero(X)
        assert gcd(z, P("2*x1")) == P("x1")
        assert gcd(z, z) == z

    def test_rational_coefficients(self):
        g = gcd(P("1/2*x0^2 - 1/2*x1^2"), P("3/7*x0 + 3/7*x1"))
        assert g == P("x0 + x1")

    def test_dense_four_variables(self):
        ctx = VariableContext.projective(3)
        g = parse_poly("x0^2 - 3*x1*x3 + 2*x2^2", ctx)
        a = parse_poly("x0^3 + x1^2*x2 - 5*x3^3 + x0*x1*x3", ctx)
        b = parse_poly("2*x0*x2^2 - x1^3 + 4*x2*x3^2 - x3^3", ctx)
        assert gcd(a * g, b * g) == g


class TestDivideExact:
    def test_basic(self):
        assert divide_exact(P("x0^2 - x1^2"), P("x0 + x1")) == P("x0 - x1")

    def test_by_one(self):
        p = P("3*x0*x2 - 1/5")
        assert divide_exact(p, MultiPoly.one(X)) == p

    def test_nodal_cofactor(self):
        f = P("s^3*(s^2*x0 + x2)*(x0 + s*x2)", XS)
        assert divide_exact(f, P("s^3*(x0 + s*x2)", XS)) == P("s^2*x0 + x2", XS)

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            divide_exact(P("x0^2 + x1^2"), P("x0 + x1"))

    def test_rational_divisor(self):
        assert divide_exact(P("x0^2 - x1^2"), P("1/2*x0 + 1/2*x1")) == P("2*x0 - 2*x1")


class TestText:
    def test_round_trip(self):
        for text in ["-3/2*x0^2*x1 - x2 + 5", "x0", "0", "-1", "x0^2*x2 + 1/3*x1^3"]:
            p = P(text)
            assert format_poly(p) == text
            assert P(format_poly(p)) == p

    def test_graded_order(self):
        assert format_poly(P("1 + x2 + x0^2")) == "x0^2 + x2 + 1"

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as err:
            P("x0 + * x1")
        assert err.value.line == 1 and err.value.column == 6

    def test_multiline_position(self):
        with pytest.raises(ParseError) as err:
            P("x0 +\n x1 $")
        assert err.value.line == 2

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            P("y7")

    def test_inferred_context(self):
        p = parse_poly("x10*x2 + x1")
        assert p.ctx.names == ("x1", "x2", "x10")

    def test_bad_names(self):
        from cremona.errors import ValidationError

        with pytest.raises(ValidationError):
            VariableContext(("x0", "x0"))
        with pytest.raises(ValidationError):
            VariableContext(("X0",))
