import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expressions import (
    Const,
    Div,
    DomainError,
    ExpressionError,
    I,
    Log,
    Mul,
    NonFiniteError,
    Pow,
    Z,
    constant_fold,
    differentiate,
    evaluate,
    evaluate_lenient,
    evaluate_scalar,
    parse,
    substitute,
    to_source,
)

SAMPLE_EXPRESSIONS = [
    "z^3 - 2*z",
    "exp(i*z)/(z + i)",
    "log(z)*sqrt(z)",
    "(z^2 - 1)/(2*i*z)",
    "z^(-2) + pi",
    "(1 + i*pi + z^2 - 2*log(z))/(4*i)",
]

halfplane_points = st.builds(
    complex,
    st.floats(min_value=-2, max_value=2),
    st.floats(min_value=0.5, max_value=2),
)


def test_evaluate_rational_at_i():
    assert evaluate(parse("(z^2 - 1)/(2*i*z)"), 1j) == pytest.approx(1)


def test_evaluate_principal_log():
    assert evaluate(parse("log(z)"), 1j) == pytest.approx(1j * math.pi / 2)


def test_evaluate_returns_array_for_array_input():
    values = evaluate(parse("z^2"), np.array([1j, 2, 1 + 1j]))
    assert isinstance(values, np.ndarray)
    np.testing.assert_allclose(values, [-1, 4, 2j])


def test_evaluate_scalar_returns_complex():
    assert isinstance(evaluate_scalar(Z, 2), complex)


def test_division_by_zero_is_a_domain_error():
    with pytest.raises(DomainError):
        evaluate(parse("1/z"), 0)


def test_log_on_branch_cut_is_a_domain_error():
    with pytest.raises(DomainError):
        evaluate(parse("log(z)"), -1)
    with pytest.raises(DomainError):
        evaluate(parse("log(z)"), 0)


def test_sqrt_cut_excludes_zero():
    assert evaluate(parse("sqrt(z)"), 0) == 0
    with pytest.raises(DomainError):
        evaluate(parse("sqrt(z)"), -4)


def test_negative_power_of_zero_is_a_domain_error():
    with pytest.raises(DomainError):
        evaluate(parse("z^(-1)"), 0)


def test_overflow_is_non_finite():
    with pytest.raises(NonFiniteError):
        evaluate(parse("exp(z)"), 1000)


def test_non_finite_input_is_rejected():
    with pytest.raises(NonFiniteError):
        evaluate(Z, complex(math.nan, 0))


def test_lenient_evaluation_marks_failed_points():
    values = evaluate_lenient(parse("1/z"), np.array([0, 2]))
    assert np.isnan(values[0])
    assert values[1] == pytest.approx(0.5)


def test_constants_must_be_finite():
    with pytest.raises(NonFiniteError):
        Const(math.inf)


def test_powers_must_be_integers():
    with pytest.raises(ExpressionError):
        Pow(Z, 2.5)


def test_derivative_of_cayley_inverse_at_i():
    dq = differentiate(parse("(z - i)/(z + i)"))
    assert evaluate(dq, 1j) == pytest.approx(-0.5j)


def test_derivative_of_extremal_potential_is_a():
    m = parse("(1 + i*pi + z^2 - 2*log(z))/(4*i)")
    a = parse("(z^2 - 1)/(2*i*z)")
    dm = differentiate(m)
    assert evaluate(dm, 1j) == pytest.approx(1)
    points = np.array([0.3 + 0.7j, -2 + 1j, 1.5 + 0.2j])
    np.testing.assert_allclose(evaluate(dm, points), evaluate(a, points), rtol=1e-13)


def test_derivative_of_constant_is_zero():
    assert differentiate(parse("2*pi + i")) == Const(0)


def test_fold_collapses_constant_products():
    folded = constant_fold(parse("2*3*z"))
    assert folded == Mul(Const(6), Z)
    assert to_source(folded) == "6.0*z"


def test_fold_drops_additive_zero():
    assert constant_fold(parse("z + 0")) == Z


def test_fold_divides_constants():
    assert constant_fold(Div(Const(1), Mul(Const(4), I))) == Const(-0.25j)


def test_fold_keeps_constants_on_a_branch_cut():
    assert constant_fold(parse("log(0)")) == Log(Const(0))
    assert constant_fold(parse("log(1)")) == Const(0)


def test_fold_of_zeroth_power():
    assert constant_fold(parse("(z + 1)^0")) == Const(1)


@pytest.mark.parametrize("text", ["1e200*1e200*z", "10^400 + z", "1e308 + 1e308 - z"])
def test_fold_keeps_overflowing_constants_unfolded(text):
    e = parse(text)
    assert constant_fold(e) == e


def test_fold_keeps_an_overflowing_reciprocal():
    e = parse("z/1e-320/1e-10")
    folded = constant_fold(e)
    assert "1e-320" in to_source(folded)
    expected = evaluate_scalar(e, 1e-300)
    assert evaluate_scalar(folded, 1e-300) == pytest.approx(expected, rel=1e-9)


def test_derivative_with_overflowing_constants_does_not_raise():
    derivative = differentiate(parse("1e200*1e200*z^2"))
    assert "z" in to_source(derivative)


def test_substitute_composes():
    composed = substitute(parse("z^2"), parse("z + 1"))
    assert evaluate(composed, 2) == pytest.approx(9)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-z^2", "-z^2"),
        ("(-z)^2", "(-z)^2"),
        ("z^-1", "z^(-1)"),
        ("1 - (z - 1)", "1.0 - (z - 1.0)"),
        ("2*i*z", "2.0*i*z"),
        ("z*-z", "z*-z"),
    ],
)
def test_printing(text, expected):
    assert to_source(parse(text)) == expected


@pytest.mark.parametrize("text", SAMPLE_EXPRESSIONS)
@settings(max_examples=50, deadline=None)
@given(z=halfplane_points)
def test_derivative_matches_central_difference(text, z):
    e = parse(text)
    h = 1e-6
    numeric = (evaluate(e, z + h) - evaluate(e, z - h)) / (2 * h)
    exact = evaluate(differentiate(e), z)
    assert abs(numeric - exact) <= 1e-5 * (1 + abs(exact))


@settings(max_examples=50, deadline=None)
@given(
    z=halfplane_points,
    c=st.builds(complex, st.floats(-3, 3), st.floats(-3, 3)),
)
def test_derivative_is_linear(z, c):
    f, g = parse("exp(i*z)/(z + i)"), parse("log(z)*sqrt(z)")
    combined = evaluate(differentiate(Const(c) * f + g), z)
    expected = c * evaluate(differentiate(f), z) + evaluate(differentiate(g), z)
    assert combined == pytest.approx(expected, rel=1e-12, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(z=halfplane_points)
def test_chain_rule_through_substitution(z):
    outer, inner = parse("exp(z)*sqrt(z + 4) + z^3"), parse("(z - i)/(z + 2*i)")
    lhs = evaluate(differentiate(substitute(outer, inner)), z)
    rhs = evaluate(substitute(differentiate(outer), inner), z) * evaluate(differentiate(inner), z)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(z=halfplane_points)
def test_log_is_conjugate_symmetric_off_the_cut(z):
    log = parse("log(z)")
    assert evaluate(log, z.conjugate()) == pytest.approx(evaluate(log, z).conjugate())
    assert evaluate(log, z) == pytest.approx(cmath.log(z))
