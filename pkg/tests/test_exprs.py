"""Parser / evaluator / symbolic-derivative tests for closed-form input."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatfront.exprs import (Expression, ExprError, INFINITY, differentiate,
                             evaluate, parse)


CASES = [
    ("z", lambda z: z),
    ("z^2 - 3*z + 1", lambda z: z ** 2 - 3 * z + 1),
    ("1/z^3", lambda z: 1 / z ** 3),
    ("-z^-5*exp(2*z^3)", lambda z: -z ** -5 * np.exp(2 * z ** 3)),
    ("(1+z^2)^2/(2*z)", lambda z: (1 + z ** 2) ** 2 / (2 * z)),
    ("i*z + 2", lambda z: 1j * z + 2),
    ("sqrt(1+z)", lambda z: np.sqrt(1 + z)),
    ("log(1+z)", lambda z: np.log(1 + z)),
    ("z^(1/2)", lambda z: z ** 0.5),
]


@pytest.mark.parametrize("text,fn", CASES, ids=[c[0] for c in CASES])
def test_evaluate_matches_reference(text, fn):
    e = Expression(text)
    for z in (0.3, 0.2 + 0.1j, 0.05 - 0.4j):
        assert complex(e(z)) == pytest.approx(fn(z))


@pytest.mark.parametrize("text,fn", CASES, ids=[c[0] for c in CASES])
def test_derivative_matches_finite_difference(text, fn):
    d = Expression(text).derivative()
    z = 0.31 + 0.17j
    eps = 1e-6
    fd = (fn(z + eps) - fn(z - eps)) / (2 * eps)
    assert complex(d(z)) == pytest.approx(fd, rel=1e-5, abs=1e-5)


@pytest.mark.parametrize("text,fn", CASES[:6], ids=[c[0] for c in CASES[:6]])
def test_series_expansion_matches_evaluation(text, fn):
    e = Expression(text)
    for point in (0.0, 0.5):
        s = e.series_at(point, 24)
        w = 1e-3 * np.exp(0.7j)
        assert complex(s.evaluate(w)) == pytest.approx(
            fn(point + w), rel=1e-9, abs=1e-12)


def test_series_at_infinity_uses_reciprocal_chart():
    s = Expression("z^2 + 1").series_at(INFINITY, 12)
    w = 1e-2
    assert complex(s.evaluate(w)) == pytest.approx(1 / w ** 2 + 1)


def test_rational_exponents_are_exact():
    s = Expression("z^(3/2)").series_at(0.0, 8)
    from fractions import Fraction
    assert s.order() == Fraction(3, 2)


@pytest.mark.parametrize("bad", [
    "z +", "((z)", "z^pi", "q + 1", "z^z", "2^^3", "", "exp()",
])
def test_malformed_input_raises_expr_error(bad):
    with pytest.raises(ExprError):
        Expression(bad)(0.5)


@settings(max_examples=120, deadline=None)
@given(st.text(alphabet="zi+-*/^()0123456789. explogsqrt", max_size=24))
def test_parser_totality(text):
    # The parser must either produce an AST or raise ExprError — never
    # crash with an unrelated exception.
    try:
        parse(text)
    except ExprError:
        pass


def test_differentiate_is_purely_symbolic():
    node = parse("z^3*exp(z)")
    d = differentiate(node)
    z = 0.4 + 0.2j
    expect = (3 * z ** 2 + z ** 3) * np.exp(z)
    assert complex(evaluate(d, z)) == pytest.approx(expect)
