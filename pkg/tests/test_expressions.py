import math
import random

import numpy as np
import pytest

from caustics import expressions as ex


def ev(text, t):
    return ex.evaluate(ex.parse_expression(text), t)


def test_basic_evaluation():
    assert ev("cos(t)+t*sin(t)", math.pi) == pytest.approx(-1.0, abs=1e-15)
    assert ev("2+3*t^2", 1.0) == pytest.approx(5.0)
    assert ev("pi", 0.0) == math.pi
    assert ev("e", 0.0) == math.e
    assert ev("abs(0-t)", 2.5) == 2.5


def test_precedence_and_associativity():
    assert ev("2^3^2", 0.0) == 512.0  # right-assoc
    assert ev("2-3-4", 0.0) == -5.0  # left-assoc
    assert ev("-t^2", 3.0) == -9.0  # unary minus binds looser than ^
    assert ev("(0-t)^2", 3.0) == 9.0
    assert ev("2^-2", 0.0) == 0.25
    assert ev("1+2*3", 0.0) == 7.0
    assert ev("(1+2)*3", 0.0) == 9.0


def test_syntax_error_offsets():
    with pytest.raises(ex.ExpressionError) as err:
        ex.parse_expression("sin()")
    assert err.value.offset == 4
    assert "expected expression" in str(err.value)

    with pytest.raises(ex.ExpressionError) as err:
        ex.parse_expression("2+*3")
    assert err.value.offset == 2

    with pytest.raises(ex.ExpressionError) as err:
        ex.parse_expression("cos(t")
    assert "')'" in str(err.value)

    with pytest.raises(ex.ExpressionError) as err:
        ex.parse_expression("foo(t)")
    assert "unknown identifier" in str(err.value)


def test_evaluation_domain_errors():
    with pytest.raises(ex.EvalError):
        ev("1/(t-1)", 1.0)
    with pytest.raises(ex.EvalError):
        ev("ln(0-t)", 1.0)
    with pytest.raises(ex.EvalError):
        ev("sqrt(0-t)", 4.0)
    with pytest.raises(ex.EvalError):
        ev("(0-2)^t", 0.5)
    # but fine elsewhere on the domain
    assert ev("1/(t-1)", 3.0) == 0.5
    assert ev("ln(t)", math.e) == pytest.approx(1.0)


def test_array_evaluation():
    t = np.linspace(0.1, 2.0, 7)
    out = ev("t^2+sin(t)", t)
    assert np.allclose(out, t**2 + np.sin(t))


def test_derivative_matches_finite_difference():
    texts = [
        "cos(t)+t*sin(t)",
        "t^3-2*t",
        "exp(0-t^2/2)",
        "ln(t+2)",
        "sqrt(t+1.5)",
        "tan(t/3)",
        "t^2*cos(2*t)",
    ]
    h = 1e-6
    for text in texts:
        tree = ex.parse_expression(text)
        dtree = ex.derivative(tree)
        for t in (0.3, 0.9, 1.7):
            fd = (ex.evaluate(tree, t + h) - ex.evaluate(tree, t - h)) / (2 * h)
            assert ex.evaluate(dtree, t) == pytest.approx(fd, rel=1e-7, abs=1e-7)


def test_derivative_power_rule_negative_base():
    # constant exponent must use the power rule so negative bases work
    dtree = ex.derivative(ex.parse_expression("t^3"))
    assert ex.evaluate(dtree, -2.0) == pytest.approx(12.0)


def _random_tree(rng, depth):
    if depth == 0:
        return rng.choice(
            [ex.Num(round(rng.uniform(0.1, 5.0), 3)), ex.Var("t"), ex.Const("pi")]
        )
    kind = rng.random()
    if kind < 0.55:
        op = rng.choice("+-*/")
        return ex.BinOp(op, _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))
    if kind < 0.65:
        return ex.BinOp("^", _random_tree(rng, depth - 1), ex.Num(float(rng.randint(1, 3))))
    if kind < 0.8:
        return ex.Neg(_random_tree(rng, depth - 1))
    fn = rng.choice(["sin", "cos", "exp"])
    return ex.Call(fn, _random_tree(rng, depth - 1))


def test_pretty_print_round_trip_idempotent():
    rng = random.Random(42)
    for _ in range(200):
        tree = _random_tree(rng, rng.randint(1, 4))
        text1 = ex.to_text(tree)
        text2 = ex.to_text(ex.parse_expression(text1))
        assert text1 == text2
        # values agree at a sample point (random trees may divide by zero)
        try:
            want = ex.evaluate(tree, 0.7)
        except (ex.EvalError, OverflowError):
            continue
        assert ex.evaluate(ex.parse_expression(text2), 0.7) == pytest.approx(
            want, rel=1e-12, abs=1e-12
        )
