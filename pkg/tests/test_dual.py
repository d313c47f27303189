import math

import numpy as np
import pytest

from curvedttw import dual
from curvedttw.dual import Dual


def test_seeding_gives_unit_directions():
    x, y = Dual.variables(2.0, 3.0)
    assert np.array_equal(x.d, [1.0, 0.0])
    assert np.array_equal(y.d, [0.0, 1.0])


def test_product_quotient_rule():
    x, y = Dual.variables(2.0, 3.0)
    f = x * y / (x + y) - 1.0 / x
    assert f.v == pytest.approx(6 / 5 - 0.5)
    # d/dx = y^2/(x+y)^2 + 1/x^2, d/dy = x^2/(x+y)^2
    assert f.d == pytest.approx([9 / 25 + 0.25, 4 / 25])


def test_elementary_functions_chain_rule():
    (x,) = Dual.variables(0.7)
    f = dual.sin(x) * dual.cosh(2 * x) + dual.sqrt(x) ** 3 - dual.exp(-x)
    expected = (math.cos(0.7) * math.cosh(1.4) + 2 * math.sin(0.7) * math.sinh(1.4)
                + 1.5 * math.sqrt(0.7) + math.exp(-0.7))
    assert f.d[0] == pytest.approx(expected, rel=1e-14)


def test_array_valued_duals_and_where():
    xs = np.array([0.1, 0.2, 0.3])
    (x,) = Dual.variables(xs)
    f = dual.where(xs > 0.15, x * x, -x)
    assert np.allclose(f.v, [-0.1, 0.04, 0.09])
    assert np.allclose(f.d[0], [-1.0, 0.4, 0.6])


def test_numpy_array_on_left_defers_to_dual():
    (x,) = Dual.variables(np.array([1.0, 2.0]))
    f = np.array([3.0, 4.0]) * x
    assert isinstance(f, Dual)
    assert np.allclose(f.d[0], [3.0, 4.0])


def test_plain_numbers_pass_through():
    assert dual.sin(0.5) == math.sin(0.5)
    assert np.allclose(dual.cos(np.array([0.0, math.pi])), [1.0, -1.0])
