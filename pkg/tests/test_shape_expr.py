import numpy as np
import pytest

from irsbeam.shape_expr import ShapeSyntaxError, parse_shape

beta = np.array([0.5, 1.0, 1.5])


@pytest.mark.parametrize("text, expected", [
    ("beta", beta),
    ("β", beta),
    ("2·beta^2 + 1", 2 * beta ** 2 + 1),
    ("(b - 0.25) ** 2", (beta - 0.25) ** 2),
    ("-beta + 3", 3 - beta),
    ("1/beta", 1 / beta),
    ("4", np.full(3, 4.0)),
])
def test_grammar(text, expected):
    np.testing.assert_allclose(parse_shape(text)(beta), expected)


@pytest.mark.parametrize("text", ["sin(beta)", "__import__('os')", "beta.real", "x", "",
                                  "beta if 1 else 2", "[beta]", "True", "beta +"])
def test_rejects_everything_else(text):
    with pytest.raises(ShapeSyntaxError):
        parse_shape(text)
