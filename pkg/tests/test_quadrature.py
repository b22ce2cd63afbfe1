import math

import pytest
from scipy.integrate import quad

from herzlab.quadrature import adaptive_simpson


class TestAdaptiveSimpson:
    def test_polynomial_exact(self):
        got = adaptive_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0)
        assert got == pytest.approx(0.0, abs=1e-13)

    def test_smooth_vs_library(self):
        for fun, a, b in (
            (math.exp, 0.0, 3.0),
            (lambda x: math.sin(7 * x) + 2.0, 0.0, 5.0),
            (lambda x: 1.0 / (1.0 + x * x), -4.0, 4.0),
        ):
            expected, _ = quad(fun, a, b, epsabs=1e-13, epsrel=1e-13)
            assert adaptive_simpson(fun, a, b, rel_tol=1e-11) == pytest.approx(
                expected, rel=1e-9
            )

    def test_power_law_near_zero(self):
        # integrable singularity in the derivative, as in the norm integrands
        got = adaptive_simpson(lambda x: x**0.25, 1e-6, 1.0, rel_tol=1e-11)
        expected = (1.0 - 1e-6 ** 1.25) / 1.25
        assert got == pytest.approx(expected, rel=1e-9)

    def test_zero_function(self):
        assert adaptive_simpson(lambda x: 0.0, 0.0, 1.0) == 0.0

    def test_empty_interval(self):
        assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0

    def test_bad_interval_rejected(self):
        with pytest.raises(ValueError):
            adaptive_simpson(math.sin, 1.0, 0.0)

    def test_kinked_integrand(self):
        got = adaptive_simpson(lambda x: min(x, 1.0 - x), 0.0, 1.0, rel_tol=1e-11)
        assert got == pytest.approx(0.25, rel=1e-9)
