"""Standard normal distribution function, quantile and two-sided tail.

``normal_cdf`` evaluates ``0.5 * erfc(-x / sqrt(2))`` with the C library
complementary error function, which is accurate to a few ulps over the whole
real line (absolute error far below 1e-10 on [-8, 8]). ``normal_quantile`` uses
Wichura's AS241 rational approximation as shipped in :mod:`statistics`, with
relative error around 1e-16.
"""

import math
from statistics import NormalDist

from ._validation import check_finite

_STD = NormalDist()
_SQRT2 = math.sqrt(2.0)


def normal_cdf(x):
    x = check_finite(x)
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_quantile(p):
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return _STD.inv_cdf(p)


def two_sided_p_value(z):
    """``2 * (1 - Phi(|z|))``, evaluated as ``erfc(|z| / sqrt(2))`` to keep tail precision."""
    z = check_finite(z)
    return math.erfc(abs(z) / _SQRT2)
