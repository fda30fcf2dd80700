"""Log-domain factorials and binomials for stable large-j prefactors."""

import numpy as np
from scipy.special import gammaln


def ln_factorial(n):
    """log(n!) for nonnegative integer scalars or arrays."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def ln_binomial(n, k):
    """log C(n, k) for 0 <= k <= n, elementwise."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
