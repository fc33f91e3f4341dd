"""Pure-numpy versions of the compiled kernels.

numpy's pairwise summation gives accuracy comparable to the Kahan loops in
the compiled module; semantics match exactly up to rounding.
"""

import numpy as np

BACKEND = "numpy"


def dirichlet_sum(logn, coeff, s):
    """Sum of coeff[i] * exp(-s * logn[i])."""
    if len(logn) == 0:
        return 0j
    return complex(np.sum(np.asarray(coeff) * np.exp(-s * np.asarray(logn))))


def hurwitz_main_sum(a, n_terms, s, deriv):
    """Sum over n < n_terms of (-log(n+a))^deriv * (n+a)^(-s)."""
    if n_terms <= 0:
        return 0j
    u = np.log(np.arange(n_terms, dtype=np.float64) + a)
    terms = np.exp(-s * u)
    if deriv:
        terms = terms * (-u) ** deriv
    return complex(np.sum(terms))
