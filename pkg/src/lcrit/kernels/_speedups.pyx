# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot loops: weighted Dirichlet sums and Euler-Maclaurin main sums.

Both use Kahan-compensated accumulation on the real and imaginary parts;
prime sums near sigma = 1 involve ~10^6 terms of size ~1/p and lose digits
under naive left-to-right accumulation.
"""

from libc.math cimport cos, exp, log, sin

BACKEND = "cython"


def dirichlet_sum(const double[::1] logn, const double complex[::1] coeff,
                  double complex s):
    """Sum of coeff[i] * exp(-s * logn[i]) with compensated accumulation."""
    cdef double sig = s.real
    cdef double t = s.imag
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0
    cdef double r, ph, er, ei, vr, vi, yr, yi, tr, ti
    cdef Py_ssize_t i, n = logn.shape[0]
    for i in range(n):
        r = exp(-sig * logn[i])
        ph = -t * logn[i]
        er = r * cos(ph)
        ei = r * sin(ph)
        vr = er * coeff[i].real - ei * coeff[i].imag
        vi = er * coeff[i].imag + ei * coeff[i].real
        yr = vr - cr
        tr = sr + yr
        cr = (tr - sr) - yr
        sr = tr
        yi = vi - ci
        ti = si + yi
        ci = (ti - si) - yi
        si = ti
    return complex(sr, si)


def hurwitz_main_sum(double a, long n_terms, double complex s, int deriv):
    """Sum over n < n_terms of (-log(n+a))^deriv * (n+a)^(-s), compensated."""
    cdef double sig = s.real
    cdef double t = s.imag
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0
    cdef double u, w, r, ph, vr, vi, yr, yi, tr, ti
    cdef Py_ssize_t n
    cdef int d
    for n in range(n_terms):
        u = log(n + a)
        r = exp(-sig * u)
        w = 1.0
        for d in range(deriv):
            w *= -u
        r *= w
        ph = -t * u
        vr = r * cos(ph)
        vi = r * sin(ph)
        yr = vr - cr
        tr = sr + yr
        cr = (tr - sr) - yr
        sr = tr
        yi = vi - ci
        ti = si + yi
        ci = (ti - si) - yi
        si = ti
    return complex(sr, si)
