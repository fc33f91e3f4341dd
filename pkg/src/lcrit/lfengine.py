"""Dirichlet L-functions via Euler-Maclaurin Hurwitz zeta.

The core primitive is the *regularized* Hurwitz zeta R(s, a) = zeta(s, a) -
1/(s-1), analytic at s = 1, with derivative orders 0..2.  L(s, chi) for
non-principal chi is then q^{-s} sum_a chi(a) R(s, a/q): the pole parts
cancel exactly because sum_a chi(a) = 0, so evaluation at s = 1 is exact
rather than a cancellation of two large terms.

On top of that sit a branch-tracked log L (continuous in sigma from a
far-right anchor where the Euler product makes the principal branch
unambiguous) and the truncated prime-sum approximations to log L and L'/L.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp
import numpy as np
from sympy import bernoulli

from . import kernels
from .characters import Character


class ZetaPoleError(ValueError):
    """Raised when an evaluation lands on the pole at s = 1."""


class ComplexEval(NamedTuple):
    """A complex value with a heuristic radius of numerical uncertainty."""

    value: complex
    error_radius: float


@dataclass(frozen=True)
class EvalConfig:
    precision_bits: int = 128
    euler_maclaurin_cutoff: int = 50
    bernoulli_terms: int = 16
    branch_anchor_sigma: float = 6.0

    def __post_init__(self):
        if self.euler_maclaurin_cutoff < 10:
            raise ValueError("euler_maclaurin_cutoff must be >= 10")
        if self.bernoulli_terms < 2:
            raise ValueError("bernoulli_terms must be >= 2")
        if self.branch_anchor_sigma < 3:
            raise ValueError("branch_anchor_sigma must be >= 3")


DEFAULT_CONFIG = EvalConfig()

_BERN = [float(bernoulli(2 * k)) for k in range(0, 64)]  # B_0, B_2, B_4, ...
_FACT = [math.factorial(2 * k) for k in range(0, 64)]


def _cutoff(t: float, cfg: EvalConfig) -> int:
    return max(cfg.euler_maclaurin_cutoff, int(abs(t) / 3) + 20)


def _hurwitz_reg(s: complex, a: float, cfg: EvalConfig, deriv: int = 0):
    """R(s, a) = zeta(s, a) - 1/(s-1) and its first two s-derivatives.

    Euler-Maclaurin with N main terms and M Bernoulli corrections:

      zeta(s,a) = sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
                  + sum_{k=1..M} B_{2k}/(2k)! * P_k(s) * (N+a)^{-(s+2k-1)}

    with P_k(s) = s(s+1)...(s+2k-2).  The pole term (N+a)^{1-s}/(s-1) minus
    1/(s-1) is expanded in a series in eps = 1 - s near s = 1 so that R and
    its derivatives stay finite there.
    """
    if deriv not in (0, 1, 2):
        raise ValueError("deriv must be 0, 1, or 2")
    s = complex(s)
    N = _cutoff(s.imag, cfg)
    M = cfg.bernoulli_terms

    main = kernels.hurwitz_main_sum(float(a), N, s, deriv)

    u = math.log(N + a)
    base = cmath.exp(-s * u)  # (N+a)^{-s}

    # regularized pole part: (N+a)^{1-s}/(s-1) - 1/(s-1)
    eps = 1.0 - s
    if abs(eps) < 0.25:
        # series in eps: R1 = -sum_{j>=1} eps^{j-1} u^j / j!
        r1 = 0j
        r1p = 0j
        r1pp = 0j
        epspow = 1.0 + 0j  # eps^{j-1}
        ujfac = u  # u^j / j!
        j = 1
        while True:
            r1 -= epspow * ujfac
            if abs(epspow * ujfac) < 1e-30 and j > 3:
                break
            epspow *= eps
            j += 1
            ujfac *= u / j
            if j > 200:
                break
        # each derivative gets its own series (no dividing by eps)
        if deriv >= 1:
            r1p = 0j
            epspow = 1.0 + 0j  # eps^{j-2}
            ujfac = u * u / 2.0  # u^j / j!
            j = 2
            while True:
                r1p += (j - 1) * epspow * ujfac
                if abs(epspow * ujfac * j) < 1e-30 and j > 4:
                    break
                epspow *= eps
                j += 1
                ujfac *= u / j
                if j > 200:
                    break
        if deriv >= 2:
            r1pp = 0j
            epspow = 1.0 + 0j  # eps^{j-3}
            ujfac = u**3 / 6.0  # u^j / j!
            j = 3
            while True:
                r1pp -= (j - 1) * (j - 2) * epspow * ujfac
                if abs(epspow * ujfac * j * j) < 1e-30 and j > 5:
                    break
                epspow *= eps
                j += 1
                ujfac *= u / j
                if j > 200:
                    break
    else:
        sm1 = s - 1.0
        term1 = cmath.exp(-sm1 * u) / sm1  # (N+a)^{1-s}/(s-1)
        r1 = term1 - 1.0 / sm1
        g = -u - 1.0 / sm1
        r1p = term1 * g + 1.0 / sm1**2
        r1pp = term1 * (g * g + 1.0 / sm1**2) - 2.0 / sm1**3

    # half term (N+a)^{-s}/2 and its derivatives
    half = 0.5 * base
    halfp = -u * half
    halfpp = u * u * half

    # Bernoulli corrections
    tail = 0j
    tailp = 0j
    tailpp = 0j
    last = 0.0
    for k in range(1, M + 1):
        bk = _BERN[k] / _FACT[k]
        # P_k(s) = prod_{j=0}^{2k-2} (s+j); h1 = sum 1/(s+j); h2 = sum 1/(s+j)^2
        P = 1.0 + 0j
        h1 = 0j
        h2 = 0j
        for j in range(2 * k - 1):
            sj = s + j
            P *= sj
            h1 += 1.0 / sj
            h2 += 1.0 / sj**2
        e = cmath.exp(-(s + 2 * k - 1) * u)
        t0 = bk * P * e
        tail += t0
        if deriv >= 1:
            tailp += t0 * (h1 - u)
        if deriv >= 2:
            tailpp += t0 * ((h1 - u) ** 2 - h2)
        last = abs(t0)

    err = 2.0 * last + 1e-15 * (abs(main) + abs(r1) + N * 1e-16)

    if deriv == 0:
        return ComplexEval(main + r1 + half + tail, err)
    if deriv == 1:
        return ComplexEval(main + r1p + halfp + tailp, err * (u + 1))
    return ComplexEval(main + r1pp + halfpp + tailpp, err * (u + 1) ** 2)


def hurwitz_regularized(s: complex, a: float, cfg: EvalConfig = DEFAULT_CONFIG,
                        deriv: int = 0) -> ComplexEval:
    """Public wrapper for R(s, a) = zeta(s, a) - 1/(s-1), deriv in {0, 1, 2}."""
    if not 0 < a <= 1:
        raise ValueError("need 0 < a <= 1")
    return _hurwitz_reg(s, a, cfg, deriv)


# ---------------------------------------------------------------------------
# Riemann zeta and derivatives


def zeta(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    if abs(s - 1.0) < 1e-12:
        raise ZetaPoleError("zeta has a pole at s = 1")
    r = _hurwitz_reg(s, 1.0, cfg, 0)
    return ComplexEval(r.value + 1.0 / (s - 1.0), r.error_radius)


def zeta_prime(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    if abs(s - 1.0) < 1e-12:
        raise ZetaPoleError("zeta' has a pole at s = 1")
    r = _hurwitz_reg(s, 1.0, cfg, 1)
    return ComplexEval(r.value - 1.0 / (s - 1.0) ** 2, r.error_radius)


def zeta_second(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    if abs(s - 1.0) < 1e-12:
        raise ZetaPoleError("zeta'' has a pole at s = 1")
    r = _hurwitz_reg(s, 1.0, cfg, 2)
    return ComplexEval(r.value + 2.0 / (s - 1.0) ** 3, r.error_radius)


# ---------------------------------------------------------------------------
# Dirichlet L-functions (non-principal only)


def _check_char(chr: Character) -> None:
    if chr.is_principal:
        raise ValueError("principal characters are not supported here")


def dirichlet_l(s: complex, chr: Character, cfg: EvalConfig = DEFAULT_CONFIG,
                deriv: int = 0) -> ComplexEval:
    """L(s, chi), L'(s, chi), or L''(s, chi) for non-principal chi.

    Entire for non-principal chi, so s = 1 is an ordinary point: the Hurwitz
    pole terms cancel exactly since sum_a chi(a) = 0.
    """
    _check_char(chr)
    q = chr.modulus
    coeff = chr.coeff_array()
    total = 0j
    err = 0.0
    for a in range(1, q + 1):
        c = coeff[a % q]
        if c == 0:
            continue
        r = _hurwitz_reg(s, a / q, cfg, deriv)
        total += c * r.value
        err += abs(c) * r.error_radius
        if deriv >= 1:
            # chain terms from d/ds of q^{-s} applied below
            pass
    lq = math.log(q)
    qs = cmath.exp(-complex(s) * lq)
    if deriv == 0:
        return ComplexEval(qs * total, abs(qs) * err)
    # need lower-order regularized sums for the product rule
    low = []
    for d in range(deriv):
        tot = 0j
        for a in range(1, q + 1):
            c = coeff[a % q]
            if c == 0:
                continue
            tot += c * _hurwitz_reg(s, a / q, cfg, d).value
        low.append(tot)
    if deriv == 1:
        val = qs * (total - lq * low[0])
        return ComplexEval(val, abs(qs) * (err + lq * 1e-14 * abs(low[0])))
    # deriv == 2
    val = qs * (total - 2 * lq * low[1] + lq * lq * low[0])
    return ComplexEval(val, abs(qs) * (err + lq * lq * 1e-14 * abs(low[0])))


def dirichlet_l_prime(s: complex, chr: Character,
                      cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    return dirichlet_l(s, chr, cfg, deriv=1)


def l_log_derivative(s: complex, chr: Character,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    """L'/L(s, chi), non-principal chi; raises on a zero of L."""
    lv = dirichlet_l(s, chr, cfg, 0)
    lp = dirichlet_l(s, chr, cfg, 1)
    if abs(lv.value) < 1e-14:
        raise ZetaPoleError("L vanishes at this point; L'/L undefined")
    val = lp.value / lv.value
    err = (lp.error_radius + abs(val) * lv.error_radius) / abs(lv.value)
    return ComplexEval(val, err)


# ---------------------------------------------------------------------------
# Branch-tracked log L


def log_l(s: complex, chr: Character, cfg: EvalConfig = DEFAULT_CONFIG) -> ComplexEval:
    """log L(s, chi), continuous along the horizontal path from the anchor.

    Anchored at sigma = branch_anchor_sigma (same t) where |L - 1| < 1/2 and
    the principal branch is unambiguous; the branch is transported left by
    accumulating principal logs of consecutive ratios, with step halving
    whenever a ratio increment looks too large to trust.
    """
    _check_char(chr)
    s = complex(s)
    sig0 = max(cfg.branch_anchor_sigma, s.real + 0.5)
    anchor = complex(sig0, s.imag)
    la = dirichlet_l(anchor, chr, cfg)
    if abs(la.value - 1.0) > 0.5:
        raise RuntimeError("anchor not in the principal-branch region")
    total = cmath.log(la.value)
    err = la.error_radius / abs(la.value)
    cur = anchor
    curval = la.value
    step = 0.25
    while cur.real > s.real + 1e-12:
        h = min(step, cur.real - s.real)
        nxt = complex(cur.real - h, s.imag)
        nv = dirichlet_l(nxt, chr, cfg)
        if abs(nv.value) < 1e-13:
            raise ZetaPoleError("path passes through a zero of L")
        d = cmath.log(nv.value / curval)
        if abs(d) > 1.0 and h > 1e-4:
            step = h / 2.0
            continue
        total += d
        err += nv.error_radius / abs(nv.value)
        cur = nxt
        curval = nv.value
        step = min(step * 1.5, 0.25)
    return ComplexEval(total, err)


# ---------------------------------------------------------------------------
# Truncated prime-sum approximations


def log_l_truncated(s: complex, chr: Character, T: float, tbl) -> complex:
    """sum_{1<n<=log^2 T} chi(n) Lambda(n) / (n^s log n)  (T >= 4)."""
    _check_char(chr)
    if T < 4:
        raise ValueError("need T >= 4 so that log^2 T >= 2")
    from . import primesums as ps

    x = math.log(T) ** 2
    w = chr.coeff_array()[tbl.primes % chr.modulus]
    return ps.lambda_weighted_sum(s, x, w, tbl, over_log=True)


def log_l_defect(s: complex, chr: Character, T: float, tbl,
                 cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|log L(s) - truncated prime sum| with the branch-tracked log."""
    exact = log_l(s, chr, cfg).value
    approx = log_l_truncated(s, chr, T, tbl)
    return abs(exact - approx)


def l_log_derivative_truncated(s: complex, chr: Character, x: float, tbl) -> complex:
    """-sum_{n<=x} chi(n) Lambda(n) / n^s, the truncated -L'/L... negated:

    returns the approximation to L'/L(s), i.e. -sum chi(n) Lambda(n) n^{-s}.
    """
    _check_char(chr)
    from . import primesums as ps

    w = chr.coeff_array()[tbl.primes % chr.modulus]
    return -ps.lambda_weighted_sum(s, x, w, tbl, over_log=False)


def l_log_derivative_defect(s: complex, chr: Character, x: float, tbl,
                            cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    exact = l_log_derivative(s, chr, cfg).value
    approx = l_log_derivative_truncated(s, chr, x, tbl)
    return abs(exact - approx)


# ---------------------------------------------------------------------------
# High-precision cross-checks (mpmath)


def zeta_mp(s, dps: int = 30):
    with mp.workdps(dps):
        return mp.zeta(mp.mpc(s))


def dirichlet_l_mp(s, chr: Character, dps: int = 30):
    """mpmath Hurwitz-based L, for cross-validation at modest heights."""
    _check_char(chr)
    q = chr.modulus
    with mp.workdps(dps):
        sm = mp.mpc(s)
        tot = mp.mpc(0)
        for a in range(1, q + 1):
            ang = chr.angle(a)
            if ang is None:
                continue
            c = mp.expjpi(2 * mp.mpf(ang.numerator) / ang.denominator)
            tot += c * mp.zeta(sm, mp.mpf(a) / q)
        return tot * mp.power(q, -sm)
