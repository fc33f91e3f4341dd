"""Auxiliary Dirichlet polynomials with piecewise prime weights.

Four totally multiplicative weight schemes (B, C, Bprime, Cprime) assign each
prime a unimodular value depending on which of the ranges

    p <= x^eps | (x^eps, m x^eps] | (m x^eps, x^delta] | (x^delta, x]

it falls in (B and Bprime additionally special-case p | q).  The resulting
weighted Lambda-sums W_x, Z_x, M_x linearize near s = 1; the constants S_1
and S_2, the choice of the shift parameter m, and the two concentric circles
used in the root-localization argument all live here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import mpmath as mp
import numpy as np

from . import kernels
from . import lfengine
from . import primesums as ps
from .characters import Character

SCHEME_KINDS = ("B", "C", "Bprime", "Cprime")

# weight tables: (p | q entry or None, range1, range2, range3, range4)
# entries: +1, -1 scalars, or "chi" / "chibar" / "-chi" / "-chibar"
_TABLES = {
    "B": (1, "chibar", -1, 1, -1),
    "C": (None, 1, "-chi", "chi", "-chi"),
    "Bprime": (-1, "-chibar", 1, -1, 1),
    "Cprime": (None, -1, "chi", "-chi", "chi"),
}


@dataclass(frozen=True)
class SchemeParams:
    """Shared parameters (x, delta, m, chi) of a weight scheme.

    eps = 2 delta - 1; requires x^eps > q and log x > 2 log m / (1 - eps).
    """

    x: float
    delta: float
    m: float
    chr: Character
    s_const: complex = 0j  # the S constant this scheme was built around

    def __post_init__(self):
        if not 0.5 < self.delta < 1:
            raise ValueError("delta must lie in (1/2, 1)")
        if self.m <= 1:
            raise ValueError("m must exceed 1")
        eps = 2 * self.delta - 1
        if self.x**eps <= self.chr.modulus:
            raise ValueError("need x^eps > q")
        if math.log(self.x) <= 2 * math.log(self.m) / (1 - eps):
            raise ValueError("need log x > 2 log m / (1 - eps)")
        if self.chr.is_principal:
            raise ValueError("scheme requires a non-principal character")

    @property
    def epsilon(self) -> float:
        return 2 * self.delta - 1

    @property
    def curvature(self) -> float:
        """2 delta^2 - 1 - eps^2 (negative for all admissible delta)."""
        return 2 * self.delta**2 - 1 - self.epsilon**2

    def breakpoints(self) -> tuple[float, float, float, float]:
        e = self.epsilon
        return (self.x**e, self.m * self.x**e, self.x**self.delta, self.x)


@dataclass(frozen=True)
class WeightScheme:
    """One of the four weight schemes, bound to its parameters."""

    kind: str
    params: SchemeParams

    def __post_init__(self):
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"kind must be one of {SCHEME_KINDS}")

    def _chi_factor(self, tag, chi_p):
        if tag == "chi":
            return chi_p
        if tag == "-chi":
            return -chi_p
        if tag == "chibar":
            return np.conj(chi_p)
        if tag == "-chibar":
            return -np.conj(chi_p)
        return np.full_like(chi_p, complex(tag))

    def prime_weights(self, primes: np.ndarray) -> np.ndarray:
        """Weight at each prime (complex128), vectorized.

        Range boundaries are left-open, right-closed; primes beyond x get 0.
        """
        pr = self.params
        primes = np.asarray(primes, dtype=np.int64)
        pq, t1, t2, t3, t4 = _TABLES[self.kind]
        b1, b2, b3, b4 = pr.breakpoints()
        chi_p = pr.chr.coeff_array()[primes % pr.chr.modulus]
        pf = primes.astype(np.float64)
        out = np.zeros(len(primes), dtype=np.complex128)
        ranges = [
            (pf <= b1, t1),
            ((pf > b1) & (pf <= b2), t2),
            ((pf > b2) & (pf <= b3), t3),
            ((pf > b3) & (pf <= b4), t4),
        ]
        for mask, tag in ranges:
            vals = self._chi_factor(tag, chi_p)
            out[mask] = vals[mask]
        if pq is not None:
            divq = np.array([pr.chr.modulus % int(p) == 0 for p in primes])
            out[divq & (pf <= b4)] = complex(pq)
        return out

    def prime_weight_angle(self, p: int) -> Fraction:
        """Exact angle (in turns) of the weight at prime p <= x."""
        pr = self.params
        if p > pr.x:
            raise ValueError("p beyond the scheme range")
        pq, t1, t2, t3, t4 = _TABLES[self.kind]
        b1, b2, b3, b4 = pr.breakpoints()
        if pq is not None and pr.chr.modulus % p == 0:
            tag = pq
        elif p <= b1:
            tag = t1
        elif p <= b2:
            tag = t2
        elif p <= b3:
            tag = t3
        else:
            tag = t4
        if isinstance(tag, int):
            return Fraction(0) if tag == 1 else Fraction(1, 2)
        ang = pr.chr.angle(p)
        if ang is None:
            raise ValueError(f"weight vanishes at p={p} (p | q in a chi range)")
        if tag == "chi":
            return ang
        if tag == "-chi":
            return (ang + Fraction(1, 2)) % 1
        if tag == "chibar":
            return (-ang) % 1
        # "-chibar"
        return (Fraction(1, 2) - ang) % 1


# ---------------------------------------------------------------------------
# The constants S_1 and S_2


def s1_constant(chr: Character, tbl: ps.PrimeTable,
                cfg: lfengine.EvalConfig = lfengine.DEFAULT_CONFIG) -> complex:
    """S_1 = -L'/L(1, chibar) + sum_{p|q} log p / (p - 1)."""
    chibar = chr.conjugate()
    ll = lfengine.l_log_derivative(1.0 + 0j, chibar, cfg).value
    q = chr.modulus
    ram = sum(math.log(p) / (p - 1) for p in _prime_divisors(q))
    return -ll + ram


def s1_constant_series(chr: Character, x: float, tbl: ps.PrimeTable) -> complex:
    """Truncated Dirichlet-series route:
    sum_{n<=x} Lambda(n) chibar(n)/n + sum_{n<=x, (n,q)>1} Lambda(n)/n."""
    chibar = chr.conjugate()
    pp = tbl.prime_powers(x)
    chi = ps.weights_for_character(chibar, pp.n)
    inv = np.exp(-pp.logn)
    part1 = complex(np.sum(chi * pp.logp * inv))
    ramified = np.array([chr.modulus % int(p) == 0 for p in pp.p])
    part2 = float(np.sum((pp.logp * inv)[ramified]))
    return part1 + part2


def s2_constant(chr: Character, tbl: ps.PrimeTable,
                cfg: lfengine.EvalConfig = lfengine.DEFAULT_CONFIG,
                cutoff: float = 1e6) -> complex:
    """S_2 = L'/L(1, chibar) + 2 sum_p chibar(p)^2 log p / (p^2 - chibar(p)^2)
             - sum_{p|q} log p / (p + 1)."""
    chibar = chr.conjugate()
    ll = lfengine.l_log_derivative(1.0 + 0j, chibar, cfg).value
    p = tbl.primes_upto(min(cutoff, tbl.limit)).astype(np.float64)
    w = chibar.coeff_array()[tbl.primes_upto(min(cutoff, tbl.limit)) % chr.modulus]
    w2 = w * w
    series = complex(2 * np.sum(w2 * np.log(p) / (p * p - w2)))
    q = chr.modulus
    ram = sum(math.log(pq) / (pq + 1) for pq in _prime_divisors(q))
    return ll + series - ram


def s2_constant_series(chr: Character, x: float, tbl: ps.PrimeTable) -> complex:
    """Truncated route: sum_{n<=x} Lambda(n) a(n)/n with a(p) = -chibar(p),
    minus sum_{p|q} log p/(p+1)."""
    chibar = chr.conjugate()
    w = -chibar.coeff_array()[tbl.primes % chr.modulus]
    # a(p) = 0 at p | q contributes nothing, matching the convention a_p = -chibar(p)
    val = ps.lambda_weighted_sum(1.0 + 0j, x, w, tbl, over_log=False)
    ram = sum(math.log(p) / (p + 1) for p in _prime_divisors(chr.modulus))
    return val - ram


def _prime_divisors(q: int):
    from sympy import factorint

    return sorted(factorint(q))


def choose_m(s_const: complex, theorem: int) -> float:
    """m from 4 log m = +-Re S + 4|S| + 1 (sign + for theorem 2, - for 4)."""
    if theorem == 2:
        lm = (s_const.real + 4 * abs(s_const) + 1) / 4.0
    elif theorem == 4:
        lm = (-s_const.real + 4 * abs(s_const) + 1) / 4.0
    else:
        raise ValueError("theorem must be 2 or 4")
    return math.exp(lm)


def make_scheme(kind: str, chr: Character, x: float, tbl: ps.PrimeTable,
                delta: float = 0.75,
                cfg: lfengine.EvalConfig = lfengine.DEFAULT_CONFIG) -> WeightScheme:
    """Build a scheme with S and m computed from the character.

    B/C use S_1 with the theorem-2 choice of m; Bprime/Cprime use S_2 with
    the theorem-4 choice.
    """
    if kind in ("B", "C"):
        s_const = s1_constant(chr, tbl, cfg)
        m = choose_m(s_const, 2)
    else:
        s_const = s2_constant(chr, tbl, cfg)
        m = choose_m(s_const, 4)
    params = SchemeParams(x=x, delta=delta, m=m, chr=chr, s_const=s_const)
    return WeightScheme(kind=kind, params=params)


# ---------------------------------------------------------------------------
# The series themselves


def v_series(s: complex, x: float, tbl: ps.PrimeTable) -> complex:
    """V_x(s) = sum_{n<=x} Lambda(n)/n^s (all weights 1)."""
    pp = tbl.prime_powers(x)
    return kernels.dirichlet_sum(
        np.ascontiguousarray(pp.logn),
        np.ascontiguousarray(pp.logp.astype(np.complex128)),
        complex(s),
    )


_PHASE_CACHE: dict = {}


def _shift_phases(tau, x: float, tbl: ps.PrimeTable) -> np.ndarray:
    """exp(-i tau log n) per prime power n <= x, phases reduced mod 2 pi at
    full precision; cached since they are independent of s."""
    key = (mp.nstr(mp.mpf(tau), 40), float(x), id(tbl))
    if key in _PHASE_CACHE:
        return _PHASE_CACHE[key]
    pp = tbl.prime_powers(x)
    tau_mp = mp.mpf(tau) if not isinstance(tau, mp.mpf) else tau
    digits = int(mp.floor(mp.log10(abs(tau_mp)))) + 1 if tau_mp != 0 else 1
    with mp.workdps(max(mp.mp.dps, digits + 25)):
        two_pi = 2 * mp.pi
        # log p per prime once; log p^k = k log p keeps the mpmath work at
        # one high-precision log per distinct prime
        logs: dict[int, mp.mpf] = {}
        phases = np.empty(len(pp.n), dtype=np.complex128)
        for i in range(len(pp.n)):
            p = int(pp.p[i])
            if p not in logs:
                logs[p] = mp.log(p)
            ph = mp.fmod(-tau_mp * int(pp.k[i]) * logs[p], two_pi)
            phases[i] = cmath.exp(1j * float(ph))
    _PHASE_CACHE[key] = phases
    return phases


def v_series_shifted(s: complex, tau, x: float, tbl: ps.PrimeTable,
                     over_log: bool = False, chr: Character | None = None) -> complex:
    """V_x(s + i tau) for tau far beyond double range (mpmath mpf).

    The phase tau * log n is reduced mod 2 pi at full precision per prime
    power, after which the sum runs in double precision.
    """
    pp = tbl.prime_powers(x)
    phases = _shift_phases(tau, x, tbl)
    if over_log:
        coeff = phases / pp.k
    else:
        coeff = phases * pp.logp
    if chr is not None:
        coeff = coeff * ps.weights_for_character(chr, pp.n)
    return kernels.dirichlet_sum(
        np.ascontiguousarray(pp.logn), np.ascontiguousarray(coeff), complex(s)
    )


def aux_series(s: complex, scheme: WeightScheme, tbl: ps.PrimeTable) -> complex:
    """W_x / Z_x (kinds B, Bprime: Lambda-weighted) or M_x (kinds C, Cprime:
    additionally divided by log n), at the point s."""
    pr = scheme.params
    over_log = scheme.kind in ("C", "Cprime")
    w = scheme.prime_weights(tbl.primes_upto(pr.x))
    full = np.zeros(len(tbl.primes), dtype=np.complex128)
    full[: len(w)] = w
    return ps.lambda_weighted_sum(s, pr.x, full, tbl, over_log=over_log)


# ---------------------------------------------------------------------------
# Linearization near s = 1 and its root


def _check_linear_domain(s: complex, pr: SchemeParams) -> None:
    bound = (6 * abs(pr.s_const) + 2) / (abs(pr.curvature) * math.log(pr.x) ** 2)
    if abs(s - 1) > bound * (1 + 1e-9):
        raise ValueError("s outside the linearization neighbourhood of 1")
    if s.real < 1 - 1e-12:
        raise ValueError("linearization requires Re s >= 1")


def wx_linear_form(s: complex, pr: SchemeParams) -> complex:
    """((1-s)/2)(2 delta^2 - 1 - eps^2) log^2 x + S_1 - 2 log m."""
    _check_linear_domain(s, pr)
    lx2 = math.log(pr.x) ** 2
    return (1 - s) / 2 * pr.curvature * lx2 + pr.s_const - 2 * math.log(pr.m)


def zx_linear_form(s: complex, pr: SchemeParams) -> complex:
    """((s-1)/2)(2 delta^2 - 1 - eps^2) log^2 x + S_2 + 2 log m."""
    _check_linear_domain(s, pr)
    lx2 = math.log(pr.x) ** 2
    return (s - 1) / 2 * pr.curvature * lx2 + pr.s_const + 2 * math.log(pr.m)


def linear_form(s: complex, scheme: WeightScheme) -> complex:
    if scheme.kind == "B":
        return wx_linear_form(s, scheme.params)
    if scheme.kind == "Bprime":
        return zx_linear_form(s, scheme.params)
    raise ValueError("linear form applies to kinds B and Bprime only")


def closed_form_root(scheme: WeightScheme) -> complex:
    """Exact root of the linear model of W_x (kind B) or Z_x (kind Bprime)."""
    pr = scheme.params
    lx2 = math.log(pr.x) ** 2
    if scheme.kind == "B":
        return 1 + 2 * (pr.s_const - 2 * math.log(pr.m)) / (pr.curvature * lx2)
    if scheme.kind == "Bprime":
        return 1 + 2 * (pr.s_const + 2 * math.log(pr.m)) / (-pr.curvature * lx2)
    raise ValueError("closed-form root applies to kinds B and Bprime only")


def aux_series_derivative(s: complex, scheme: WeightScheme, tbl: ps.PrimeTable) -> complex:
    """Term-by-term d/ds of the Lambda-weighted sum (kinds B, Bprime)."""
    pr = scheme.params
    if scheme.kind not in ("B", "Bprime"):
        raise ValueError("derivative used for kinds B and Bprime only")
    pp = tbl.prime_powers(pr.x)
    w = scheme.prime_weights(tbl.primes_upto(pr.x))
    wk = np.asarray(w, dtype=np.complex128)[pp.p_index] ** pp.k
    coeff = -wk * pp.logp * pp.logn
    return kernels.dirichlet_sum(
        np.ascontiguousarray(pp.logn), np.ascontiguousarray(coeff), complex(s)
    )


def newton_root(scheme: WeightScheme, tbl: ps.PrimeTable,
                start: complex | None = None, max_steps: int = 50) -> complex:
    """Newton refinement of the root of the full W_x / Z_x sum."""
    pr = scheme.params
    s = closed_form_root(scheme) if start is None else complex(start)
    tol = 1e-3 / math.log(pr.x) ** 3
    for _ in range(max_steps):
        f = aux_series(s, scheme, tbl)
        fp = aux_series_derivative(s, scheme, tbl)
        step = f / fp
        s = s - step
        if abs(step) < tol:
            return s
    raise RuntimeError("Newton iteration did not converge")


# ---------------------------------------------------------------------------
# Rouche circles


class RoucheCircles(NamedTuple):
    center: complex  # 1 + (c1 + i c2)/log^2 x
    outer_radius: float  # c1 / (2 log^2 x)
    inner_radius: float  # c1 / (4 log^2 x)
    c1: float
    c2: float


def rouche_circles(pr: SchemeParams) -> RoucheCircles:
    """Concentric circles around 1 + (c1 + i c2)/log^2 x with
    c1 = (4|S|+1)/|curv|, c2 = -Im S/|curv|."""
    curv = abs(pr.curvature)
    c1 = (4 * abs(pr.s_const) + 1) / curv
    c2 = -pr.s_const.imag / curv
    lx2 = math.log(pr.x) ** 2
    center = 1 + (c1 + 1j * c2) / lx2
    return RoucheCircles(center, c1 / (2 * lx2), c1 / (4 * lx2), c1, c2)


def inner_circle_points(pr: SchemeParams, n: int = 256) -> np.ndarray:
    rc = rouche_circles(pr)
    phi = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return rc.center + rc.inner_radius * np.exp(1j * phi)


def linear_form_min_on_inner(scheme: WeightScheme, n: int = 256) -> float:
    """min |linear form| over the inner circle boundary."""
    pts = inner_circle_points(scheme.params, n)
    if scheme.kind == "B":
        vals = [wx_linear_form(s, scheme.params) for s in pts]
    elif scheme.kind == "Bprime":
        vals = [zx_linear_form(s, scheme.params) for s in pts]
    else:
        raise ValueError("kinds B and Bprime only")
    return min(abs(v) for v in vals)


def root_in_inner_circle(scheme: WeightScheme, root: complex | None = None) -> bool:
    rc = rouche_circles(scheme.params)
    r = closed_form_root(scheme) if root is None else root
    return abs(r - rc.center) < rc.inner_radius


def rouche_margin(scheme: WeightScheme, tbl: ps.PrimeTable, tau=0,
                  cutoff: float = 1e6, n: int = 32,
                  cfg: lfengine.EvalConfig = lfengine.DEFAULT_CONFIG) -> float:
    """min |aux_series| minus max |(-zeta'/zeta)(s+i tau) - aux_series(s)|
    over boundary samples of the inner circle; positive certifies a zero of
    zeta' inside the shifted circle (numerically, not rigorously).

    For tau beyond ~1e6 the exact -zeta'/zeta is replaced by the truncated
    prime sum V_cutoff(s + i tau); on the toy circles Re s > 1.4, so the
    discarded tail is below cutoff^(1-sigma) log cutoff / (sigma - 1).
    """
    pts = inner_circle_points(scheme.params, n)
    min_w = min(abs(aux_series(s, scheme, tbl)) for s in pts)
    max_d = 0.0
    use_exact = abs(mp.mpf(tau)) < 1e6
    for s in pts:
        if use_exact:
            st = s + 1j * float(tau)
            z = lfengine.zeta(st, cfg).value
            zp = lfengine.zeta_prime(st, cfg).value
            neg_logd = -zp / z
        else:
            neg_logd = v_series_shifted(s, tau, cutoff, tbl)
        max_d = max(max_d, abs(neg_logd - aux_series(s, scheme, tbl)))
    return min_w - max_d


# ---------------------------------------------------------------------------
# M-series identities (the log-weighted companions)


def m_series_ramified_check(scheme: WeightScheme, tbl: ps.PrimeTable,
                            s: complex = 1.0 + 0j) -> tuple[complex, complex, float]:
    """Ramified part of M_x vs -sum_{p|q} log(1 -+ 1/p): returns
    (finite part, closed form, |defect|).  Kind C compares against
    -log(1 - 1/p); Cprime against -log(1 + 1/p)."""
    if scheme.kind not in ("C", "Cprime"):
        raise ValueError("kinds C and Cprime only")
    pr = scheme.params
    pp = tbl.prime_powers(pr.x)
    ram = np.array([pr.chr.modulus % int(p) == 0 for p in pp.p])
    sign = 1.0 if scheme.kind == "C" else -1.0
    # c(p) = sign at ramified primes (they all sit below x^eps)
    coeff = (sign ** pp.k[ram].astype(np.float64)) / pp.k[ram]
    lhs = kernels.dirichlet_sum(
        np.ascontiguousarray(pp.logn[ram]),
        np.ascontiguousarray(coeff.astype(np.complex128)),
        complex(s),
    )
    rhs = complex(
        sum(-cmath.log(1 - sign * p ** (-complex(s))) for p in _prime_divisors(pr.chr.modulus))
    )
    return lhs, rhs, abs(lhs - rhs)


def m_series_at_one(scheme: WeightScheme, tbl: ps.PrimeTable) -> complex:
    """M_x(1); for kind Cprime compare -log log x^eps - C0 + log(pi^2/6)."""
    return aux_series(1.0 + 0j, scheme, tbl)
