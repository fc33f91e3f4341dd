"""Constructive simultaneous Diophantine approximation for prime angles.

Goal: a real tau with ||tau log p / 2 pi - U_p|| <= tol for every prime
p <= x, where U_p is a rational target angle (in turns) and ||.|| is the
distance to the nearest integer.  Kronecker's theorem guarantees existence
(the log p are rationally independent); this module finds an explicit tau.

Strategy: write tau = 2 pi (k + U_2)/log 2 with integer k, which nails the
p = 2 constraint exactly, then reduce the remaining constraints
||k gamma_p - V_p|| <= tol (gamma_p = log p/log 2) to a closest-vector
problem on an integer lattice solved by LLL with a Kannan embedding.  The
resulting k is astronomically large (hundreds of digits for ~50 primes), so
tau is carried as an mpmath value plus its exact integer k, and the
certificate re-verifies every defect at sufficient precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np
from sympy import Rational
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix


@dataclass(frozen=True)
class AngleTargets:
    """Primes with target angles (turns, exact rationals) and a tolerance."""

    primes: tuple
    targets: tuple  # tuple[Fraction], same length
    tolerance: float

    def __post_init__(self):
        if len(self.primes) != len(self.targets):
            raise ValueError("primes and targets must have equal length")
        if not 0 < self.tolerance < 0.5:
            raise ValueError("tolerance must lie in (0, 1/2)")
        if len(self.primes) == 0:
            raise ValueError("need at least one prime")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing")


@dataclass
class TauCertificate:
    """A verified tau: defects recomputed at full precision on construction."""

    tau_str: str  # decimal string of tau (mpmath, full precision)
    k: int  # integer in tau = 2 pi (k + U_2)/log 2 (0 when unused)
    primes: tuple
    targets: tuple  # Fractions
    defects: tuple  # ||tau log p/2pi - U_p|| per prime, floats
    max_defect: float
    weight_defects: tuple  # |p^{-i tau} - e^{-2 pi i U_p}| = 2 sin(pi defect)
    tolerance: float
    search_interval: tuple  # (lo, hi) as floats of log10|tau|, or None
    success: bool
    in_interval: bool
    seed: int = 0

    @property
    def tau(self) -> mp.mpf:
        with mp.workdps(max(30, len(self.tau_str) + 10)):
            return mp.mpf(self.tau_str)

    def to_json(self) -> dict:
        return {
            "tau": self.tau_str,
            "k": str(self.k),
            "primes": list(self.primes),
            "targets": [[t.numerator, t.denominator] for t in self.targets],
            "defects": list(self.defects),
            "max_defect": self.max_defect,
            "weight_defects": list(self.weight_defects),
            "tolerance": self.tolerance,
            "search_interval": list(self.search_interval) if self.search_interval else None,
            "success": self.success,
            "in_interval": self.in_interval,
            "seed": self.seed,
        }

    @staticmethod
    def from_json(d: dict) -> "TauCertificate":
        return TauCertificate(
            tau_str=d["tau"],
            k=int(d["k"]),
            primes=tuple(d["primes"]),
            targets=tuple(Fraction(a, b) for a, b in d["targets"]),
            defects=tuple(d["defects"]),
            max_defect=d["max_defect"],
            weight_defects=tuple(d["weight_defects"]),
            tolerance=d["tolerance"],
            search_interval=tuple(d["search_interval"]) if d["search_interval"] else None,
            success=d["success"],
            in_interval=d["in_interval"],
            seed=d.get("seed", 0),
        )


def kronecker_defect(tau, p: int, target: Fraction, dps: int = 50) -> float:
    """||tau log p / 2 pi - target|| at the given working precision."""
    with mp.workdps(dps):
        v = mp.mpf(tau) * mp.log(p) / (2 * mp.pi) - mp.mpf(target.numerator) / target.denominator
        frac = v - mp.floor(v)
        return float(min(frac, 1 - frac))


def targets_from_scheme(scheme, tbl) -> AngleTargets:
    """Angle targets U_p = arg(conj of weight at p)/2pi for all p <= x.

    Tolerance is 1/log^2 x, the resolution the linearization argument needs.
    """
    pr = scheme.params
    primes = tuple(int(p) for p in tbl.primes_upto(pr.x))
    targets = tuple((-scheme.prime_weight_angle(p)) % 1 for p in primes)
    tol = 1.0 / math.log(pr.x) ** 2
    return AngleTargets(primes=primes, targets=targets, tolerance=tol)


def _verify(tau_str: str, k: int, tg: AngleTargets, interval) -> TauCertificate:
    ndig = len(tau_str)
    dps = ndig + 30
    defects = tuple(
        kronecker_defect_str(tau_str, p, t, dps) for p, t in zip(tg.primes, tg.targets)
    )
    md = max(defects)
    wd = tuple(2 * math.sin(math.pi * d) for d in defects)
    with mp.workdps(dps):
        tau_v = mp.mpf(tau_str)
        in_iv = True
        if interval is not None:
            lo, hi = interval
            a = mp.log10(abs(tau_v)) if tau_v != 0 else mp.mpf("-inf")
            in_iv = bool(lo <= a <= hi)
    return TauCertificate(
        tau_str=tau_str,
        k=k,
        primes=tg.primes,
        targets=tg.targets,
        defects=defects,
        max_defect=md,
        weight_defects=wd,
        tolerance=tg.tolerance,
        search_interval=tuple(interval) if interval else None,
        success=md <= tg.tolerance,
        in_interval=in_iv,
    )


def kronecker_defect_str(tau_str: str, p: int, target: Fraction, dps: int) -> float:
    with mp.workdps(dps):
        v = mp.mpf(tau_str) * mp.log(p) / (2 * mp.pi)
        v -= mp.mpf(target.numerator) / target.denominator
        frac = v - mp.floor(v)
        return float(min(frac, 1 - frac))


def _tau_from_k(k: int, u2: Fraction, dps: int) -> str:
    with mp.workdps(dps):
        tau = 2 * mp.pi * (k + mp.mpf(u2.numerator) / u2.denominator) / mp.log(2)
        return mp.nstr(tau, dps - 10, strip_zeros=False)


def find_tau(tg: AngleTargets, interval=None, max_attempts: int = 3) -> TauCertificate:
    """Search for tau meeting every target within tolerance.

    Shortcuts: all-zero targets give tau = 0; a single prime has the exact
    one-parameter family tau = 2 pi (j + U_p)/log p.  The general case runs
    LLL on a Kannan-embedded integer lattice, escalating the scale factor
    up to ``max_attempts`` times.  The returned certificate always carries
    re-verified defects; ``success`` records whether the tolerance was met.
    """
    if all(t == 0 for t in tg.targets):
        cert = _verify("0.0", 0, tg, interval)
        if cert.in_interval:
            return cert
    if len(tg.primes) == 1:
        p, t = tg.primes[0], tg.targets[0]
        j = 1
        if interval is not None:
            # pick j so that log10 tau lands inside the interval
            lo, _ = interval
            j = max(1, int(10 ** lo * math.log(p) / (2 * math.pi)))
        with mp.workdps(60):
            tau = 2 * mp.pi * (j + mp.mpf(t.numerator) / t.denominator) / mp.log(p)
            return _verify(mp.nstr(tau, 45), j, tg, interval)

    if tg.primes[0] != 2:
        raise ValueError("the multi-prime search expects the prime 2 present")

    u2 = tg.targets[0]
    rest = list(zip(tg.primes[1:], tg.targets[1:]))
    N = len(rest)
    delta_lat = tg.tolerance / 3.0
    best = None

    for attempt in range(max_attempts):
        # pigeonhole estimate for the size of k needed to hit N targets to
        # within delta_lat; each escalation pads the exponent further
        log_h = (
            N * math.log(1.0 / (2 * delta_lat))
            + (N / 2.0) * math.log(2.0) / 2.0
            + math.log(1e3)
            + attempt * 0.3 * N
        )
        dps_work = int(log_h / math.log(10)) + 80
        with mp.workdps(dps_work):
            h_int = int(mp.e**log_h)
            s_int = int(mp.mpf(h_int) * 1000 / delta_lat)
            log2 = mp.log(2)
            gam = [mp.log(p) / log2 for p, _ in rest]
            vp = []
            for (p, t), g in zip(rest, gam):
                v = mp.mpf(t.numerator) / t.denominator - mp.mpf(u2.numerator) / u2.denominator * g
                vp.append(v - mp.floor(v))
            r0 = [int(mp.nint(s_int * g)) for g in gam]
            rt = [int(mp.nint(s_int * v)) for v in vp]
        b_int = int(mp.mpf(s_int) * delta_lat)
        a_w = 1000  # = s_int * delta_lat / h_int, the per-unit-k penalty
        rows = [r0 + [a_w, 0]]
        for i in range(N):
            e = [0] * N
            e[i] = s_int
            rows.append(e + [0, 0])
        rows.append(rt + [0, b_int])
        M = DomainMatrix([[ZZ(v) for v in row] for row in rows], (N + 2, N + 2), ZZ)
        red = M.lll(delta=Rational(99, 100)).to_list()
        for row in red:
            last = int(row[-1])
            if abs(last) != b_int:
                continue
            if last == b_int:  # negate so the row is (combo) - r_t
                row = [-int(v) for v in row]
            kaw = int(row[-2])
            if kaw % a_w != 0:
                continue
            k = kaw // a_w
            if k == 0:
                continue
            cand = _tau_from_k(k, u2, dps_work)
            cert = _verify(cand, k, tg, interval)
            if best is None or cert.max_defect < best.max_defect:
                best = cert
            if cert.success:
                return cert
    if best is None:
        raise RuntimeError("lattice reduction produced no candidate tau")
    return best


def save_certificate(cert: TauCertificate, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(cert.to_json(), fh, indent=1)


def load_certificate(path: str) -> TauCertificate:
    with open(path) as fh:
        return TauCertificate.from_json(json.load(fh))


def revalidate(cert: TauCertificate) -> bool:
    """Recompute every defect from tau_str; True iff they match the stored
    values to 1e-12 and max_defect is consistent."""
    dps = len(cert.tau_str) + 30
    for p, t, d in zip(cert.primes, cert.targets, cert.defects):
        d2 = kronecker_defect_str(cert.tau_str, p, t, dps)
        if abs(d2 - d) > 1e-12:
            return False
    return abs(max(cert.defects) - cert.max_defect) <= 1e-15
