"""Zeros of zeta' in rectangles: argument-principle counting plus Newton.

count_zeros walks the rectangle boundary tracking the continuous argument of
zeta', refining steps until every increment is below pi/2; the winding number
then equals the zero count (the double pole at s = 1 contributes -2 when it
lies strictly inside, and the count is corrected for it).  find_critical_points
seeds a grid, Newton-refines with the term-wise zeta'', deduplicates, and
certifies every zero by an independent high-precision residual.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, replace

import mpmath as mp

from . import lfengine
from .lfengine import DEFAULT_CONFIG, EvalConfig


class BoundaryZeroSuspected(RuntimeError):
    """A zero (or pole) of zeta' appears to sit on the rectangle boundary."""


@dataclass(frozen=True)
class SearchRect:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float
    grid_resolution: float = 0.25

    def __post_init__(self):
        if not self.sigma_min < self.sigma_max:
            raise ValueError("need sigma_min < sigma_max")
        if not self.t_min < self.t_max:
            raise ValueError("need t_min < t_max")
        if self.grid_resolution <= 0:
            raise ValueError("grid_resolution must be positive")

    def contains(self, s: complex, slack: float = 0.0) -> bool:
        return (
            self.sigma_min - slack <= s.real <= self.sigma_max + slack
            and self.t_min - slack <= s.imag <= self.t_max + slack
        )

    def corners(self) -> list[complex]:
        return [
            complex(self.sigma_min, self.t_min),
            complex(self.sigma_max, self.t_min),
            complex(self.sigma_max, self.t_max),
            complex(self.sigma_min, self.t_max),
        ]


@dataclass(frozen=True)
class CriticalPoint:
    beta_prime: float
    gamma_prime: float
    residual: float
    isolating_box: SearchRect

    @property
    def point(self) -> complex:
        return complex(self.beta_prime, self.gamma_prime)


class CriticalPointList(list):
    """List of CriticalPoint with a completeness flag (count match)."""

    complete: bool = True
    expected_count: int = 0


def _pole_on_boundary(rect: SearchRect, eps: float = 1e-9) -> bool:
    on_sigma = abs(rect.sigma_min - 1) < eps or abs(rect.sigma_max - 1) < eps
    on_t = abs(rect.t_min) < eps or abs(rect.t_max) < eps
    in_sigma = rect.sigma_min - eps <= 1 <= rect.sigma_max + eps
    in_t = rect.t_min - eps <= 0 <= rect.t_max + eps
    return (on_sigma and in_t) or (on_t and in_sigma)


def _pole_inside(rect: SearchRect, margin: float = 1e-9) -> bool:
    return (
        rect.sigma_min + margin < 1 < rect.sigma_max - margin
        and rect.t_min + margin < 0 < rect.t_max - margin
    )


def _shrink(rect: SearchRect) -> SearchRect:
    """Pull every edge inward by resolution/10 (boundary-zero evasion)."""
    d = rect.grid_resolution / 10.0
    return replace(
        rect,
        sigma_min=rect.sigma_min + d,
        sigma_max=rect.sigma_max - d,
        t_min=rect.t_min + d,
        t_max=rect.t_max - d,
    )


def _zp(s: complex, cfg: EvalConfig) -> complex:
    return lfengine.zeta_prime(s, cfg).value


def _arg_increment(s1, s2, f1, f2, cfg, depth=0) -> float:
    """Continuous-arg increment of zeta' from s1 to s2, refined < pi/2."""
    d = cmath.phase(f2 / f1)
    if abs(d) < math.pi / 2:
        return d
    if depth >= 42:
        raise BoundaryZeroSuspected(f"argument jump near {s1}..{s2}")
    sm = (s1 + s2) / 2
    fm = _zp(sm, cfg)
    if abs(fm) < 1e-13:
        raise BoundaryZeroSuspected(f"|zeta'| ~ 0 at boundary point {sm}")
    return _arg_increment(s1, sm, f1, fm, cfg, depth + 1) + _arg_increment(
        sm, s2, fm, f2, cfg, depth + 1
    )


def _winding(rect: SearchRect, cfg: EvalConfig) -> int:
    corners = rect.corners()
    corners.append(corners[0])
    total = 0.0
    for a, b in zip(corners[:-1], corners[1:]):
        length = abs(b - a)
        n = max(2, int(math.ceil(length / rect.grid_resolution)))
        pts = [a + (b - a) * i / n for i in range(n + 1)]
        vals = [_zp(s, cfg) for s in pts]
        for (s1, s2, f1, f2) in zip(pts[:-1], pts[1:], vals[:-1], vals[1:]):
            if abs(f1) < 1e-13 or abs(f2) < 1e-13:
                raise BoundaryZeroSuspected(f"|zeta'| ~ 0 near {s1}")
            total += _arg_increment(s1, s2, f1, f2, cfg)
    return round(total / (2 * math.pi))


def count_zeros(rect: SearchRect, cfg: EvalConfig = DEFAULT_CONFIG) -> int:
    """Number of zeros of zeta' in the rectangle by the argument principle.

    The double pole at s = 1 contributes -2 to the boundary winding; when the
    pole lies strictly inside the returned count is winding + 2.  A pole or
    zero sitting on the boundary triggers up to three inward perturbations of
    resolution/10 before giving up.
    """
    r = rect
    for attempt in range(3):
        if _pole_on_boundary(r):
            r = _shrink(r)
            continue
        try:
            w = _winding(r, cfg)
            return w + (2 if _pole_inside(r) else 0)
        except BoundaryZeroSuspected:
            r = _shrink(r)
    raise BoundaryZeroSuspected(
        "zero or pole of zeta' on the boundary after 3 perturbations"
    )


def _newton(s: complex, cfg: EvalConfig, max_steps: int = 40) -> complex | None:
    for _ in range(max_steps):
        if not (-0.9 < s.real < 50 and abs(s.imag) < 1e4) or abs(s - 1) < 1e-6:
            return None  # wandered out of the evaluator's sweet spot
        try:
            fp = lfengine.zeta_prime(s, cfg).value
            fpp = lfengine.zeta_second(s, cfg).value
        except (lfengine.ZetaPoleError, ZeroDivisionError):
            return None
        if fpp == 0:
            return None
        step = fp / fpp
        s = s - step
        if abs(step) < 1e-13:
            return s
    return None


def _residual_mp(s: complex, dps: int = 35) -> float:
    with mp.workdps(dps):
        return float(abs(mp.zeta(mp.mpc(s), derivative=1)))


def find_critical_points(rect: SearchRect,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> CriticalPointList:
    """Newton-refined zeros of zeta' in the rectangle.

    Grid seeds at the rect resolution; each converged zero is certified by an
    independent mpmath residual at ~35 digits.  If the number of distinct
    zeros does not match count_zeros the list is returned with
    ``complete = False``.
    """
    n_expected = count_zeros(rect, cfg)
    res = rect.grid_resolution
    found: list[CriticalPoint] = []
    n_sig = max(2, int(math.ceil((rect.sigma_max - rect.sigma_min) / res)))
    n_t = max(2, int(math.ceil((rect.t_max - rect.t_min) / res)))
    for i in range(n_sig + 1):
        sig = rect.sigma_min + (rect.sigma_max - rect.sigma_min) * i / n_sig
        for j in range(n_t + 1):
            t = rect.t_min + (rect.t_max - rect.t_min) * j / n_t
            seed = complex(sig, t)
            if abs(seed - 1) < 1e-3:
                continue  # pole-excluded disk
            z = _newton(seed, cfg)
            if z is None or not rect.contains(z):
                continue
            if abs(z - 1) < 1e-3:
                continue
            residual = _residual_mp(z)
            if residual > 1e-8:
                continue
            dup = None
            for idx, cp in enumerate(found):
                if abs(cp.point - z) < 10 * res:
                    dup = idx
                    break
            box = SearchRect(
                sigma_min=z.real - res, sigma_max=z.real + res,
                t_min=z.imag - res, t_max=z.imag + res,
                grid_resolution=res / 4,
            )
            cp = CriticalPoint(z.real, z.imag, residual, box)
            if dup is None:
                found.append(cp)
            elif residual < found[dup].residual:
                found[dup] = cp
    found.sort(key=lambda c: (c.gamma_prime, c.beta_prime))
    out = CriticalPointList(found)
    out.expected_count = n_expected
    out.complete = len(found) == n_expected
    return out


def write_csv(points, path: str) -> None:
    """CSV export: beta_prime, gamma_prime, residual, box bounds (17 sig)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([
            "beta_prime", "gamma_prime", "residual",
            "box_sigma_min", "box_sigma_max", "box_t_min", "box_t_max",
        ])
        for cp in points:
            b = cp.isolating_box
            w.writerow([
                f"{v:.17g}"
                for v in (
                    cp.beta_prime, cp.gamma_prime, cp.residual,
                    b.sigma_min, b.sigma_max, b.t_min, b.t_max,
                )
            ])


def read_csv(path: str) -> CriticalPointList:
    out = CriticalPointList()
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            box = SearchRect(
                sigma_min=float(row["box_sigma_min"]),
                sigma_max=float(row["box_sigma_max"]),
                t_min=float(row["box_t_min"]),
                t_max=float(row["box_t_max"]),
                grid_resolution=(float(row["box_sigma_max"]) - float(row["box_sigma_min"])) / 8,
            )
            out.append(
                CriticalPoint(
                    float(row["beta_prime"]), float(row["gamma_prime"]),
                    float(row["residual"]), box,
                )
            )
    return out
