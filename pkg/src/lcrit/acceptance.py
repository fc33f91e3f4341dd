"""The ten acceptance checks, shared by the test suite and `lcrit verify`.

Each criterion function returns a CriterionResult with a pass flag and a
human-readable detail string; nothing here weakens a check to make it pass,
and thresholds are the pinned contract values.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import auxseries as aux
from . import critzeros as cz
from . import diophantine as dio
from . import lfengine
from . import primesums as ps
from . import scanner as sc
from .characters import enumerate_characters, primitive_characters


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number} ({self.name}, {self.seconds:.1f}s): {self.detail}"


_TBL_CACHE: dict = {}
_CERT_CACHE: dict = {}


def _table(limit: int) -> ps.PrimeTable:
    if limit not in _TBL_CACHE:
        _TBL_CACHE[limit] = ps.sieve(limit)
    return _TBL_CACHE[limit]


def _certificate(kind: str, q: int, label: int, x: float, tol: float,
                 tbl: ps.PrimeTable) -> dio.TauCertificate:
    key = (kind, q, label, x, tol)
    if key not in _CERT_CACHE:
        chr = enumerate_characters(q)[label]
        if kind in ("B", "C"):
            s_const = aux.s1_constant(chr, tbl)
            m = aux.choose_m(s_const, 2)
        else:
            s_const = aux.s2_constant(chr, tbl)
            m = aux.choose_m(s_const, 4)
        params = aux.SchemeParams(x=x, delta=0.75, m=m, chr=chr, s_const=s_const)
        base = "B" if kind in ("B", "C") else "Bprime"
        tg0 = dio.targets_from_scheme(aux.WeightScheme(base, params), tbl)
        tg = dio.AngleTargets(tg0.primes, tg0.targets, tol)
        _CERT_CACHE[key] = dio.find_tau(tg)
    return _CERT_CACHE[key]


def _timed(fn):
    t0 = time.time()
    passed, detail = fn()
    return passed, detail, time.time() - t0


def criterion_1() -> CriterionResult:
    def run():
        bad = []
        for q in range(3, 101):
            b = sc.theorem_bounds(q)
            if b.thm1 != 2 * b.thm2 or b.thm4 != 2 * b.thm3:
                bad.append(q)
        _, diff = sc.euler_constant_dual()
        ok = not bad and diff <= 1e-20
        return ok, f"doubling exact for q in [3,100] ({len(bad)} failures); C0 dual-route diff = {diff:.2e} (<= 1e-20)"

    p, d, s = _timed(run)
    return CriterionResult(1, "constant reproduction", p, d, s)


def criterion_2(n_points: int = 100, seed: int = 20260825) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed)
        n_max = 200_000
        n = np.arange(1, n_max + 1)
        logn = np.log(n.astype(np.float64))
        chars = []
        for q in range(3, 21):
            chars.extend(primitive_characters(q))
        mods = sorted({c.modulus for c in chars})
        idx = {q: (n % q) for q in mods}
        worst = 0.0
        failures = 0
        checked = 0
        for _ in range(n_points):
            s = complex(rng.uniform(2.5, 4.0), rng.uniform(0.0, 40.0))
            z = np.exp(-s * logn)
            tail = n_max ** (1.0 - s.real) / (s.real - 1.0)
            for chr in chars:
                coeff = chr.coeff_array()[idx[chr.modulus]]
                oracle = complex(np.sum(coeff * z))
                ours = lfengine.dirichlet_l(s, chr)
                budget = tail + ours.error_radius + 1e-12
                err = abs(ours.value - oracle)
                worst = max(worst, err / budget)
                failures += err > budget
                checked += 1
        z2 = abs(lfengine.zeta(2.0 + 0j).value - math.pi**2 / 6.0)
        ok = failures == 0 and z2 <= 1e-12
        return ok, (
            f"{checked} evaluations ({len(chars)} primitive chars, {n_points} points), "
            f"{failures} outside combined radii (worst ratio {worst:.3f}); "
            f"|zeta(2)-pi^2/6| = {z2:.1e} (<= 1e-12)"
        )

    p, d, s = _timed(run)
    return CriterionResult(2, "evaluator oracle suite", p, d, s)


def criterion_3() -> CriterionResult:
    def run():
        tbl = _table(10**6)
        chi = enumerate_characters(5)[1]
        xs = [1e4, 1e5, 1e6]
        bands = {}
        ok = True
        for name, s, wfun in [
            ("ones @ s=1", 1.0 + 0j,
             lambda: np.ones(len(tbl.primes), dtype=np.complex128)),
            ("chi mod 5 @ s=1+i", 1.0 + 1j,
             lambda: chi.coeff_array()[tbl.primes % 5]),
        ]:
            vals = []
            for x in xs:
                _, _, defect = ps.lambda_chi_over_log(s, x, wfun(), tbl)
                vals.append(defect * math.sqrt(x) * math.log(x))
            ratio = max(vals) / min(vals)
            bands[name] = (ratio, vals)
            ok = ok and ratio <= 3.0
        detail = "; ".join(
            f"{k}: scaled defects {[f'{v:.3f}' for v in vv]}, band {r:.2f} (<= 3)"
            for k, (r, vv) in bands.items()
        )
        return ok, detail

    p, d, s = _timed(run)
    return CriterionResult(3, "log-weighted identity decay", p, d, s)


def criterion_4() -> CriterionResult:
    def run():
        tbl = _table(10**6)
        chi = enumerate_characters(5)[1]
        ts = [10 ** e for e in (3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0)]
        defects = []
        for t in ts:
            s = complex(1.0, t)
            d = lfengine.log_l_defect(s, chi, t, tbl)
            defects.append(d)
        caps = [5.0 / math.log(math.log(t)) for t in ts]
        below = all(d < c for d, c in zip(defects, caps))
        # decreasing trend: least-squares slope of defect against log log t
        xs = [math.log(math.log(t)) for t in ts]
        n = len(ts)
        sx, sy = sum(xs), sum(defects)
        slope = (n * sum(a * b for a, b in zip(xs, defects)) - sx * sy) / (
            n * sum(a * a for a in xs) - sx * sx
        )
        decreasing = slope < 0 and defects[-1] < defects[0]
        ok = below and decreasing
        return ok, (
            f"defects {[f'{d:.3f}' for d in defects]} vs caps {[f'{c:.3f}' for c in caps]}; "
            f"all below: {below}; trend slope {slope:.3f} (< 0), last < first: {defects[-1] < defects[0]}"
        )

    p, d, s = _timed(run)
    return CriterionResult(4, "truncated log L decay", p, d, s)


def criterion_5() -> CriterionResult:
    def run():
        tbl = _table(10**7)
        chi = enumerate_characters(5)[1]
        xs = [1e4, 1e5, 1e6, 1e7]
        ok = True
        parts = []
        for kind in ("B", "Bprime"):
            lin_vals, root_vals = [], []
            re_ok = True
            for x in xs:
                scheme = aux.make_scheme(kind, chi, x, tbl, delta=0.75)
                pts = aux.inner_circle_points(scheme.params, 256)
                form = aux.wx_linear_form if kind == "B" else aux.zx_linear_form
                lin = max(
                    abs(aux.aux_series(s, scheme, tbl) - form(s, scheme.params))
                    for s in pts
                )
                lin_vals.append(lin * math.log(x))
                root_c = aux.closed_form_root(scheme)
                root_n = aux.newton_root(scheme, tbl)
                root_vals.append(abs(root_n - root_c) * math.log(x) ** 3)
                re_ok = re_ok and root_c.real > 1 and root_n.real > 1
            lin_band = max(lin_vals) / min(lin_vals)
            root_band = max(root_vals) / min(root_vals)
            ok = ok and lin_band <= 2.0 and root_band <= 2.0 and re_ok
            parts.append(
                f"{kind}: lin band {lin_band:.3f} (<= 2), root band {root_band:.3f} (<= 2), Re>1 {re_ok}"
            )
        return ok, "; ".join(parts)

    p, d, s = _timed(run)
    return CriterionResult(5, "linearization bands", p, d, s)


def criterion_6() -> CriterionResult:
    def run():
        tbl = _table(10**7)
        chi = enumerate_characters(5)[1]
        ok = True
        worst_min = math.inf
        for kind in ("B", "Bprime"):
            for x in [1e4, 1e5, 1e6, 1e7]:
                scheme = aux.make_scheme(kind, chi, x, tbl, delta=0.75)
                rc = aux.rouche_circles(scheme.params)
                inside = abs(aux.closed_form_root(scheme) - rc.center) < rc.inner_radius
                mn = aux.linear_form_min_on_inner(scheme, 256)
                worst_min = min(worst_min, mn)
                ok = ok and inside and mn >= 0.1
        return ok, f"root inside inner circle everywhere; min |linear form| on boundary {worst_min:.4f} (>= 0.1)"

    p, d, s = _timed(run)
    return CriterionResult(6, "contour geometry", p, d, s)


def criterion_7() -> CriterionResult:
    def run():
        tbl = _table(10**7)
        chi = enumerate_characters(5)[1]
        cert = _certificate("B", 5, 1, 200.0, 0.02, tbl)
        reval = dio.revalidate(cert)
        s_const = aux.s1_constant(chi, tbl)
        m = aux.choose_m(s_const, 2)
        params = aux.SchemeParams(x=200.0, delta=0.75, m=m, chr=chi, s_const=s_const)
        scheme = aux.WeightScheme("B", params)
        pts = aux.inner_circle_points(params, 64)
        tau = cert.tau
        worst = max(
            abs(aux.v_series_shifted(s, tau, 200.0, tbl) - aux.aux_series(s, scheme, tbl))
            for s in pts
        )
        ok = cert.success and cert.max_defect <= 0.02 and reval and worst <= 0.5
        return ok, (
            f"max_defect {cert.max_defect:.5f} (<= 0.02), revalidated: {reval}, "
            f"max |V(s+i tau) - W(s)| on boundary {worst:.4f} (<= 0.5), log10 tau ~ "
            f"{len(str(abs(cert.k)))} digits in k"
        )

    p, d, s = _timed(run)
    return CriterionResult(7, "tau construction", p, d, s)


def criterion_8() -> CriterionResult:
    def run():
        tbl = _table(10**6)
        big = _table(10**7)
        chi = enumerate_characters(5)[1]
        c2 = _certificate("B", 5, 1, 200.0, 0.02, big)
        c4 = _certificate("Bprime", 5, 1, 200.0, 0.02, big)
        r2 = sc.check_thm2_chain(chi, tbl=tbl, cert=c2)
        r4 = sc.check_thm4_chain(chi, tbl=tbl, cert=c4)
        ratio = r2.abs_l / r4.abs_l
        ok = r2.passed and r4.passed and ratio >= 4.0
        return ok, (
            f"lower chain |L| = {r2.abs_l:.3f} (floor {r2.threshold:.3f}); "
            f"upper chain |L| = {r4.abs_l:.3f} (cap {r4.threshold:.3f}); "
            f"ratio {ratio:.2f} (>= 4)"
        )

    p, d, s = _timed(run)
    return CriterionResult(8, "toy pipelines", p, d, s)


def criterion_9() -> CriterionResult:
    def run():
        tbl = _table(10**6)
        res = sc.sweep_inequalities(tbl=tbl)
        v = res["violations_thm1"] + res["violations_thm3"]
        return v == 0, (
            f"{res['checked']} grid checks x 2 inequalities, {res['violations_thm1']} + "
            f"{res['violations_thm3']} violations (expect 0)"
        )

    p, d, s = _timed(run)
    return CriterionResult(9, "inequality sweeps", p, d, s)


def criterion_10() -> CriterionResult:
    def run():
        rect = cz.SearchRect(0.0, 3.0, 0.0, 60.0, grid_resolution=0.25)
        n1 = cz.count_zeros(rect)
        n2 = cz.count_zeros(cz.SearchRect(0.0, 3.0, 0.0, 60.0, grid_resolution=0.125))
        na = cz.count_zeros(cz.SearchRect(0.0, 3.0, 0.0, 30.0, 0.25))
        nb = cz.count_zeros(cz.SearchRect(0.0, 3.0, 30.0, 60.0, 0.25))
        pts = cz.find_critical_points(rect)
        res_ok = all(p.residual <= 1e-8 for p in pts)
        beta_ok = all(p.beta_prime > 0.5 for p in pts)
        ok = n1 == n2 and na + nb == n1 and pts.complete and res_ok and beta_ok
        return ok, (
            f"count {n1} stable under halving ({n2}); split {na}+{nb}={na+nb}; "
            f"{len(pts)} refined zeros, residuals <= 1e-8: {res_ok}, beta' > 1/2: {beta_ok}"
        )

    p, d, s = _timed(run)
    return CriterionResult(10, "zeta' zero finder", p, d, s)


ALL_CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_all(echo=print) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        r = fn()
        results.append(r)
        if echo:
            echo(r.line())
    return results
