"""Verification battery: every figure reproduction and law-vs-exact check,
expressed as data so the CLI and the acceptance test suite share one
implementation.

Each criterion function returns a list of :class:`CheckResult`; a check that
is known to be unattainable at the stated resolution (a documented defect of
the published tolerance, not of this implementation) carries
``expected_fail=True`` together with the measured value, so reports stay
honest without hiding the measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import asymptotic_laws as law
from .oracles import (
    ContourSpec,
    dirichlet_weyl_oracle,
    fourier_coefficient_wigner,
    radial_phase_space_integral,
    stationary_phase_leading,
)
from .oscillator import (
    OscillatorConfig,
    PhasePoint,
    eigenspace_dim,
    snap_hbar,
    wigner_eigenspace_radial,
    wigner_levels_radial,
)
from .scaled_numerics import (
    LaguerreParams,
    airy_ai,
    airy_tail,
    weighted_laguerre,
    AIRY_OVERLAP_BAND,
)
from .weyl_sums import (
    FejerWeight,
    GaussianWeight,
    abel_total,
    envelope_growth_exponent,
    sum_sharp_airy,
    sum_sharp_bulk,
    sum_smoothed,
    sum_smoothed_report,
)

__all__ = [
    "CheckResult",
    "all_criteria",
    "CRITERIA",
    "fig1_profile",
    "fig2_profile",
    "resolve_conventions_data",
]

#: Energy used throughout the figure-level checks.
E_REF = 0.5

#: Fejer-weighted 2/3-scale sums have polynomially decaying term bounds; the
#: per-term truncation standard used for them in the battery (the induced
#: tail uncertainty is orders below every comparison tolerance here).
FEJER_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    expected_fail: bool = False
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else ("FAIL(expected)" if self.expected_fail else "FAIL")
        out = f"[{status}] {self.name}: value={self.value:.6g} tolerance={self.tolerance:.6g}"
        if self.note:
            out += f" ({self.note})"
        return out


def _check(name, value, tol, ok, expected_fail=False, note="") -> CheckResult:
    return CheckResult(name, float(value), float(tol), bool(ok), expected_fail, note)


# ---------------------------------------------------------------------------
# 1. Oracle equivalence
# ---------------------------------------------------------------------------


def criterion_1_oracle_equivalence(seed: int = 20240801, cases: int = 100) -> list[CheckResult]:
    """Laguerre formula vs contour Fourier coefficient on randomized cases.

    Relative error floored at 1e-6 of the natural scale (2 pi hbar)^{-d}:
    deep-forbidden values sit exponentially below the contour quadrature's
    roundoff resolution and are compared at that scale instead.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        d = int(rng.integers(1, 4))
        n = int(rng.integers(0, 401))
        hbar = float(rng.uniform(0.004, 1.0))
        cfg = OscillatorConfig(hbar, d)
        e_n = hbar * (n + 0.5 * d)
        H = float(rng.uniform(0.0, 3.0)) * e_n
        w_exact = wigner_eigenspace_radial(cfg, n, H)
        w_oracle = fourier_coefficient_wigner(cfg, n, PhasePoint.from_energy(H, d))
        floor = 1e-6 * (2.0 * math.pi * hbar) ** (-d)
        worst = max(worst, abs(w_exact - w_oracle) / max(abs(w_exact), floor))
    return [_check("oracle equivalence max rel err (100 cases)", worst, 1e-8, worst <= 1e-8)]


# ---------------------------------------------------------------------------
# 2. Norm identities
# ---------------------------------------------------------------------------


def criterion_2_norm_identities(seed: int = 20240802) -> list[CheckResult]:
    """Phase-space integrals of W and W^2 against the eigenspace dimension.

    The L2 pairing carries the (2 pi hbar)^d weight; it is the unique
    normalization under which the Laguerre formula satisfies both the trace
    and the Hilbert-Schmidt identity simultaneously (see module docs).
    """
    worst1 = worst2 = 0.0
    for d in (1, 2, 3):
        for hbar in (1.0, 0.1):
            cfg = OscillatorConfig(hbar, d)
            for n in range(0, 61, 3):
                e_n = hbar * (n + 0.5 * d)
                h_max = 2.2 * e_n + 16.0 * hbar

                def w_of(hs, _n=n, _cfg=cfg):
                    return wigner_levels_radial(_cfg, hs, _n)[_n]

                dim = eigenspace_dim(d, n)
                i1 = radial_phase_space_integral(w_of, d, h_max)
                i2 = radial_phase_space_integral(lambda hs: w_of(hs) ** 2, d, h_max)
                worst1 = max(worst1, abs(i1 - dim) / dim)
                worst2 = max(worst2, abs((2 * math.pi * hbar) ** d * i2 - dim) / dim)
    # orthogonality spot pairs
    rng = np.random.default_rng(seed)
    worst3 = 0.0
    for _ in range(6):
        d = int(rng.integers(1, 4))
        hbar = float(rng.choice([1.0, 0.1]))
        cfg = OscillatorConfig(hbar, d)
        n, m = sorted(rng.choice(np.arange(0, 41), size=2, replace=False).tolist())
        e_top = hbar * (m + 0.5 * d)
        h_max = 2.2 * e_top + 16.0 * hbar

        def wprod(hs, _n=n, _m=m, _cfg=cfg):
            vals = wigner_levels_radial(_cfg, hs, _m)
            return vals[_n] * vals[_m]

        gate = math.sqrt(eigenspace_dim(d, n) * eigenspace_dim(d, m))
        # the true value is 0; converge on an absolute scale well below the gate
        cross = radial_phase_space_integral(
            wprod, d, h_max, abs_tol=1e-10 * gate / (2 * math.pi * hbar) ** d
        )
        worst3 = max(worst3, abs((2 * math.pi * hbar) ** d * cross) / gate)
    return [
        _check("trace identity max rel err", worst1, 1e-6, worst1 <= 1e-6),
        _check("L2 identity max rel err", worst2, 1e-6, worst2 <= 1e-6),
        _check("orthogonality |cross|/sqrt(dim dim)", worst3, 1e-8, worst3 <= 1e-8),
    ]


# ---------------------------------------------------------------------------
# 3/4. Figure reproductions
# ---------------------------------------------------------------------------


def fig1_profile(hbar_target: float = 0.0099, d: int = 1, E: float = E_REF, points: int = 2000):
    """Radially weighted single-level profile for the first figure.

    Returns (hbar, N, rho, H, W, profile) with
    profile = (2 pi hbar)^d (H/E)^{d/2} W_{hbar,E}.  The (H/E)^{d/2} radial
    weight is the normalization under which the quoted peak (~hbar^{1/3})
    and bulk amplitude (~hbar^{1/2}) are the literal curve levels; the raw
    H^{-d/2} weight diverges at the origin and matches neither quote.
    """
    hbar, n = snap_hbar(E, hbar_target, d)
    cfg = OscillatorConfig(hbar, d)
    rho = np.linspace(0.0, 1.4, points)
    H = 0.5 * rho**2
    w = wigner_levels_radial(cfg, H, n)[n]
    profile = (2.0 * math.pi * hbar) ** d * (H / E) ** (0.5 * d) * w
    return hbar, n, rho, H, w, profile


def criterion_3_fig1() -> list[CheckResult]:
    hbar, n, rho, H, w, prof = fig1_profile()
    peak = float(prof[(rho > 0.85) & (rho < 1.10)].max())
    env = float(np.abs(prof[(rho >= 0.5) & (rho <= 0.7)]).max())
    return [
        _check("fig1 peak near rho=1", peak, 0.24, 0.20 <= peak <= 0.24, note="bracket [0.20, 0.24]"),
        _check("fig1 bulk envelope (rho in [0.5,0.7])", env, 0.12, 0.08 <= env <= 0.12, note="bracket [0.08, 0.12]"),
    ]


def fig2_profile(hbar_target: float = 0.0196, d: int = 1, E: float = E_REF, points: int = 241):
    """Scaled bulk window sum against its integrated Airy limit.

    Returns (hbar, u, exact_scaled_sum, airy_limit).  The window is the
    half-open [0, E) with E on the spectrum (snapped hbar), matching the
    Dirichlet-kernel form whose limit is the integrated Airy profile.
    """
    hbar, _ = snap_hbar(E, hbar_target, d)
    cfg = OscillatorConfig(hbar, d)
    us = np.linspace(-6.0, 6.0, points)
    scale = (2.0 * math.pi * hbar) ** d
    exact = np.array(
        [scale * sum_sharp_bulk(cfg, 0.0, E, E + u * (hbar / (2 * E)) ** (2.0 / 3.0)) for u in us]
    )
    pred = np.array([airy_tail(u / E) for u in us])
    return hbar, us, exact, pred


def criterion_4_fig2() -> list[CheckResult]:
    """Bulk-window Airy interface at hbar ~ 0.0196 and hbar/8.

    The sup gate of 0.1 at hbar ~ 0.0196 is not attainable: the exact sum
    still carries its interior hbar^{1/2} oscillation (amplitude ~0.14 with
    an O(1) constant) on top of a discretization phase shift of the Airy
    tail oscillation, and the measured sup is ~0.26 for every boundary
    convention of the window.  It keeps shrinking at the stated rate, which
    the second check verifies.
    """
    h1, us, exact, pred = fig2_profile()
    sup1 = float(np.max(np.abs(exact - pred)))
    h8, us8, exact8, pred8 = fig2_profile(hbar_target=h1 / 8.0, points=121)
    sup8 = float(np.max(np.abs(exact8 - pred8)))
    ratio = sup1 / sup8
    return [
        _check(
            "fig2 sup|scaled sum - Airy limit| at hbar~0.0196",
            sup1,
            0.1,
            sup1 <= 0.1,
            expected_fail=True,
            note="documented spec-tolerance defect; see decisions ledger",
        ),
        _check("fig2 sup error shrink factor at hbar/8", ratio, 1.5, ratio >= 1.5, note="gate >= 1.5"),
    ]


# ---------------------------------------------------------------------------
# 5-9. Law-vs-exact rate checks
# ---------------------------------------------------------------------------


def criterion_5_airy_individual() -> list[CheckResult]:
    sups = {}
    for hb_t in (1e-2, 1e-3):
        hbar, n = snap_hbar(E_REF, hb_t, 1)
        cfg = OscillatorConfig(hbar, 1)
        peak_scale = 2.0 * (hbar / (2 * E_REF)) ** (1.0 / 3.0)
        errs = []
        for u in np.linspace(-4.0, 4.0, 33):
            Hu = E_REF + u * (hbar / (2 * E_REF)) ** (2.0 / 3.0)
            scaled = (2 * math.pi * hbar) * wigner_eigenspace_radial(cfg, n, Hu) / peak_scale
            errs.append(abs(scaled - airy_ai(u / E_REF)))
        sups[hb_t] = max(errs)
    rate = law.rate_exponent(1e-2, sups[1e-2], 1e-3, sups[1e-3])
    return [
        _check("single-level Airy profile rate exponent", rate, 0.25, abs(rate - 2.0 / 3.0) <= 0.25,
               note="target 2/3 +/- 0.25"),
    ]


def criterion_6_bulk_window() -> list[CheckResult]:
    out = []
    for d in (1, 2):
        for hbar in (0.02, 0.005):
            cfg = OscillatorConfig(hbar, d)
            scale = (2.0 * math.pi * hbar) ** d
            vin = abs(scale * sum_sharp_bulk(cfg, 0.0, E_REF, E_REF / 2) - 1.0)
            gate = 3.0 * math.sqrt(hbar)
            out.append(
                _check(f"bulk interior |scaled-1| (d={d}, hbar={hbar})", vin, gate, vin <= gate)
            )
            vout = abs(scale * sum_sharp_bulk(cfg, 0.0, E_REF, 1.5 * E_REF))
            expected_fail = d == 1 and hbar == 0.02
            out.append(
                _check(
                    f"bulk exterior scaled value (d={d}, hbar={hbar})",
                    vout,
                    1e-6,
                    vout <= 1e-6,
                    expected_fail=expected_fail,
                    note="exp(-c/hbar)=3e-5 not yet below 1e-6 at hbar=0.02; see ledger"
                    if expected_fail
                    else "",
                )
            )
    return out


def criterion_7_hbar_localized() -> list[CheckResult]:
    f = GaussianWeight(1.0)
    out = []
    # the first stationary-phase correction has an hbar-oscillating
    # coefficient, so the error is measured as a sup over a phase-sampling
    # neighbourhood of H = E/2 (dense enough to catch the envelope at the
    # smaller resolution too)
    h_grid = np.linspace(0.35, 0.65, 41) * E_REF
    for d in (1, 2):
        errs = {}
        for hb_t in (5e-3, 6.25e-4):
            hbar, _ = snap_hbar(E_REF, hb_t, d)
            cfg = OscillatorConfig(hbar, d)
            sup_diff = sup_val = 0.0
            for H in h_grid:
                ex = sum_smoothed(cfg, E_REF, 1.0, f, float(H))
                pr = law.hbar_localized_sum(cfg, E_REF, f, float(H))
                sup_diff = max(sup_diff, abs(ex - pr))
                sup_val = max(sup_val, abs(ex))
            errs[hb_t] = sup_diff / sup_val
        out.append(
            _check(f"hbar-localized rel err at hbar=5e-3 (d={d})", errs[5e-3], 0.05, errs[5e-3] <= 0.05,
                   note="sup over H/E in [0.4, 0.6]")
        )
        rate = law.rate_exponent(5e-3, errs[5e-3], 6.25e-4, errs[6.25e-4])
        out.append(
            _check(f"hbar-localized rate exponent (d={d})", rate, 0.25, abs(rate - 0.9) <= 0.25,
                   note="target 0.9 +/- 0.25")
        )
        # forbidden side at the smaller hbar, where the O(hbar^inf) decay
        # has passed below the hbar^3 proxy gate
        hbar, _ = snap_hbar(E_REF, 6.25e-4, d)
        cfg = OscillatorConfig(hbar, d)
        ex = abs(sum_smoothed(cfg, E_REF, 1.0, f, 1.2 * E_REF)) * (2 * math.pi * hbar) ** d
        out.append(
            _check(f"hbar-localized forbidden side (d={d})", ex, hbar**3, ex <= hbar**3,
                   note="checked at hbar/8 where the exponential regime holds")
        )
    return out


def criterion_8_smoothed_interface() -> list[CheckResult]:
    f = FejerWeight(10.0)
    sups = {}
    for hb_t in (1e-2, 1e-3):
        hbar, _ = snap_hbar(E_REF, hb_t, 1)
        cfg = OscillatorConfig(hbar, 1)
        e = 0.0
        for u in (-2.0, 0.0, 2.0):
            Hu = E_REF + u * (hbar / (2 * E_REF)) ** (2.0 / 3.0)
            r = sum_smoothed_report(cfg, E_REF, 2.0 / 3.0, f, Hu,
                                    tail_tol=FEJER_TAIL_TOL, n_limit=2_000_000)
            exact = (2 * math.pi * hbar) * r.value
            e = max(e, abs(exact - law.smoothed_airy_interface(u, E_REF, f)))
        sups[hb_t] = e
    rate = law.rate_exponent(1e-2, sups[1e-2], 1e-3, sups[1e-3])
    return [
        _check("smoothed 2/3-interface rate exponent", rate, 0.25, abs(rate - 2.0 / 3.0) <= 0.25,
               note="target 2/3 +/- 0.25"),
    ]


def criterion_9_sharp_interface(archived_verdict: Optional[dict] = None) -> list[CheckResult]:
    sups = {}
    for hb_t in (1e-2, 1e-3):
        hbar, _ = snap_hbar(E_REF, hb_t, 1)
        cfg = OscillatorConfig(hbar, 1)
        n_plus = math.ceil(hbar ** (-1.0 / 3.0))
        lam_plus = hbar ** (1.0 / 3.0) * n_plus
        errs = []
        for u in np.linspace(-3.0, 3.0, 13):
            Hu = E_REF + u * (hbar / (2 * E_REF)) ** (2.0 / 3.0)
            exact = (2 * math.pi * hbar) * sum_sharp_airy(cfg, E_REF, 0, n_plus, Hu)
            errs.append(abs(exact - law.sharp_airy_interface(u, E_REF, 0.0, lam_plus)))
        sups[hb_t] = max(errs)
    rate = law.rate_exponent(1e-2, sups[1e-2], 1e-3, sups[1e-3])
    out = [
        _check("sharp 2/3-interface rate exponent", rate, 0.2, rate >= 0.2, note="gate >= 0.2"),
    ]
    verdict = resolve_conventions_data()
    ok = (
        verdict["c_e"]["chosen"] == "4_over_E"
        and verdict["smoothed_bulk_prefactor"]["chosen"] == "2pi"
    )
    out.append(_check("convention verdict resolves", 1.0 if ok else 0.0, 1.0, ok))
    if archived_verdict is not None:
        same = archived_verdict == verdict
        out.append(_check("verdict matches archived copy byte-for-byte", 1.0 if same else 0.0, 1.0, same))
    return out


# ---------------------------------------------------------------------------
# 10-12. Empirical measure, special functions, stationary phase
# ---------------------------------------------------------------------------


def criterion_10_empirical() -> list[CheckResult]:
    out = []
    for d in (1, 2, 3):
        cfg = OscillatorConfig(0.1, d)
        total = abel_total(cfg, 1.0, width=50.0)
        out.append(
            _check(f"Abel-smoothed unit mass (d={d})", abs(total - 1.0), 1e-3, abs(total - 1.0) <= 1e-3)
        )
        slope = envelope_growth_exponent(cfg, 1.0, 1000, 10000)
        tgt = 0.5 * (d - 1) - 0.25
        out.append(
            _check(f"envelope growth exponent (d={d})", slope, 0.1, abs(slope - tgt) <= 0.1,
                   note=f"target {tgt:+.2f} +/- 0.1")
        )
    return out


def criterion_11_special_functions(seed: int = 20240811) -> list[CheckResult]:
    out = []
    # ODE residual |Ai'' - z Ai| on [-10, 10] by 5-point differences; step
    # balances the h^4 truncation term against roundoff amplification
    zs = np.linspace(-10.0, 10.0, 81)
    step = 5e-3
    worst = 0.0
    for z in zs:
        vals = [airy_ai(z + k * step) for k in (-2, -1, 0, 1, 2)]
        d2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * step * step)
        worst = max(worst, abs(d2 - z * vals[2]))
    out.append(_check("Airy ODE residual on [-10,10]", worst, 1e-8, worst <= 1e-8))
    # branch overlap
    band = np.concatenate([
        np.linspace(AIRY_OVERLAP_BAND[0], AIRY_OVERLAP_BAND[1], 7),
        -np.linspace(AIRY_OVERLAP_BAND[0], AIRY_OVERLAP_BAND[1], 7),
    ])
    worst = max(
        abs(airy_ai(z, branch="series") - airy_ai(z, branch="asymptotic"))
        / abs(airy_ai(z, branch="series"))
        for z in band
    )
    out.append(_check("Airy branch overlap agreement", worst, 1e-11, worst <= 1e-11))
    v = abs(airy_tail(0.0) - 1.0 / 3.0)
    out.append(_check("integral of Ai over [0,inf) = 1/3", v, 1e-9, v <= 1e-9))
    # first Airy zero by bisection on the implementation itself
    lo, hi = -2.5, -2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if airy_ai(mid) * airy_ai(hi) <= 0:
            lo = mid
        else:
            hi = mid
    zero = 0.5 * (lo + hi)
    v = abs(zero - (-2.3381))
    out.append(_check("first Airy zero near -2.3381", v, 1e-4, v <= 1e-4))
    # Laguerre recurrence residual on randomized parameters, evaluated in
    # scaled arithmetic so the deep-underflow range stays meaningful
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 400))
        alpha = int(rng.integers(0, 5))
        x = float(rng.uniform(0.0, 1e4))
        lm = weighted_laguerre(LaguerreParams(n - 1, alpha, x))
        l0 = weighted_laguerre(LaguerreParams(n, alpha, x))
        lp = weighted_laguerre(LaguerreParams(n + 1, alpha, x))
        resid = lp * (n + 1.0) - l0 * (2.0 * n + alpha + 1.0 - x) + lm * (n + alpha)
        if resid.is_zero:
            continue
        log_scale = max(s.log2_abs() for s in (lm, l0, lp) if not s.is_zero)
        worst = max(worst, 2.0 ** (resid.log2_abs() - log_scale))
    out.append(_check("Laguerre recurrence residual (randomized)", worst, 1e-12, worst <= 1e-12))
    return out


def criterion_12_stationary_phase() -> list[CheckResult]:
    def amp(t):
        return math.exp(-((t - math.pi) ** 2))

    rels = {}
    for h in (0.01, 0.001):
        lead = stationary_phase_leading(math.cos, amp, math.pi, h)
        ts = np.linspace(math.pi - 2.5, math.pi + 2.5, 800001)
        direct = np.trapezoid(
            np.exp(1j * np.cos(ts) / h) * np.exp(-((ts - math.pi) ** 2)), ts
        ) / math.sqrt(2 * math.pi * h)
        rels[h] = abs(lead - direct) / abs(direct)
    improvement = rels[0.01] / rels[0.001]
    return [
        _check("stationary phase model agreement at h=0.01", rels[0.01], 0.03, rels[0.01] <= 0.03),
        _check("stationary phase O(h) improvement at h/10", improvement, 5.0, improvement >= 5.0,
               note="gate >= 5 (O(h) predicts ~10)"),
    ]


# ---------------------------------------------------------------------------
# Convention resolution experiment
# ---------------------------------------------------------------------------


def resolve_conventions_data() -> dict:
    """Run both candidates of every ambiguous constant against exact sums.

    Deterministic (no randomness, fixed summation orders); the returned
    structure serializes byte-identically across runs.
    """
    E = E_REF
    # (a) Airy argument scale C_E via sharp 2/3-windows, d in {1, 2}
    c_e_errors: dict = {form: {} for form in law.C_E_FORMS}
    for d in (1, 2):
        for hb_t in (1e-2, 1e-3):
            hbar, _ = snap_hbar(E, hb_t, d)
            cfg = OscillatorConfig(hbar, d)
            n_plus = math.ceil(hbar ** (-1.0 / 3.0))
            lam_plus = hbar ** (1.0 / 3.0) * n_plus
            for form in law.C_E_FORMS:
                worst = 0.0
                for u in (-2.0, 0.0, 2.0):
                    Hu = E + u * (hbar / (2 * E)) ** (2.0 / 3.0)
                    exact = (2 * math.pi * hbar) ** d * sum_sharp_airy(cfg, E, 0, n_plus, Hu)
                    pred = law.sharp_airy_interface(u, E, 0.0, lam_plus, c_e_form=form)
                    worst = max(worst, abs(exact - pred))
                c_e_errors[form][f"d={d},hbar={hbar:.6g}"] = worst
    c_e_choice = min(
        law.C_E_FORMS, key=lambda fm: max(c_e_errors[fm].values())
    )

    # (b) smoothed-bulk prefactor via fixed-scale Gaussian sums
    pf_errors: dict = {pf: {} for pf in law.BULK_PREFACTORS}
    g = GaussianWeight(1.0)
    for d in (1, 2):
        for hb_t in (1e-2, 1e-3):
            hbar, _ = snap_hbar(E, hb_t, d)
            cfg = OscillatorConfig(hbar, d)
            exact = sum_smoothed(cfg, 0.0, 0.0, g, 0.3)
            for pf in law.BULK_PREFACTORS:
                pred = law.smoothed_bulk_leading(cfg, g, 0.3, prefactor=pf)
                pf_errors[pf][f"d={d},hbar={hbar:.6g}"] = abs(exact - pred) / abs(pred)
    pf_choice = min(law.BULK_PREFACTORS, key=lambda pf: max(pf_errors[pf].values()))

    # (c) hbar-localized branch constants: re-derived vs quoted
    el_errors: dict = {v: {} for v in law.ELEVELLOC_VARIANTS}
    f = GaussianWeight(1.0)
    for d in (1, 2):
        hbar, _ = snap_hbar(E, 5e-3, d)
        cfg = OscillatorConfig(hbar, d)
        sup_val = 0.0
        diffs = {v: 0.0 for v in law.ELEVELLOC_VARIANTS}
        for he in (0.4, 0.5, 0.6):
            ex = sum_smoothed(cfg, E, 1.0, f, he * E)
            sup_val = max(sup_val, abs(ex))
            for v in law.ELEVELLOC_VARIANTS:
                pr = law.hbar_localized_sum(cfg, E, f, he * E, constants=v)
                diffs[v] = max(diffs[v], abs(ex - pr))
        for v in law.ELEVELLOC_VARIANTS:
            el_errors[v][f"d={d},hbar={hbar:.6g}"] = diffs[v] / sup_val
    el_choice = min(law.ELEVELLOC_VARIANTS, key=lambda v: max(el_errors[v].values()))

    def fmt(errs):
        return {k: {kk: float(f"{vv:.6e}") for kk, vv in v.items()} for k, v in errs.items()}

    return {
        "c_e": {
            "chosen": c_e_choice,
            "meaning": {"4_over_E": "C_E = (4/E)^(1/3)", "E_over_4": "C_E = (E/4)^(1/3)"},
            "errors": fmt(c_e_errors),
            "note": "statement and proof of the 2/3-interface laws quote reciprocal "
                    "forms; the sharp-window comparison selects the proof's form",
        },
        "smoothed_bulk_prefactor": {
            "chosen": pf_choice,
            "meaning": {"2pi": "(2 pi hbar)^-d", "pi": "(pi hbar)^-d"},
            "errors": fmt(pf_errors),
            "note": "losing candidate is off by exactly 2^d; winner's error is O(hbar^2)",
        },
        "hbar_localized_constants": {
            "chosen": el_choice,
            "meaning": {
                "resolved": "prefactor hbar^(-d+1/2) (2pi)^(-d-1/2) E^(-1/2) H_E^(-d/2) "
                            "(H_E^-1 - 1)^(-1/4), branch phase -(pm2)(pi/4 + 2H sqrt(H_E^-1-1)/hbar)",
                "displayed": "prefactor hbar^(-d+1) (2E)^(-1/2) (2pi)^(-d) H_E^(-d/2) "
                             "(H_E^-1 - 1)^(-1/4), branch phase +(pm2)(pi/4 - 4E/hbar)",
            },
            "errors": fmt(el_errors),
            "note": "erratum record: the quoted constants miss a sqrt(pi hbar) in the "
                    "prefactor and the H-dependence of the branch phase; the re-derived "
                    "variant is validated against the exact smoothed sums",
        },
    }


CRITERIA: dict[int, Callable[[], list[CheckResult]]] = {
    1: criterion_1_oracle_equivalence,
    2: criterion_2_norm_identities,
    3: criterion_3_fig1,
    4: criterion_4_fig2,
    5: criterion_5_airy_individual,
    6: criterion_6_bulk_window,
    7: criterion_7_hbar_localized,
    8: criterion_8_smoothed_interface,
    9: criterion_9_sharp_interface,
    10: criterion_10_empirical,
    11: criterion_11_special_functions,
    12: criterion_12_stationary_phase,
}


def all_criteria() -> dict[int, list[CheckResult]]:
    return {k: fn() for k, fn in CRITERIA.items()}
