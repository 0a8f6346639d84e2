"""Command-line surface.

Subcommands run verification suites and emit figure-reproduction / scan data
as CSV (plus a rendered PNG next to it) and JSON reports.  Flags override a
plain key=value config file; experiments are deterministic for a fixed spec,
and the exit code is 0 iff every tolerance-bearing check passed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import asymptotic_laws as law
from . import verification as verif
from .oscillator import OscillatorConfig, snap_hbar, wigner_eigenspace_radial
from .reporting import RunReport, Timer, render_plot, write_csv
from .weyl_sums import (
    SharpAiry,
    SharpBulk,
    SingleLevel,
    Smoothed,
    parse_weight,
    sum_sharp_airy,
    sum_sharp_bulk,
    sum_smoothed_report,
    envelope_growth_exponent,
    wigner_levels,
)

DESK_SCALE_HBAR = 1e-4


def _read_config(path: str) -> dict:
    """Plain key = value file; '#' starts a comment; keys use flag names
    with '-' or '_' interchangeably."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SystemExit(f"config: cannot parse line {raw!r} (expected key = value)")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wignerweyl",
        description="Wigner-Weyl sums of the isotropic oscillator: exact kernels, "
        "asymptotic laws, and their numerical verification.",
    )
    p.add_argument("--config", help="key = value file supplying flag defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, hbar=0.01):
        sp.add_argument("--hbar", type=float, default=hbar)
        sp.add_argument("--dim", type=int, default=1)
        sp.add_argument("--energy", type=float, default=0.5)
        sp.add_argument("--out", help="CSV output path (plot lands next to it)")
        sp.add_argument("--json-report", help="JSON report output path")
        sp.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
        sp.add_argument("--seed", type=int, default=20240801)
        sp.add_argument("--force", action="store_true",
                        help="allow hbar below the desk-scale guard of 1e-4")

    sp = sub.add_parser("eval", help="evaluate one Weyl sum at one phase point")
    common(sp)
    sp.add_argument("--window", default="single:0",
                    help="single:N | bulk:E1,E2 | airy:NMINUS,NPLUS | smoothed")
    sp.add_argument("--gamma", type=float, default=1.0, choices=[1.0, 2.0 / 3.0, 0.0])
    sp.add_argument("--weight", default="gaussian:1.0")
    sp.add_argument("--hpoint", type=float, required=True, help="H(x, xi) of the evaluation point")

    sp = sub.add_parser("scan-interface", help="sharp 2/3-window sum vs Airy law over a u grid")
    common(sp)
    sp.add_argument("--n-minus", type=int, default=0)
    sp.add_argument("--n-plus", type=int, default=0, help="0 means ceil(hbar^(-1/3))")
    sp.add_argument("--u-min", type=float, default=-6.0)
    sp.add_argument("--u-max", type=float, default=6.0)
    sp.add_argument("--points", type=int, default=121)

    sp = sub.add_parser("scan-bulk", help="sharp bulk window sum vs leading constant over an H grid")
    common(sp, hbar=0.02)
    sp.add_argument("--e1", type=float, default=0.0)
    sp.add_argument("--e2", type=float, default=0.5)
    sp.add_argument("--h-min", type=float, default=0.05)
    sp.add_argument("--h-max", type=float, default=0.9)
    sp.add_argument("--points", type=int, default=121)

    sp = sub.add_parser("verify-norms", help="trace/L2/orthogonality identities")
    common(sp)
    sp = sub.add_parser("verify-laws", help="full law-vs-exact criterion battery")
    common(sp)
    sp.add_argument("--criteria", default="",
                    help="comma-separated criterion numbers (default: all twelve)")

    sp = sub.add_parser("fig1", help="single-level radial profile reproduction")
    common(sp, hbar=0.0099)
    sp.add_argument("--points", type=int, default=2000)

    sp = sub.add_parser("fig2", help="bulk window sum against its integrated Airy limit")
    common(sp, hbar=0.0196)
    sp.add_argument("--u-min", type=float, default=-6.0)
    sp.add_argument("--u-max", type=float, default=6.0)
    sp.add_argument("--points", type=int, default=241)

    sp = sub.add_parser("resolve-conventions",
                        help="decide the ambiguous constants against exact sums")
    common(sp)

    sp = sub.add_parser("envelope-fit", help="growth exponent of the level envelope")
    common(sp, hbar=0.1)
    sp.add_argument("--hpoint", type=float, default=1.0)
    sp.add_argument("--n-min", type=int, default=1000)
    sp.add_argument("--n-max", type=int, default=10000)

    return p


def _guard_hbar(args):
    if getattr(args, "hbar", 1.0) < DESK_SCALE_HBAR and not getattr(args, "force", False):
        raise SystemExit(
            f"hbar={args.hbar} is below the desk-scale guard {DESK_SCALE_HBAR}; "
            "pass --force to run anyway"
        )


def _emit(args, report: RunReport, csv_payload=None, plot_payload=None):
    report.print_lines()
    if csv_payload is not None and args.out:
        write_csv(args.out, *csv_payload[:2], metadata=csv_payload[2])
        print(f"wrote {args.out}")
        if plot_payload is not None and not args.no_plot:
            png = str(Path(args.out).with_suffix(".png"))
            render_plot(png, *plot_payload)
            print(f"wrote {png}")
    if args.json_report:
        report.write_json(args.json_report)
        print(f"wrote {args.json_report}")
    return 0 if report.all_passed else 1


def _cmd_eval(args) -> int:
    _guard_hbar(args)
    cfg = OscillatorConfig(args.hbar, args.dim)
    kind, _, rest = args.window.partition(":")
    H = args.hpoint
    trunc = None
    if kind == "single":
        window = SingleLevel(int(rest or 0))
        value = wigner_eigenspace_radial(cfg, window.N, H)
    elif kind == "bulk":
        e1, e2 = (float(s) for s in rest.split(","))
        window = SharpBulk(e1, e2)
        value = sum_sharp_bulk(cfg, e1, e2, H)
    elif kind == "airy":
        nm, npl = (int(s) for s in rest.split(","))
        window = SharpAiry(args.energy, nm, npl)
        value = sum_sharp_airy(cfg, args.energy, nm, npl, H)
    elif kind == "smoothed":
        w = parse_weight(args.weight)
        window = Smoothed(args.energy, args.gamma, w)
        r = sum_smoothed_report(cfg, args.energy, args.gamma, w, H)
        value, trunc = r.value, r.last_level
    else:
        raise SystemExit(f"eval: unknown window kind {kind!r}")
    with Timer() as t:
        pass
    report = RunReport(
        "eval",
        {"hbar": cfg.hbar, "dim": cfg.d, "window": args.window, "H": H},
        summary={"value": value, "scaled_value": value * (2 * math.pi * cfg.hbar) ** cfg.d,
                 "truncation_level": trunc},
        wall_clock_s=t.elapsed,
    )
    print(f"value = {value:.16e}")
    print(f"(2 pi hbar)^d * value = {value * (2 * math.pi * cfg.hbar) ** cfg.d:.16e}")
    return _emit(args, report)


def _cmd_scan_interface(args) -> int:
    _guard_hbar(args)
    E = args.energy
    hbar, n0 = snap_hbar(E, args.hbar, args.dim)
    cfg = OscillatorConfig(hbar, args.dim)
    n_plus = args.n_plus or math.ceil(hbar ** (-1.0 / 3.0))
    lam_minus = hbar ** (1.0 / 3.0) * args.n_minus
    lam_plus = hbar ** (1.0 / 3.0) * n_plus
    us = np.linspace(args.u_min, args.u_max, args.points)
    scale = (2 * math.pi * hbar) ** cfg.d
    rows = []
    sup = 0.0
    for u in us:
        H = E + u * (hbar / (2 * E)) ** (2.0 / 3.0)
        exact = scale * sum_sharp_airy(cfg, E, args.n_minus, n_plus, H)
        pred = law.sharp_airy_interface(u, E, lam_minus, lam_plus)
        sup = max(sup, abs(exact - pred))
        rows.append((u, H, exact, pred, abs(exact - pred)))
    with Timer() as t:
        pass
    report = RunReport(
        "scan-interface",
        {"hbar": hbar, "hbar_requested": args.hbar, "dim": cfg.d, "energy": E,
         "n_minus": args.n_minus, "n_plus": n_plus, "points": args.points},
        summary={"max_abs_error": sup},
        wall_clock_s=t.elapsed,
    )
    meta = {"experiment": "scan-interface", "hbar": hbar, "dim": cfg.d, "energy": E,
            "n_minus": args.n_minus, "n_plus": n_plus}
    cols = ["u", "H", "exact_scaled_sum", "airy_prediction", "abs_error"]
    print(f"max |exact - prediction| = {sup:.6g}")
    return _emit(args, report, (cols, rows, meta),
                 (us, {"exact": [r[2] for r in rows], "prediction": [r[3] for r in rows]},
                  "u", "(2 pi hbar)^d * window sum", "sharp 2/3-window vs Airy law"))


def _cmd_scan_bulk(args) -> int:
    _guard_hbar(args)
    cfg = OscillatorConfig(args.hbar, args.dim)
    hs = np.linspace(args.h_min, args.h_max, args.points)
    scale = (2 * math.pi * cfg.hbar) ** cfg.d
    rows = []
    for H in hs:
        exact = scale * sum_sharp_bulk(cfg, args.e1, args.e2, float(H))
        lead = scale * law.bulk_leading(cfg, args.e1, args.e2, float(H)) if H not in (args.e1, args.e2) else float("nan")
        rows.append((H, exact, lead, abs(exact - lead)))
    with Timer() as t:
        pass
    report = RunReport(
        "scan-bulk",
        {"hbar": cfg.hbar, "dim": cfg.d, "e1": args.e1, "e2": args.e2, "points": args.points},
        summary={"max_abs_error_interior": max(r[3] for r in rows if args.e1 < r[0] < args.e2)},
        wall_clock_s=t.elapsed,
    )
    meta = {"experiment": "scan-bulk", "hbar": cfg.hbar, "dim": cfg.d,
            "e1": args.e1, "e2": args.e2}
    cols = ["H", "scaled_sum", "leading", "abs_error"]
    return _emit(args, report, (cols, rows, meta),
                 (hs, {"scaled sum": [r[1] for r in rows], "leading": [r[2] for r in rows]},
                  "H", "(2 pi hbar)^d * window sum", "bulk window vs leading constant"))


def _cmd_verify_norms(args) -> int:
    with Timer() as t:
        results = verif.criterion_2_norm_identities(seed=args.seed)
    report = RunReport("verify-norms", {"seed": args.seed}, wall_clock_s=t.elapsed)
    report.add_checks(results)
    return _emit(args, report)


def _cmd_verify_laws(args) -> int:
    wanted = (
        sorted(int(s) for s in args.criteria.split(",") if s.strip())
        if args.criteria
        else sorted(verif.CRITERIA)
    )
    report = RunReport("verify-laws", {"criteria": wanted, "seed": args.seed})
    with Timer() as t:
        for k in wanted:
            print(f"-- criterion {k} --")
            results = verif.CRITERIA[k]()
            report.add_checks(results)
            for r in results:
                print("  " + r.line())
    report.wall_clock_s = t.elapsed
    if args.json_report:
        report.write_json(args.json_report)
        print(f"wrote {args.json_report}")
    n_bad = sum(1 for c in report.checks if not c["passed"] and not c["expected_fail"])
    print(f"verify-laws: {len(report.checks)} checks, {n_bad} unexpected failures")
    return 0 if report.all_passed else 1


def _cmd_fig1(args) -> int:
    _guard_hbar(args)
    with Timer() as t:
        hbar, n, rho, H, w, prof = verif.fig1_profile(args.hbar, args.dim, args.energy, args.points)
        checks = verif.criterion_3_fig1() if (args.dim, args.energy) == (1, 0.5) else []
    cosine = np.full_like(rho, np.nan)
    inner = (H > 1e-3 * args.energy) & (H < args.energy * 0.999)
    cfg = OscillatorConfig(hbar, args.dim)
    cosine[inner] = [
        (2 * math.pi * hbar) ** cfg.d * (h / args.energy) ** (0.5 * cfg.d)
        * law.bulk_cosine(cfg, args.energy, float(h))
        for h in H[inner]
    ]
    report = RunReport(
        "fig1",
        {"hbar": hbar, "hbar_requested": args.hbar, "level": n, "dim": args.dim,
         "energy": args.energy, "points": args.points},
        summary={"peak": float(np.max(prof)), "hbar_power_third": hbar ** (1 / 3)},
        wall_clock_s=t.elapsed,
    )
    report.add_checks(checks)
    meta = {
        "experiment": "fig1 (single-level radial profile)",
        "hbar": hbar, "level": n, "dim": args.dim, "energy": args.energy,
        "profile": "(2 pi hbar)^d (H/E)^(d/2) W_level; the radial weight makes the "
                   "quoted peak ~hbar^(1/3) and bulk amplitude ~hbar^(1/2) literal",
    }
    rows = list(zip(rho, H, w, prof, cosine))
    cols = ["rho", "H", "wigner", "scaled_profile", "bulk_cosine_law"]
    return _emit(args, report, (cols, rows, meta),
                 (rho, {"scaled profile": prof, "interior cosine law": cosine},
                  "rho = sqrt(2H)", "scaled profile", f"single-level profile, hbar={hbar:.5f}"))


def _cmd_fig2(args) -> int:
    _guard_hbar(args)
    with Timer() as t:
        hbar, us, exact, pred = verif.fig2_profile(args.hbar, args.dim, args.energy, args.points)
        checks = verif.criterion_4_fig2() if (args.dim, args.energy) == (1, 0.5) else []
    report = RunReport(
        "fig2",
        {"hbar": hbar, "hbar_requested": args.hbar, "dim": args.dim,
         "energy": args.energy, "points": args.points},
        summary={"sup_abs_error": float(np.max(np.abs(exact - pred)))},
        wall_clock_s=t.elapsed,
    )
    report.add_checks(checks)
    meta = {
        "experiment": "fig2 (bulk window sum vs integrated Airy limit)",
        "hbar": hbar, "dim": args.dim, "energy": args.energy,
        "window": "half-open [0, E) with E on the spectrum",
    }
    rows = list(zip(us, exact, pred, np.abs(exact - pred)))
    cols = ["u", "exact_scaled_sum", "airy_limit", "abs_error"]
    return _emit(args, report, (cols, rows, meta),
                 (us, {"exact scaled sum": exact, "airy limit": pred},
                  "u", "(2 pi hbar)^d * bulk sum", f"bulk interface, hbar={hbar:.5f}"))


def _cmd_resolve_conventions(args) -> int:
    with Timer() as t:
        verdict = verif.resolve_conventions_data()
    out = args.out or "convention_verdict.json"
    Path(out).write_text(json.dumps(verdict, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}")
    report = RunReport(
        "resolve-conventions",
        {"out": out},
        summary={k: v["chosen"] for k, v in verdict.items()},
        wall_clock_s=t.elapsed,
    )
    ok = (
        verdict["c_e"]["chosen"] == "4_over_E"
        and verdict["smoothed_bulk_prefactor"]["chosen"] == "2pi"
        and verdict["hbar_localized_constants"]["chosen"] == "resolved"
    )
    report.add_checks(
        [verif.CheckResult("verdict matches the shipped constants", 1.0 if ok else 0.0, 1.0, ok)]
    )
    for k, v in verdict.items():
        print(f"  {k}: {v['chosen']}")
    if args.json_report:
        report.write_json(args.json_report)
        print(f"wrote {args.json_report}")
    return 0 if report.all_passed else 1


def _cmd_envelope_fit(args) -> int:
    _guard_hbar(args)
    cfg = OscillatorConfig(args.hbar, args.dim)
    with Timer() as t:
        slope = envelope_growth_exponent(cfg, args.hpoint, args.n_min, args.n_max)
        vals = np.abs(wigner_levels(cfg, args.hpoint, args.n_max))
    target = 0.5 * (args.dim - 1) - 0.25
    report = RunReport(
        "envelope-fit",
        {"hbar": args.hbar, "dim": args.dim, "H": args.hpoint,
         "n_min": args.n_min, "n_max": args.n_max},
        summary={"slope": slope, "target": target},
        wall_clock_s=t.elapsed,
    )
    report.add_checks(
        [verif.CheckResult(
            f"envelope exponent vs (d-1)/2 - 1/4 (d={args.dim})",
            slope, 0.1, abs(slope - target) <= 0.1, note=f"target {target:+.2f} +/- 0.1",
        )]
    )
    ns = np.arange(args.n_min, args.n_max + 1)
    rows = list(zip(ns.tolist(), vals[args.n_min:].tolist()))
    meta = {"experiment": "envelope-fit", "hbar": args.hbar, "dim": args.dim,
            "H": args.hpoint, "fitted_slope": slope, "target": target}
    return _emit(args, report, (["N", "abs_wigner"], rows, meta),
                 (ns, {"|W_N|": vals[args.n_min:]}, "N", "|W_N(p)|",
                  f"level envelope, slope {slope:+.3f}"))


_COMMANDS = {
    "eval": _cmd_eval,
    "scan-interface": _cmd_scan_interface,
    "scan-bulk": _cmd_scan_bulk,
    "verify-norms": _cmd_verify_norms,
    "verify-laws": _cmd_verify_laws,
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "resolve-conventions": _cmd_resolve_conventions,
    "envelope-fit": _cmd_envelope_fit,
}


def main(argv=None) -> int:
    parser = _build_parser()
    # config file values become defaults; explicit flags override them
    args, _ = parser.parse_known_args(argv)
    if args.config:
        overrides = _read_config(args.config)
        known = {a.dest for a in parser._actions}
        for sp_action in parser._subparsers._group_actions:
            for sp in sp_action.choices.values():
                for a in sp._actions:
                    known.add(a.dest)
                unknown = set(overrides) - known
                if unknown:
                    raise SystemExit(f"config: unknown keys {sorted(unknown)}")
                sp.set_defaults(**{k: _coerce(v) for k, v in overrides.items()})
        args = parser.parse_args(argv)
    else:
        args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _coerce(v: str):
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    if v.lower() in ("true", "false"):
        return v.lower() == "true"
    return v


if __name__ == "__main__":
    raise SystemExit(main())
