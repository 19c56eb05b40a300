"""Command-line dispatcher.

Grammar: deltasite <command> [--model PATH] [flags] [--format {json,text}]
[--seed N].  Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
model errors.  DELTASITE_SEED sets the default seed; flags always win.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import sheaves, sites, stochastic, tropical
from .errors import ClosureError, DeltasiteError, ModelError
from .filtration import check_operad_action
from .model_io import ModelDescription, load_model
from .reports import Report
from .roofs import RoofCategory, build_structural_roof_topology, verify_roof_category

USAGE_EXIT = 2


def _default_seed() -> int:
    raw = os.environ.get("DELTASITE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltasite",
        description="Finite event sites, topology verification, and delta-calculus checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=False):
        if model:
            p.add_argument("--model", required=True, help="model description file")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--seed", type=int, default=_default_seed())

    p = sub.add_parser("check-site", help="verify Grothendieck topology axioms")
    p.add_argument("--topology", required=True,
                   choices=("operadic", "probability", "structural"))
    common(p, model=True)

    p = sub.add_parser("check-roofs", help="verify the roof category and its topology")
    common(p, model=True)

    p = sub.add_parser("check-sheaf", help="sheaf gluing or transversal cone checks")
    p.add_argument("--mode", choices=("gluing", "cones"), default="gluing")
    p.add_argument("--kappa", type=float, default=3.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=10_000)
    common(p, model=True)

    p = sub.add_parser("simulate", help="simulate geometric Brownian motion")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--paths", type=int, default=1)
    common(p)

    p = sub.add_parser("verify-ito", help="delta-calculus identity and limit checks")
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--paths", type=int, default=200)
    common(p)

    p = sub.add_parser("tropicalize", help="tropical value of the log-SDE")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--with-markers", action="store_true")
    common(p)

    p = sub.add_parser("series", help="exact coefficients of the graded series")
    p.add_argument("--op", required=True, choices=("exp", "log", "paper-log"))
    p.add_argument("--order", type=int, required=True)
    common(p)

    return parser


# -- command implementations ----------------------------------------------------


def _copy_site_records(report: Report, axiom_report: sites.SiteAxiomReport):
    for r in axiom_report.records:
        report.add(r.check_id, r.instance, r.status == "pass", r.witness)


def cmd_check_site(args, model: ModelDescription, file_hash: str) -> Report:
    report = Report("check-site", file_hash,
                    {"topology": args.topology, "seed": args.seed})
    for violation in model.category.check_axioms():
        report.add("category-axioms", violation, False)
    if args.topology == "structural":
        site = sites.build_tau_structural(model.category)
        _copy_site_records(report, sites.verify_grothendieck(site))
        return report
    F = model.require_filtration()
    if args.topology == "operadic":
        action = check_operad_action(F)
        for v in action.violations:
            report.add("operad-action", v, False)
        report.add("operad-coverage", f"{action.coverage:.4f}", None)
        filtered = sites.build_tau_operadic(F, model.category)
    else:
        P = model.require_measure()
        filtered = sites.build_tau_P(F, P, model.category)
    _copy_site_records(report, sites.verify_filtered(filtered))
    return report


def cmd_check_roofs(args, model: ModelDescription, file_hash: str) -> Report:
    report = Report("check-roofs", file_hash, {"seed": args.seed})
    for violation in model.category.check_axioms():
        report.add("category-axioms", violation, False)
    rc = RoofCategory(model.category)
    try:
        axiom = verify_roof_category(rc)
    except ClosureError as exc:
        report.add("roof-axioms", "composition closure", False, str(exc))
        return report
    for check, instance, status in axiom.records:
        report.add(check, instance, status == "pass")
    roof_site = build_structural_roof_topology(rc)
    _copy_site_records(report, sites.verify_grothendieck(roof_site))
    return report


def cmd_check_sheaf(args, model: ModelDescription, file_hash: str) -> Report:
    report = Report("check-sheaf", file_hash,
                    {"mode": args.mode, "kappa": args.kappa, "sigma": args.sigma,
                     "paths": args.paths, "seed": args.seed})
    if args.mode == "gluing":
        targets = [sites.build_tau_structural(model.category)]
        if model.filtration is not None and model.measure is not None:
            filtered = sites.build_tau_P(model.filtration, model.measure, model.category)
            targets.extend(filtered.site_at(p) for p in model.filtration.index)
        for site in targets:
            presheaf = sheaves.constant_presheaf(site, values=(0.0, 1.0))
            glue = sheaves.check_sheaf_condition(presheaf)
            for rec in glue.records:
                report.add("gluing", f"{site.label}: {rec.family}",
                           rec.status == "pass", rec.witness)
            for note in glue.notes:
                report.add("gluing-note", f"{site.label}: {note}", None)
        return report
    F = model.filtration
    if F is not None and len(F.index.base_times) >= 2:
        t0, t1 = float(F.index.base_times[0]), float(F.index.base_times[-1])
    else:
        t0, t1 = 0.0, 1.0
    cone = sheaves.transversal_cone_check(args.sigma, args.kappa, t0, t1,
                                          n_paths=args.paths, seed=args.seed)
    report.add("cone-containment",
               f"kappa={args.kappa} on [{t0},{t1}]", cone.passed,
               f"fraction={cone.fraction} expected={cone.expected} "
               f"threshold={cone.threshold}")
    return report


def cmd_simulate(args) -> Report:
    report = Report("simulate", None, {
        "alpha": args.alpha, "sigma": args.sigma, "x0": args.x0, "T": args.T,
        "steps": args.steps, "paths": args.paths, "seed": args.seed})
    params = stochastic.GBMParams(args.alpha, args.sigma, args.x0, args.T,
                                  args.steps, args.seed)
    if args.paths == 1:
        path = stochastic.simulate_gbm(params)
        report.add("terminal-value", f"X_T={path.terminal!r}", None)
        report.add("log-rate",
                   f"{math.log(path.terminal / args.x0) / args.T!r}", None)
    else:
        rates = stochastic.gbm_terminal_log_rates(params, args.paths)
        terminal_mean = float(np.mean(args.x0 * np.exp(rates * args.T)))
        report.add("mean-terminal", f"{terminal_mean!r}", None)
        if args.paths >= 30:
            est = stochastic.estimate_log_drift(rates)
            report.add("log-drift",
                       f"mean={est.mean!r} stderr={est.stderr!r}", None)
        else:
            report.add("log-drift", f"mean={float(np.mean(rates))!r}", None)
    return report


def cmd_verify_ito(args) -> Report:
    report = Report("verify-ito", None, {
        "alpha": args.alpha, "sigma": args.sigma, "x0": args.x0, "T": args.T,
        "steps": args.steps, "paths": args.paths, "seed": args.seed})
    seed, T, n = args.seed, args.T, args.steps

    # pathwise product rule on simulated pairs
    worst = 0.0
    for i in range(min(args.paths, 100)):
        x = stochastic.sample_brownian(T, n, seed, stream=2 * i)
        y = stochastic.sample_brownian(T, n, seed, stream=2 * i + 1)
        x = stochastic.DiscretePath(x.partition, 1.0 + x.values)
        y = stochastic.DiscretePath(y.partition, 1.0 + y.values)
        scale = max(float(np.max(np.abs(x.values * y.values))), 1.0)
        worst = max(worst, stochastic.check_product_rule(x, y) / scale)
    report.add("product-rule", f"max relative residual {worst!r}", worst <= 1e-10)

    # quadratic variation concentration
    qvs = []
    for i in range(args.paths):
        w = stochastic.sample_brownian(T, n, seed, stream=i)
        qvs.append(stochastic.quadratic_variation(w))
    band = 3.0 * math.sqrt(2.0 / n) * T
    hits = sum(1 for q in qvs if abs(q - T) <= band)
    frac = hits / len(qvs)
    report.add("quadratic-variation",
               f"{hits}/{len(qvs)} paths within {band!r} of T", frac >= 0.95)

    # Ito residual: quadratic case exact, cubic case shrinking with the mesh
    w = stochastic.sample_brownian(T, n, seed, stream=0)
    exact = stochastic.ito_residual("w2", w, quadratic_term="increments")
    scale = max(float(np.max(np.abs(w.values))) ** 2, 1.0)
    report.add("ito-w2-exact", f"residual {exact!r}", exact <= 1e-10 * scale)
    rms = []
    for steps in (n, 2 * n):
        acc = []
        for i in range(min(args.paths, 100)):
            wi = stochastic.sample_brownian(T, steps, seed + 1, stream=i)
            acc.append(stochastic.ito_residual("w3", wi) ** 2)
        rms.append(math.sqrt(math.fsum(acc) / len(acc)))
    ratio = rms[0] / rms[1] if rms[1] else float("inf")
    report.add("ito-w3-trend",
               f"RMS ratio per halving {ratio!r}", 1.15 <= ratio <= 1.85)

    # log drift of the simulated SDE
    params = stochastic.GBMParams(args.alpha, args.sigma, args.x0, T,
                                  max(1, n // 10), seed + 2)
    n_paths = max(args.paths, 30)
    rates = stochastic.gbm_terminal_log_rates(params, n_paths)
    est = stochastic.estimate_log_drift(rates)
    target = args.alpha - 0.5 * args.sigma ** 2
    lo, hi = est.interval
    report.add("log-drift",
               f"mean={est.mean!r} target={target!r} 3se={3 * est.stderr!r}",
               lo <= target <= hi)
    return report


def cmd_tropicalize(args) -> Report:
    report = Report("tropicalize", None, {
        "alpha": args.alpha, "sigma": args.sigma,
        "with_markers": args.with_markers, "seed": args.seed})
    value = tropical.tropicalize_log_sde(args.alpha, args.sigma,
                                         with_markers=args.with_markers)
    report.add("tropical-value", f"{float(value)!r}", None)
    if args.with_markers:
        plain = tropical.tropicalize_log_sde(args.alpha, args.sigma)
        report.add("marker-shift", f"{float(value - plain)!r}", None)
    return report


def cmd_series(args) -> Report:
    report = Report("series", None, {
        "op": args.op, "order": args.order, "seed": args.seed})
    if args.op == "exp":
        s = tropical.exp_series(args.order)
    elif args.op == "log":
        s = tropical.log_inverse_series(args.order)
    else:
        s = tropical.paper_log_series(args.order)
    report.add("coefficients", "[" + ", ".join(str(c) for c in s.coeffs) + "]", None)
    return report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("check-site", "check-roofs", "check-sheaf"):
            try:
                model, file_hash = load_model(args.model)
            except OSError as exc:
                print(f"error: cannot read model: {exc}", file=sys.stderr)
                return USAGE_EXIT
            except ModelError as exc:
                for path, message in exc.errors:
                    print(f"error: {path}: {message}", file=sys.stderr)
                return USAGE_EXIT
            handler = {"check-site": cmd_check_site,
                       "check-roofs": cmd_check_roofs,
                       "check-sheaf": cmd_check_sheaf}[args.command]
            report = handler(args, model, file_hash)
        elif args.command == "simulate":
            report = cmd_simulate(args)
        elif args.command == "verify-ito":
            report = cmd_verify_ito(args)
        elif args.command == "tropicalize":
            report = cmd_tropicalize(args)
        else:
            report = cmd_series(args)
    except ModelError as exc:
        for path, message in exc.errors:
            print(f"error: {path}: {message}", file=sys.stderr)
        return USAGE_EXIT
    except DeltasiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    sys.stdout.write(report.render(args.format))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
