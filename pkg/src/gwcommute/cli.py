"""Command-line entry point.

Subcommands: hermite, verify-identity, verify-estimate, constants,
kernel-norms, cgl, suite.  Exit codes: 0 all checks passed, 1 at least one
check failed (failing rows are still written, flagged pass=false), 2
configuration/argument error.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from importlib import resources

from . import __version__, catalog, config
from .cgl import (
    CGLConfig,
    DEFAULT_SMALLNESS,
    decay_bounded,
    decay_records,
    fit_loglog_slope,
    ratio_bounded,
    simulate,
    weighted_records,
)
from .commutator import identity_reports, lemma_B2_identity
from .config import ConfigError, SuiteConfig, parse_suite_config
from .estimates import (
    ExponentTriple,
    constant_A,
    constant_A_tilde,
    kernel_moment_bound_report,
    verify_lipschitz_commutator,
    verify_radial_remark,
    verify_theorem_1_2,
)
from .hermite import format_hermite, hermite_closed_form
from .reporting import (
    ESTIMATE_COLUMNS,
    IDENTITY_COLUMNS,
    config_hash,
    format_exponent,
    format_value,
    render_csv,
    write_atomic,
)

_EXIT_PASS = 0
_EXIT_FAIL = 1
_EXIT_CONFIG = 2


def _emit(text: str, out_path) -> None:
    if out_path:
        write_atomic(out_path, text)
    else:
        sys.stdout.write(text)


def _realize(spec: catalog.TestFunctionSpec, dim: int, points: int,
             half_width: float, seed_offset: int = 0):
    if spec.kind == "bandlimited" and seed_offset:
        spec = dataclasses.replace(spec, seed=spec.seed + seed_offset)
    phi = spec.realize(dim, points, half_width)
    from .grid import boundary_mass_fraction

    fraction = boundary_mass_fraction(phi)
    if fraction > 1e-12:
        raise ConfigError(
            f"test function {spec.id!r} has boundary mass {fraction:.2e} on this grid"
        )
    return phi


def cmd_hermite(args) -> int:
    alpha = config.parse_multiindex(args.alpha)
    print(format_hermite(hermite_closed_form(alpha, args.flavor)))
    return _EXIT_PASS


def cmd_verify_identity(args) -> int:
    alpha = config.parse_multiindex(args.alpha)
    if alpha.order < 1:
        raise ConfigError("need |alpha| >= 1")
    omega = config.check_omega(config.parse_complex(args.omega))
    points, half_width = config.parse_grid(args.grid)
    spec = catalog.get_entry(args.testfn)
    phi = _realize(spec, alpha.dim, points, half_width)
    reports = identity_reports(alpha, omega, phi, testfn=args.testfn,
                               tol=args.tolerance)
    if args.with_shift:
        for j in range(1, alpha.dim + 1):
            reports.append(
                lemma_B2_identity(alpha, j, omega, phi, testfn=args.testfn,
                                  tol=args.tolerance)
            )
    tag = config_hash(f"verify-identity {args.alpha} {args.omega} "
                      f"{args.testfn} {args.grid} {args.tolerance}")
    _emit(render_csv(IDENTITY_COLUMNS, [r.row(IDENTITY_COLUMNS) for r in reports], tag),
          args.out)
    return _EXIT_PASS if all(r.passed for r in reports) else _EXIT_FAIL


def cmd_verify_estimate(args) -> int:
    omega = config.check_omega(config.parse_complex(args.omega))
    points, half_width = config.parse_grid(args.grid)
    triple = ExponentTriple(config.parse_exponent(args.p), config.parse_exponent(args.q))
    spec = catalog.get_entry(args.testfn)
    phi = _realize(spec, args.dim, points, half_width)
    reports = [verify_theorem_1_2(args.m, triple, omega, phi, testfn=args.testfn)]
    if args.radial:
        reports.append(verify_radial_remark(args.m, triple, omega, phi,
                                            testfn=args.testfn))
    tag = config_hash(f"verify-estimate {args.dim} {args.m} {args.p} {args.q} "
                      f"{args.omega} {args.testfn} {args.grid}")
    _emit(render_csv(ESTIMATE_COLUMNS, [r.row(ESTIMATE_COLUMNS) for r in reports], tag),
          args.out)
    return _EXIT_PASS if all(r.passed for r in reports) else _EXIT_FAIL


def _parse_float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def cmd_constants(args) -> int:
    n = args.n
    m_values = [int(v) for v in args.m_list.split(",")]
    r_values = [config.parse_exponent(v) for v in args.r_list.split(",")]
    thetas = [config.check_theta(v) for v in _parse_float_list(args.theta_list)]
    columns = ["n", "m", "r", "theta", "A", "A_tilde"]
    rows = []
    for m in m_values:
        for r in r_values:
            for theta in thetas:
                rows.append([
                    str(n), str(m), format_exponent(r), format_value(theta),
                    format_value(constant_A(n, m, r, theta)),
                    format_value(constant_A_tilde(n, m, r, theta)),
                ])
    tag = config_hash(f"constants {n} {args.m_list} {args.r_list} {args.theta_list}")
    if args.out:
        write_atomic(args.out, render_csv(columns, rows, tag))
    else:
        widths = [max(len(r[i]) for r in rows + [columns]) for i in range(len(columns))]
        print("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
        for row in rows:
            print("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    return _EXIT_PASS


def cmd_kernel_norms(args) -> int:
    points, half_width = config.parse_grid(args.grid)
    betas = [config.parse_multiindex(b) for b in args.beta_list.split(",")]
    r_values = [config.parse_exponent(v) for v in args.r_list.split(",")]
    thetas = [config.check_theta(v) for v in _parse_float_list(args.theta_list)]
    columns = ["beta", "r", "theta", "norm", "bound", "pass"]
    rows, ok = [], True
    for beta in betas:
        for r in r_values:
            for theta in thetas:
                rep = kernel_moment_bound_report(beta, theta, r, points, half_width)
                ok = ok and rep.passed
                rows.append([
                    beta.to_str(), format_exponent(r), format_value(theta),
                    format_value(rep.lhs), format_value(rep.rhs),
                    format_value(rep.passed),
                ])
    tag = config_hash(f"kernel-norms {args.beta_list} {args.r_list} "
                      f"{args.theta_list} {args.grid}")
    _emit(render_csv(columns, rows, tag), args.out)
    return _EXIT_PASS if ok else _EXIT_FAIL


def _build_cgl_config(section: config.CGLSection) -> CGLConfig:
    comp = catalog.GaussianComponent(sigma=section.sigma, amplitude=section.eps)
    spec = catalog.TestFunctionSpec(id="cgl-u0", kind="gaussian", components=(comp,))
    u0 = spec.realize(1, section.points, section.half_width)
    return CGLConfig(
        nu=section.nu,
        lam=section.lam,
        p_exponent=section.p_exponent,
        u0=u0,
        dt=section.dt,
        horizon=section.horizon,
        smallness=DEFAULT_SMALLNESS,
    )


def _run_cgl(section: config.CGLSection, prefix: str, tag: str) -> int:
    if section.horizon < 2.0:
        raise ConfigError("cgl horizon must be >= 2 (probes anchor at t = 1)")
    try:
        cfg = _build_cgl_config(section)
    except ValueError as exc:
        raise ConfigError(str(exc))
    run = simulate(cfg)
    decay = decay_records(run)
    weighted = weighted_records(run, section.m, section.q)
    decay_rows = [
        [format_value(rec.t), format_exponent(rec.r), format_value(rec.value)]
        for rec in decay
    ]
    weighted_rows = [
        [format_value(rec.t), format_value(rec.w), format_value(rec.ratio)]
        for rec in weighted
    ]
    write_atomic(f"{prefix}_decay.csv", render_csv(["t", "r", "record"], decay_rows, tag))
    write_atomic(f"{prefix}_weighted.csv",
                 render_csv(["t", "W", "ratio"], weighted_rows, tag))
    write_atomic(f"{prefix}.plt", _gnuplot_script(prefix, section.m, tag))
    slope = fit_loglog_slope(weighted, cfg.horizon / 4.0, cfg.horizon)
    ok = (
        decay_bounded(decay)
        and ratio_bounded(weighted)
        and slope <= section.m / 2.0 + 0.1
    )
    print(f"cgl: slope={slope:.4f} (target <= {section.m / 2 + 0.1:.2f}), "
          f"boundary_max={run.boundary_max:.3e}, pass={str(ok).lower()}")
    return _EXIT_PASS if ok else _EXIT_FAIL


def _gnuplot_script(prefix: str, m: int, tag: str) -> str:
    return "\n".join([
        f"# gw-commute {__version__} {tag}",
        'set datafile separator ","',
        "set key left bottom",
        "set logscale xy",
        'set xlabel "1+t"',
        f'set ylabel "weighted norms (m={m})"',
        f'plot "{prefix}_weighted.csv" skip 1 using (1+$1):2 with lines title "W(t)", \\',
        f'     "{prefix}_weighted.csv" skip 1 using (1+$1):3 with lines title "W/(1+t^{{m/2}})"',
        "",
    ])


def cmd_cgl(args) -> int:
    points, half_width = config.parse_grid(args.grid)
    section = config.CGLSection(
        nu=config.check_omega(config.parse_complex(args.nu)),
        lam=config.parse_complex(getattr(args, "lam")),
        p_exponent=args.p,
        eps=args.eps,
        sigma=args.sigma,
        horizon=args.T,
        dt=args.dt,
        m=args.m,
        q=config.parse_exponent(args.q),
        points=points,
        half_width=half_width,
    )
    tag = config_hash(
        f"cgl {args.nu} {getattr(args, 'lam')} {args.p} {args.eps} {args.sigma} "
        f"{args.T} {args.dt} {args.m} {args.q} {args.grid}"
    )
    return _run_cgl(section, args.out, tag)


def _suite_identity(cfg: SuiteConfig, tag: str, out_dir: str) -> bool:
    sec = cfg.identity
    reports = []
    for name in sec.testfns:
        phi = _realize(catalog.get_entry(name), sec.dim, sec.points,
                       sec.half_width, seed_offset=cfg.seed)
        for alpha in sec.alphas:
            for omega in sec.omegas:
                reports.extend(
                    identity_reports(alpha, omega, phi, testfn=name,
                                     tol=sec.tolerance)
                )
    rows = [r.row(IDENTITY_COLUMNS) for r in reports]
    write_atomic(f"{out_dir}/identity.csv", render_csv(IDENTITY_COLUMNS, rows, tag))
    return all(r.passed for r in reports)


def _suite_estimate(cfg: SuiteConfig, tag: str, out_dir: str) -> bool:
    sec = cfg.estimate
    reports = []
    for name in sec.testfns:
        phi = _realize(catalog.get_entry(name), sec.dim, sec.points,
                       sec.half_width, seed_offset=cfg.seed)
        for m in sec.m_values:
            for p, q in sec.pq_pairs:
                triple = ExponentTriple(p, q)
                for omega in sec.omegas:
                    reports.append(verify_theorem_1_2(m, triple, omega, phi,
                                                      testfn=name))
                    if sec.radial:
                        reports.append(verify_radial_remark(m, triple, omega, phi,
                                                            testfn=name))
    if sec.lipschitz:
        entries = catalog.lipschitz_entries(sec.dim, sec.points, sec.half_width)
        phi = _realize(catalog.get_entry(sec.testfns[0]), sec.dim, sec.points,
                       sec.half_width, seed_offset=cfg.seed)
        p, q = sec.pq_pairs[0]
        triple = ExponentTriple(p, q)
        for label, eta, bound in entries:
            for omega in sec.omegas:
                reports.append(
                    verify_lipschitz_commutator(eta, bound, triple, omega, phi,
                                                testfn=label)
                )
    rows = [r.row(ESTIMATE_COLUMNS) for r in reports]
    write_atomic(f"{out_dir}/estimate.csv", render_csv(ESTIMATE_COLUMNS, rows, tag))
    return all(r.passed for r in reports)


def _suite_constants(cfg: SuiteConfig, tag: str, out_dir: str) -> bool:
    sec = cfg.constants
    columns = ["n", "m", "r", "theta", "A", "A_tilde"]
    rows = []
    for m in sec.m_values:
        for r in sec.r_values:
            for theta in sec.thetas:
                rows.append([
                    str(sec.dim), str(m), format_exponent(r), format_value(theta),
                    format_value(constant_A(sec.dim, m, r, theta)),
                    format_value(constant_A_tilde(sec.dim, m, r, theta)),
                ])
    write_atomic(f"{out_dir}/constants.csv", render_csv(columns, rows, tag))
    return True


def _suite_kernel_norms(cfg: SuiteConfig, tag: str, out_dir: str) -> bool:
    sec = cfg.kernel_norms
    columns = ["beta", "r", "theta", "norm", "bound", "pass"]
    rows, ok = [], True
    for beta in sec.betas:
        for r in sec.r_values:
            for theta in sec.thetas:
                rep = kernel_moment_bound_report(beta, theta, r, sec.points, sec.half_width)
                ok = ok and rep.passed
                rows.append([
                    beta.to_str(), format_exponent(r), format_value(theta),
                    format_value(rep.lhs), format_value(rep.rhs),
                    format_value(rep.passed),
                ])
    write_atomic(f"{out_dir}/kernel_norms.csv", render_csv(columns, rows, tag))
    return ok


def cmd_suite(args) -> int:
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
    else:
        text = (
            resources.files("gwcommute")
            .joinpath("data/default_suite.cfg")
            .read_text()
        )
    cfg = parse_suite_config(text)
    tag = config_hash(cfg.raw_text)
    if not cfg.harnesses:
        return _EXIT_PASS
    os.makedirs(args.out_dir, exist_ok=True)
    ok = True
    for name in cfg.harnesses:
        if name == "identity":
            good = _suite_identity(cfg, tag, args.out_dir)
        elif name == "estimate":
            good = _suite_estimate(cfg, tag, args.out_dir)
        elif name == "constants":
            good = _suite_constants(cfg, tag, args.out_dir)
        elif name == "kernel-norms":
            good = _suite_kernel_norms(cfg, tag, args.out_dir)
        else:
            good = _run_cgl(cfg.cgl, f"{args.out_dir}/cgl", tag) == _EXIT_PASS
        print(f"suite harness {name}: {'pass' if good else 'FAIL'}")
        ok = ok and good
    return _EXIT_PASS if ok else _EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gw-commute",
        description="Verification harnesses for monomial-weight commutators "
        "with the Gauss-Weierstrass semigroup.",
    )
    parser.add_argument("--version", action="version", version=f"gw-commute {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_her = sub.add_parser("hermite", help="print a Hermite polynomial exactly")
    p_her.add_argument("--alpha", required=True, help="multi-index, dot-separated")
    p_her.add_argument("--flavor", choices=("h", "H"), default="h")
    p_her.set_defaults(func=cmd_hermite)

    p_id = sub.add_parser("verify-identity",
                          help="cross-check the three commutator evaluators")
    p_id.add_argument("--alpha", required=True)
    p_id.add_argument("--omega", required=True, metavar="RE,IM")
    p_id.add_argument("--testfn", required=True)
    p_id.add_argument("--grid", default="512,16", metavar="N,L")
    p_id.add_argument("--tolerance", type=float, default=1e-6)
    p_id.add_argument("--with-shift", action="store_true",
                      help="also check the index-shift identity per axis")
    p_id.add_argument("--out", default=None)
    p_id.set_defaults(func=cmd_verify_identity)

    p_est = sub.add_parser("verify-estimate",
                           help="check the weighted commutator estimate")
    p_est.add_argument("--dim", type=int, default=1)
    p_est.add_argument("--m", type=int, required=True)
    p_est.add_argument("--p", required=True)
    p_est.add_argument("--q", required=True)
    p_est.add_argument("--omega", required=True, metavar="RE,IM")
    p_est.add_argument("--testfn", required=True)
    p_est.add_argument("--grid", default="512,16", metavar="N,L")
    p_est.add_argument("--radial", action="store_true",
                       help="also check the radial-weight variant")
    p_est.add_argument("--out", default=None)
    p_est.set_defaults(func=cmd_verify_estimate)

    p_con = sub.add_parser("constants", help="tabulate A and A~")
    p_con.add_argument("--n", type=int, default=1)
    p_con.add_argument("--m-list", default="1,2,3")
    p_con.add_argument("--r-list", default="1,2,inf")
    p_con.add_argument("--theta-list", default="0,0.3,0.6,0.9,1.2")
    p_con.add_argument("--out", default=None)
    p_con.set_defaults(func=cmd_constants)

    p_ker = sub.add_parser("kernel-norms",
                           help="weighted kernel norms against the moment bound")
    p_ker.add_argument("--beta-list", default="1,2")
    p_ker.add_argument("--r-list", default="1,2")
    p_ker.add_argument("--theta-list", default="0,0.3,0.6,0.9,1.2")
    p_ker.add_argument("--grid", default="512,16", metavar="N,L")
    p_ker.add_argument("--out", default=None)
    p_ker.set_defaults(func=cmd_kernel_norms)

    p_cgl = sub.add_parser("cgl", help="Ginzburg-Landau decay/growth experiment")
    p_cgl.add_argument("--nu", default="1,0", metavar="RE,IM")
    p_cgl.add_argument("--lambda", dest="lam", default="-1,0", metavar="RE,IM")
    p_cgl.add_argument("--p", type=float, default=4.0)
    p_cgl.add_argument("--eps", type=float, default=0.01)
    p_cgl.add_argument("--sigma", type=float, default=1.0)
    p_cgl.add_argument("--T", type=float, default=10.0)
    p_cgl.add_argument("--dt", type=float, default=0.01)
    p_cgl.add_argument("--m", type=int, default=1)
    p_cgl.add_argument("--q", default="1")
    p_cgl.add_argument("--grid", default="2048,64", metavar="N,L")
    p_cgl.add_argument("--out", required=True, metavar="PREFIX")
    p_cgl.set_defaults(func=cmd_cgl)

    p_suite = sub.add_parser("suite", help="run the harnesses from a config file")
    p_suite.add_argument("--config", default=None,
                         help="INI config; bundled default when omitted")
    p_suite.add_argument("--out-dir", default=".")
    p_suite.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return _EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
