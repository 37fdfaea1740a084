"""Command-line experiment runner.

Every command writes either CSV (``#``-prefixed unit/summary lines around a
plain comma-separated table) or JSON.  Output contains no timestamps, so the
same arguments and seed always reproduce the same bytes.
"""
import argparse
import json
import math
import sys

import numpy as np

from .beam import GaussianBeam, SpatialInterval
from .chebyshev import ProfileParams, envelope_region, p_broad, p_narrow, peak_widths
from .classify import ClassifierConfig, NoiseModel
from .demo2d import GridSpec, RadialBeam2D, three_beam_layout, grid_argmax, log_profile_grid
from .search import (
    PriorViolation,
    SearchConfig,
    fit_loglog_slope,
    multi_object_search,
    run_search,
    runtime_formula,
    saturated_prior,
    scaling_diagnostic,
    trial_rng,
)
from .su2 import BROADBAND, NARROWBAND, compose, transition_prob
from .synthesis import SequenceSpec, synth


class UsageError(Exception):
    pass


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "nan" if math.isnan(v) else "%.17g" % v
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return None if math.isnan(v) else v
    if isinstance(v, np.integer):
        return int(v)
    return v


class Table:
    def __init__(self, columns, units, rows, summary=None):
        self.columns = columns
        self.units = units
        self.rows = rows
        self.summary = summary or {}

    def render(self, fmt):
        if fmt == "json":
            doc = {
                "units": self.units,
                "columns": self.columns,
                "rows": [{c: _jsonable(v) for c, v in zip(self.columns, r)} for r in self.rows],
                "summary": {k: _jsonable(v) for k, v in self.summary.items()},
            }
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        lines = ["# units: " + ",".join(f"{c}[{self.units.get(c, '-')}]" for c in self.columns)]
        lines.append(",".join(self.columns))
        lines.extend(",".join(_fmt(v) for v in r) for r in self.rows)
        if self.summary:
            lines.append("# summary: " + ",".join(f"{k}={_fmt(v)}" for k, v in self.summary.items()))
        return "\n".join(lines) + "\n"


def _classifier(a, delta_b_sq=None):
    return ClassifierConfig(
        a.delta_b_sq if delta_b_sq is None else delta_b_sq, a.delta_m_sq, a.l
    )


def _search_config(a):
    c = _classifier(a)
    beam = GaussianBeam(lam=a.lam, tau=a.tau)
    if a.I0_width is None:
        I0 = saturated_prior(c, beam, L0=a.L0_target, center=a.I0_center)
    else:
        I0 = SpatialInterval(a.I0_center, a.I0_width)
    noise = NoiseModel() if a.tau_c is None else NoiseModel.depolarizing(a.tau_c)
    return SearchConfig(
        c, I0, M=a.M, K=a.K, noise=noise, beam=beam, trials=a.trials, seed=a.seed,
        scan_order=a.scan_order,
    )


def cmd_profile(a):
    delta_b = math.sqrt(a.delta_b_sq)
    spec = SequenceSpec(a.n, delta_b, a.variant)
    seq = synth(spec)
    params = ProfileParams(spec.L, delta_b)
    widths = peak_widths(params, math.sqrt(a.delta_m_sq))
    theta = np.linspace(0.0, 2.0 * np.pi, a.grid_points, endpoint=False)
    analytic = p_narrow(theta, params) if a.variant == NARROWBAND else p_broad(theta, params)
    unitary = transition_prob(compose(seq, theta))
    diff = np.abs(analytic - unitary)
    rows = []
    for t, pa, pu, dd in zip(theta, analytic, unitary, diff):
        # the envelope is defined for the narrowband peak at pi
        t_env = t if a.variant == NARROWBAND else t - np.pi
        rows.append((t, pa, pu, dd, envelope_region(t_env, widths).value))
    return Table(
        ["theta", "p_analytic", "p_unitary", "abs_diff", "envelope_region"],
        {"theta": "rad", "p_analytic": "prob", "p_unitary": "prob", "abs_diff": "prob"},
        rows,
        {"L": spec.L, "delta_b_sq": a.delta_b_sq, "variant": a.variant, "max_abs_diff": float(diff.max()),
         "theta_b": widths.theta_b, "theta_m": widths.theta_m, "ratio_R": widths.ratio_R},
    )


def cmd_phases(a):
    seq = synth(SequenceSpec(a.n, math.sqrt(a.delta_b_sq), a.variant))
    rows = [(k, phi) for k, phi in enumerate(seq.phases, start=1)]
    return Table(["index", "phase"], {"phase": "rad"}, rows,
                 {"L": seq.L, "variant": seq.label, "palindrome": seq.is_palindrome()})


def cmd_localize(a):
    cfg = _search_config(a)
    rng = trial_rng(a.seed, 0)
    x = a.position if a.position is not None else cfg.I0.lo + cfg.I0.width * rng.random()
    res = run_search(cfg, x, rng)
    rows = [
        (r.n, r.L_n, r.D, r.scanned, r.decision_d, r.interval_center, r.interval_width,
         r.cumulative_time, r.backtracks)
        for r in res.history
    ]
    return Table(
        ["n", "L_n", "D", "scanned", "decision_d", "interval_center", "interval_width",
         "cumulative_time", "backtracks"],
        {"interval_center": "lambda", "interval_width": "lambda", "cumulative_time": "tau"},
        rows,
        {"true_position": x, "L0": res.L0, "I0_center": cfg.I0.center, "I0_width": cfg.I0.width,
         "estimate": res.estimate_xe, "sigma_predicted": res.sigma_predicted,
         "contains_true": res.final_interval.contains(x), "total_time": res.ledger.total_time},
    )


def cmd_scaling(a):
    cfg = _search_config(a)
    Ms = a.M_list
    rows = scaling_diagnostic(cfg, Ms, a.trials)
    est = runtime_formula(cfg, max(Ms))
    exact_const = est.exact * est.omega_prime * est.sigma
    return Table(
        ["M", "sigma_empirical", "sigma_predicted", "t_mean", "t_formula", "slope_local",
         "backtracks_mean", "success_rate"],
        {"sigma_empirical": "lambda", "sigma_predicted": "lambda", "t_mean": "tau", "t_formula": "tau"},
        [(r.M, r.sigma_empirical, r.sigma_predicted, r.t_mean, r.t_formula, r.slope_local,
          r.backtracks_mean, r.success_rate) for r in rows],
        {"global_slope": fit_loglog_slope(rows), "E": est.E, "D": est.D,
         "t_omega_sigma_chain": est.heisenberg_constant, "t_omega_sigma_exact": exact_const},
    )


def _parse_beams(text):
    beams = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        parts = chunk.split(",")
        if len(parts) != 3:
            raise UsageError(f"beam spec {chunk!r} is not 'x,y,n'")
        x, y, n = parts
        beams.append(RadialBeam2D((float(x), float(y)), int(n)))
    return beams


def cmd_demo2d(a):
    delta_b = math.sqrt(a.delta_b_sq)
    if a.beams is None:
        beams = three_beam_layout(delta_b)
    else:
        beams = [RadialBeam2D(b.center, b.sequence_n, delta_b) for b in _parse_beams(a.beams)]
    if not beams:
        raise UsageError("demo2d needs at least one beam")
    h = a.half_width
    grid = GridSpec(-h, h, -h, h, a.grid_points, a.grid_points)
    field = log_profile_grid(beams, grid)
    xs, ys = grid.axes()
    rows = [(xs[i], ys[j], field[j, i]) for j in range(grid.ny) for i in range(grid.nx)]
    x, y, v = grid_argmax(field, grid)
    return Table(
        ["x", "y", "log_p_sum"], {"x": "lambda", "y": "lambda", "log_p_sum": "nats"}, rows,
        {"argmax_x": x, "argmax_y": y, "argmax_log_p_sum": v, "cell": grid.cell,
         "beams": " ".join(f"({b.center[0]:g};{b.center[1]:g};L={3**b.sequence_n})" for b in beams)},
    )


def cmd_multi(a):
    if not a.positions:
        raise UsageError("multi needs at least one --positions entry")
    cfg = _search_config(a)
    res = multi_object_search(cfg, a.positions, trial_rng(a.seed, 0))
    single = multi_object_search(cfg, a.positions[:1], trial_rng(a.seed, 0))
    rows = []
    for i, r in enumerate(res.results):
        inside = [j for j, x in enumerate(a.positions) if r.final_interval.contains(x)]
        rows.append((i, r.estimate_xe, r.final_interval.width, " ".join(map(str, inside))))
    return Table(
        ["index", "center", "width", "contains"], {"center": "lambda", "width": "lambda"}, rows,
        {"Q": len(a.positions), "delta_b_sq_used": res.delta_b_sq_used,
         "delta_b_sq_reduction": len(a.positions), "total_time": res.ledger.total_time,
         "single_object_time": single.ledger.total_time,
         "time_ratio": res.ledger.total_time / single.ledger.total_time},
    )


COMMANDS = {
    "profile": cmd_profile,
    "phases": cmd_phases,
    "localize": cmd_localize,
    "scaling": cmd_scaling,
    "demo2d": cmd_demo2d,
    "multi": cmd_multi,
}


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--out", default="-", help="output file, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--config", help="JSON file of flag values (dest names as keys)")

    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--n", type=int, default=2, help="nesting depth, L = 3**n")
    seq.add_argument("--delta-b-sq", type=float, default=1e-4)
    seq.add_argument("--variant", choices=(NARROWBAND, BROADBAND), default=NARROWBAND)

    srch = argparse.ArgumentParser(add_help=False)
    srch.add_argument("--delta-b-sq", type=float, default=1e-4)
    srch.add_argument("--delta-m-sq", type=float, default=0.5)
    srch.add_argument("--l", type=int, default=5)
    srch.add_argument("--K", type=int, default=3)
    srch.add_argument("--M", type=int, default=3)
    srch.add_argument("--I0-width", dest="I0_width", type=float, default=None,
                      help="prior width in lambda; default saturates the L0 bound")
    srch.add_argument("--I0-center", dest="I0_center", type=float, default=0.0)
    srch.add_argument("--L0-target", dest="L0_target", type=int, default=9,
                      help="L0 used to size the default prior")
    srch.add_argument("--tau-c", dest="tau_c", type=float, default=None)
    srch.add_argument("--lam", type=float, default=1.0)
    srch.add_argument("--tau", type=float, default=1.0)
    srch.add_argument("--scan-order", choices=("left", "center"), default="left")

    p = argparse.ArgumentParser(prog="coherent-imaging", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("profile", parents=[common, seq])
    sp.add_argument("--delta-m-sq", type=float, default=0.5)
    sp.add_argument("--grid-points", type=int, default=1024)
    sub.add_parser("phases", parents=[common, seq])
    sp = sub.add_parser("localize", parents=[common, srch])
    sp.add_argument("--position", type=float, default=None)
    sp = sub.add_parser("scaling", parents=[common, srch])
    sp.add_argument("--M-list", dest="M_list", type=_ints, default=[1, 2, 3, 4, 5])
    sp = sub.add_parser("demo2d", parents=[common])
    sp.add_argument("--delta-b-sq", type=float, default=1e-4)
    sp.add_argument("--beams", default=None, help="'x,y,n;x,y,n;...' (default: three-beam layout meeting at the origin)")
    sp.add_argument("--grid-points", type=int, default=401)
    sp.add_argument("--half-width", type=float, default=2.0)
    sp = sub.add_parser("multi", parents=[common, srch])
    sp.add_argument("--positions", type=_floats, default=[])
    return p, sub


def parse_args(argv):
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        subparser = sub.choices[args.command]
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            parser.error(f"cannot read config: {exc}")
        if not isinstance(cfg, dict):
            parser.error("config must be a flat JSON object")
        known = {a.dest for a in subparser._actions} - {"help", "config"}
        unknown = sorted(set(cfg) - known)
        if unknown:
            parser.error(f"unknown config keys: {', '.join(unknown)}")
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return parser, args


def main(argv=None):
    parser, args = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        table = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, PriorViolation):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = table.render(args.format)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
