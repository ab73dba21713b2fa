"""Command line front end producing plot-ready CSV tables.

Usage::

    mimo-tradeoff sweep-antennas|tradeoff-curve|optimize|validate \\
        --config scenario.json [--seed S] [--trials T] [--out table.csv]

Every output starts with ``#``-prefixed ``key=value`` lines holding the
fully resolved scenario so a table can be regenerated from itself.
"""

import argparse
import csv
import io
import math
import sys

from . import analytic, montecarlo, optimize
from .errors import ConfigError, DomainError, ScenarioError
from .scenario import Scenario, Sweep, load_scenario, POWER_KEYS, SYSTEM_KEYS

__all__ = ["main", "run_command", "dbm_to_watt", "watt_to_dbm", "COMMANDS"]

DEFAULT_RHO_STEPS = 200


def dbm_to_watt(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watt_to_dbm(watt):
    return 10.0 * math.log10(watt) + 30.0


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _header_lines(command, scenario, extra=()):
    cfg, pm = scenario.system, scenario.power
    lines = [("command", command)]
    lines += [(k, getattr(cfg, k)) for k in SYSTEM_KEYS]
    lines += [(k, getattr(pm, k)) for k in POWER_KEYS]
    lines += [("q1", pm.q1), ("q2", pm.q2)]
    if scenario.sweep is not None:
        s = scenario.sweep
        lines.append(("sweep", f"{s.variable}:{_fmt(s.start)}:{_fmt(s.stop)}:{s.steps}"))
    lines += [("trials", scenario.trials), ("master_seed", scenario.master_seed)]
    lines += list(extra)
    # beta and the circuit powers are model defaults, so absolute EE values
    # only compare within this tool
    lines.append(("absolute_units", "model defaults, not comparable to published figures"))
    return [f"# {k}={_fmt(v)}" for k, v in lines]


def _render(header, columns, rows):
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _resolved_sweep(scenario, variable):
    cfg = scenario.system
    sweep = scenario.sweep
    if sweep is None:
        if variable == "n":
            sweep = Sweep("n", cfg.K, cfg.M_t, max(2, cfg.M_t - cfg.K + 1))
        else:
            sweep = Sweep("rho_d", 0.0, cfg.rho_d_max, DEFAULT_RHO_STEPS)
        sweep.validate(cfg)
    elif sweep.variable != variable:
        raise ConfigError(f"this command sweeps {variable!r}, scenario sweeps {sweep.variable!r}")
    return scenario.replace(sweep=sweep)


def cmd_sweep_antennas(scenario, workers=1):
    scenario = _resolved_sweep(scenario, "n")
    cfg, pm = scenario.system, scenario.power
    rows = []
    for n in scenario.sweep.values():
        p = analytic.evaluate_point(cfg, pm, n=n)
        rows.append((p.n, p.se, p.ee, p.q_total))
    n_star, ee_star = optimize.optimal_antennas(cfg, pm)
    extra = [("optimal_n", n_star), ("optimal_ee", ee_star)]
    return _render(_header_lines("sweep-antennas", scenario, extra),
                   ["n", "se", "ee", "q_total"], rows)


def cmd_tradeoff_curve(scenario, workers=1):
    scenario = _resolved_sweep(scenario, "rho_d")
    cfg, pm = scenario.system, scenario.power
    rows = []
    for rho in scenario.sweep.values():
        p = analytic.evaluate_point(cfg, pm, rho_d=rho)
        rows.append((p.rho_d, p.se, p.ee, p.q_total))
    opt = optimize.optimal_power(cfg, pm)
    peak = analytic.evaluate_point(cfg, pm, rho_d=opt.rho_star)
    extra = [("optimal_rho_d", opt.rho_star), ("optimal_se", peak.se),
             ("optimal_ee", peak.ee), ("boundary", opt.boundary or "interior")]
    return _render(_header_lines("tradeoff-curve", scenario, extra),
                   ["rho_d", "se", "ee", "q_total"], rows)


def cmd_optimize(scenario, workers=1):
    cfg, pm = scenario.system, scenario.power
    steps = DEFAULT_RHO_STEPS
    if scenario.sweep is not None and scenario.sweep.variable == "rho_d":
        steps = scenario.sweep.steps
    best = optimize.joint_optimize(cfg, pm)
    front = optimize.pareto_front(cfg, pm, rho_grid=steps)
    rows = [("optimum", best.n, best.rho_d, best.se, best.ee, best.q_total)]
    rows += [("pareto", p.n, p.rho_d, p.se, p.ee, p.q_total) for p in front]
    extra = [("pareto_rho_steps", steps), ("pareto_points", len(front))]
    return _render(_header_lines("optimize", scenario, extra),
                   ["kind", "n", "rho_d", "se", "ee", "q_total"], rows)


def cmd_validate(scenario, workers=1):
    plan = montecarlo.TrialPlan(scenario.master_seed, scenario.trials,
                                scenario.system, scenario.power)
    gain = montecarlo.validate_gain_expectation(plan, workers=workers)
    cap = montecarlo.validate_average_capacity(plan, workers=workers)
    rows = []
    for name, res in (("gain_sum", gain), ("capacity", cap)):
        s = res.empirical
        rows.append((name, res.analytic, s.mean, s.std_dev, s.ci95_half_width,
                     s.trials, res.rel_error))
    extra = [("capacity_jensen_reference", cap.jensen_reference),
             ("capacity_jensen_gap", cap.jensen_gap)]
    return _render(_header_lines("validate", scenario, extra),
                   ["quantity", "analytic", "mc_mean", "std_dev", "ci95_half_width",
                    "trials", "rel_error"], rows)


COMMANDS = {
    "sweep-antennas": cmd_sweep_antennas,
    "tradeoff-curve": cmd_tradeoff_curve,
    "optimize": cmd_optimize,
    "validate": cmd_validate,
}


def run_command(command: str, scenario: Scenario, workers=1) -> str:
    """Run one command and return its CSV text."""
    return COMMANDS[command](scenario, workers=workers)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mimo-tradeoff",
        description="EE/SE trade-off of a massive MIMO downlink with antenna selection.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON scenario file")
        p.add_argument("--seed", type=int, help="override master_seed")
        p.add_argument("--trials", type=int, help="override the Monte Carlo trial count")
        p.add_argument("--out", help="output CSV path (default: scenario output_path or stdout)")
        p.add_argument("--rho-dbm", type=float, help="override rho_d, given in dBm")
        p.add_argument("--workers", type=int, default=1, help="Monte Carlo worker threads")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.config)
        changes = {}
        if args.seed is not None:
            changes["master_seed"] = args.seed
        if args.trials is not None:
            changes["trials"] = args.trials
        if args.rho_dbm is not None:
            changes["system"] = scenario.system.replace(rho_d=dbm_to_watt(args.rho_dbm))
        if changes:
            scenario = scenario.replace(**changes)
        text = run_command(args.command, scenario, workers=args.workers)
    except (ScenarioError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out = args.out or scenario.output_path
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
