"""Command line front end: ``opdisc cost|sweep|simulate|oracle``.

Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure,
4 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace

import numpy as np

from . import config as cfg
from .discrimination import (
    CostReport,
    entangled_cost,
    partition_cost,
    phase_spectrum,
    unentangled_cost,
)
from .errors import ConfigError, OpdiscError
from .measurement import simulate_error_rate
from .oracle import (
    MAX_EVALUATIONS,
    GridSpec,
    brute_force_min_transition,
    enumerate_partitions,
    grid_size,
    partition_table,
    verify_partition_inequality,
)

SWEEP_HEADER = ("axis", "unentangled_cost", "entangled_cost", "best_partition_cost")
ORACLE_TOL = 1e-2
SIGMA_BAND = 4.0


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_complex(z: complex) -> str:
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def build_config(args) -> cfg.ProblemConfig:
    if args.config:
        conf = cfg.load(args.config)
        if args.delta is not None:
            conf = conf.with_delta(args.delta)
    elif args.delta is not None:
        conf = cfg.ProblemConfig(
            cfg.OperatorSpec("identity", dim=2), cfg.OperatorSpec("phase_shift", delta=args.delta)
        )
    else:
        raise ConfigError("no operators given: pass --config FILE or --delta X", "arguments")
    changes = {}
    if args.prior is not None:
        if not 0.0 <= args.prior <= 1.0:
            raise ConfigError("prior must lie in [0, 1]", "--prior")
        changes["prior"] = args.prior
    if args.particles is not None:
        if args.particles < 1:
            raise ConfigError("particles must be a positive integer", "--particles")
        changes["particles"] = args.particles
    if args.strategy is not None:
        changes["strategy"] = cfg.parse_strategy(args.strategy, "--strategy")
    if args.dwell_time is not None:
        if "from_hamiltonian" in (conf.u1.kind, conf.u2.kind):
            conf = conf.with_dwell_time(args.dwell_time)
        else:
            conf = replace(conf, dwell_time=args.dwell_time)
    return replace(conf, **changes)


def render_cost(report: CostReport) -> str:
    pg = report.phase_gap
    lines = [
        f"strategy                {report.strategy} {report.partition}",
        f"particles               {report.particles}",
        f"prior                   {fmt(report.prior)}",
        f"phase gap               {fmt(pg.gap)}",
        f"eigenphase pair         {fmt(pg.theta_min)} {fmt(pg.theta_max)} (indices {pg.index_min}, {pg.index_max})",
        f"transition probability  {fmt(report.transition_probability)}",
        f"bayes cost              {fmt(report.bayes_cost)}",
    ]
    if report.probe is None:
        lines.append("optimal probe           any (operators indistinguishable)")
    else:
        amps = ", ".join(_fmt_complex(z) for z in report.probe.amplitudes)
        lines.append(f"optimal probe           [{amps}]")
    if pg.encloses_origin:
        lines.append(f"probe support           eigenvectors {list(pg.support)}")
    if report.moot:
        lines.append("note                    prior is 0 or 1; the decision is moot")
    return "\n".join(lines) + "\n"


def cmd_cost(args, out, err) -> int:
    conf = build_config(args)
    problem = conf.to_problem()
    report = partition_cost(problem, conf.strategy)
    if report.indistinguishable:
        err.write("warning: operators indistinguishable\n")
    out.write(_dump_json(report.to_dict()) if args.json else render_cost(report))
    return 0


def _axis_values(axis: str, start, stop, steps: int) -> list:
    if start is None or stop is None:
        raise ConfigError("sweep needs --start and --stop", "arguments")
    if steps < 1:
        raise ConfigError("steps must be at least 1", "--steps")
    values = [start] if steps == 1 else list(np.linspace(start, stop, steps))
    if axis == "N":
        ints = [int(round(v)) for v in values]
        if any(abs(i - v) > 1e-9 or i < 1 for i, v in zip(ints, values)):
            raise ConfigError("axis N needs positive integer grid points", "--start/--stop/--steps")
        return ints
    return [float(v) for v in values]


def sweep_rows(conf: cfg.ProblemConfig, axis: str, values) -> list[tuple[float, float, float, float]]:
    rows = []
    for v in values:
        if axis == "delta":
            c = conf.with_delta(v)
        elif axis == "N":
            c = replace(conf, particles=v)
        elif axis == "prior":
            if not 0.0 <= v <= 1.0:
                raise ConfigError("prior grid leaves [0, 1]", "--start/--stop")
            c = replace(conf, prior=v)
        elif axis == "t":
            if v <= 0:
                raise ConfigError("dwell time grid must be positive", "--start/--stop")
            c = conf.with_dwell_time(v)
        else:
            raise ConfigError(f"unknown axis {axis!r}", "--axis")
        problem = c.to_problem()
        pg = phase_spectrum(problem.u1, problem.u2, problem.tol)
        un = unentangled_cost(problem, gap=pg).bayes_cost
        ent = entangled_cost(problem, gap=pg).bayes_cost
        best = min(partition_cost(problem, p, gap=pg).bayes_cost for p in enumerate_partitions(problem.particles))
        rows.append((float(v), un, ent, best))
    return rows


def write_sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def read_sweep_csv(text: str) -> list[tuple[float, ...]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != SWEEP_HEADER:
        raise ConfigError(f"unexpected sweep header {header}", "line 1")
    return [tuple(float(x) for x in row) for row in reader]


def _emit(text: str, args, out):
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write CSV: {exc.strerror}", args.csv) from None
    else:
        out.write(text)


def cmd_sweep(args, out, err) -> int:
    conf = build_config(args)
    rows = sweep_rows(conf, args.axis, _axis_values(args.axis, args.start, args.stop, args.steps))
    if args.json:
        keys = SWEEP_HEADER
        out.write(_dump_json({"axis_name": args.axis, "rows": [dict(zip(keys, r)) for r in rows]}))
        if args.csv:
            _emit(write_sweep_csv(rows), args, out)
    else:
        _emit(write_sweep_csv(rows), args, out)
    return 0


def cmd_simulate(args, out, err) -> int:
    if args.trials < 1:
        raise ConfigError("trials must be at least 1", "--trials")
    conf = build_config(args)
    problem = conf.to_problem()
    res = simulate_error_rate(problem, conf.strategy, args.trials, args.seed)
    ok = res.within(SIGMA_BAND)
    if args.json:
        doc = res.to_dict()
        doc.update(deviation_sigmas=res.deviation_sigmas, passed=ok, band_sigmas=SIGMA_BAND)
        out.write(_dump_json(doc))
    else:
        out.write(
            f"strategy        {res.strategy}\n"
            f"trials          {res.trials}\n"
            f"seed            {res.seed}\n"
            f"errors          {res.errors}\n"
            f"empirical rate  {fmt(res.empirical_error_rate)} +- {fmt(res.std_error)}\n"
            f"analytic cost   {fmt(res.predicted_cost)}\n"
            f"deviation       {res.deviation_sigmas:.3f} sigma\n"
            f"result          {'PASS' if ok else 'FAIL'} ({SIGMA_BAND:g} sigma band)\n"
        )
    return 0


def cmd_oracle(args, out, err) -> int:
    conf = build_config(args)
    problem = conf.to_problem()
    if problem.dim > 4:
        raise ConfigError(f"oracle limited to dim ≤ 4, got dim {problem.dim}", "operators")
    if args.resolution < 2:
        raise ConfigError("resolution must be at least 2", "--resolution")
    grid = GridSpec(args.resolution, problem.dim)
    basis = args.basis
    if basis == "auto":
        basis = "computational" if grid_size(grid) <= MAX_EVALUATIONS else "eigen"
    brute, _ = brute_force_min_transition(problem.u1, problem.u2, grid, basis=basis)
    pg = phase_spectrum(problem.u1, problem.u2, problem.tol)
    analytic = pg.single_shot_overlap
    diff = brute - analytic
    ok = abs(diff) <= ORACLE_TOL

    within = problem.particles * pg.gap <= np.pi + 1e-12
    if within:
        table = verify_partition_inequality(problem)
    else:
        table = partition_table(problem)
    rows = [
        {
            "partition": [list(b) for b in r.partition.blocks],
            "transition_probability": r.transition_probability,
            "bayes_cost": r.bayes_cost,
        }
        for r in table.rows
    ]
    if args.json:
        out.write(_dump_json({
            "resolution": args.resolution,
            "basis": basis,
            "brute_force_min": brute,
            "analytic_min": analytic,
            "difference": diff,
            "passed": ok,
            "particles": problem.particles,
            "ordering_asserted": within,
            "partitions": rows,
        }))
    else:
        lines = [
            f"grid                  resolution {args.resolution}, {basis} basis",
            f"brute-force minimum   {fmt(brute)}",
            f"analytic cos^2(gap/2) {fmt(analytic)}",
            f"difference            {fmt(diff)}",
            f"result                {'PASS' if ok else 'FAIL'} (tolerance {ORACLE_TOL:g})",
            "",
            f"partitions of N={problem.particles} (cheapest first)"
            + ("" if within else "; N*gap > pi, ordering not asserted"),
        ]
        for r in rows:
            part = "[" + ",".join(f"({m},{n})" for m, n in r["partition"]) + "]"
            lines.append(f"  {part:<28} p={fmt(r['transition_probability'])}  cost={fmt(r['bayes_cost'])}")
        out.write("\n".join(lines) + "\n")
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("partition", "transition_probability", "bayes_cost"))
        for r in rows:
            w.writerow((json.dumps(r["partition"]), fmt(r["transition_probability"]), fmt(r["bayes_cost"])))
        _emit(buf.getvalue(), args, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="JSON problem definition")
    common.add_argument("--delta", type=float, help="phase shift angle in radians; u2 = diag(1, exp(2i delta))")
    common.add_argument("--prior", type=float, help="prior probability of u1")
    common.add_argument("--particles", "-N", type=int, help="number of probe particles")
    common.add_argument("--strategy", help="product | entangled | partition:MxK,MxK (block size x count)")
    common.add_argument("--dwell-time", type=float, help="time each particle spends in the box")
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--csv", metavar="PATH", help="write CSV output to PATH")

    parser = argparse.ArgumentParser(
        prog="opdisc",
        description="Minimum-error discrimination of two unitary operators. All angles are in radians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cost", parents=[common], help="analytic cost of one strategy")
    sw = sub.add_parser("sweep", parents=[common], help="costs along a parameter axis as CSV")
    sw.add_argument("--axis", choices=["delta", "N", "prior", "t"], required=True)
    sw.add_argument("--start", type=float)
    sw.add_argument("--stop", type=float)
    sw.add_argument("--steps", type=int, default=10)
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo check of the cost")
    sim.add_argument("--trials", type=int, default=100_000)
    sim.add_argument("--seed", type=int, default=0)
    orc = sub.add_parser("oracle", parents=[common], help="brute-force checks")
    orc.add_argument("--resolution", type=int, default=64)
    orc.add_argument("--basis", choices=["auto", "computational", "eigen"], default="auto")
    return parser


COMMANDS = {"cost": cmd_cost, "sweep": cmd_sweep, "simulate": cmd_simulate, "oracle": cmd_oracle}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out, err)
    except OpdiscError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
