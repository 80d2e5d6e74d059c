"""
Rate splitting and successive decoding: reproduction commands.

Subcommands: ``example1``, ``region``, ``split-sweep``, ``simulate``,
``switch-demo``. Exit codes: 0 success, 1 invalid input or refuted claim,
2 unsupported regime.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import files, interference, mcsim, ratesplit, switchsplit
from .prob import ProbVec, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2

SWEEP_FIELDS = ("i_a_y", "i_b_y_given_a", "i_b_y", "i_a_y_given_b", "i_x_y", "i_b_ya", "i_a_yb")


class _Fail(Exception):
    def __init__(self, msg, code=EXIT_INVALID):
        super().__init__(msg)
        self.code = code


def _write(path, text):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# -- example1 ----------------------------------------------------------------

def example1_text(rep: ratesplit.Example1Report) -> str:
    lines = [f"Example 1: uniform X on {{0,1,2,3}}, min split with epsilon = {rep.epsilon:g}",
             f"  p_a = {np.round(rep.p_a.probs, 6).tolist()}",
             f"  p_b = {np.round(rep.p_b.probs, 6).tolist()}",
             f"  rates (guarded): R_a = {rep.rates.R_a:.6f}, R_b = {rep.rates.R_b:.6f}", ""]
    for c in rep.claims:
        status = "confirmed" if c.confirmed else "REFUTED"
        if c.value is not None:
            name = c.name.split(c.relation)[0]
            lines.append(f"  {name}={c.value:.7f} {c.relation} {c.bound:g}  [{status}]")
        else:
            lines.append(f"  {c.name}  [{status}]")
    n = rep.subscript_note
    lines += ["", f"  note: bound '{n['bound']}' evaluates to "
                  f"{n['value_with_Y2']:.6f} with Y2 and {n['value_with_Y1']:.6f} with Y1; "
                  f"matches {n['matches']}"]
    return "\n".join(lines) + "\n"


def cmd_example1(args) -> int:
    rep = ratesplit.example1_report(epsilon=args.epsilon)
    if args.format == "json":
        _write(args.out, _dump(rep.to_dict()))
    else:
        _write(args.out, example1_text(rep))
    if not rep.all_confirmed:
        diff = "\n".join(f"- {c.name}: got {c.value}" if c.value is not None else f"- {c.name}"
                         for c in rep.refuted())
        sys.stderr.write("refuted claims:\n" + diff + "\n")
        return EXIT_INVALID
    return EXIT_OK


# -- region ------------------------------------------------------------------

def cmd_region(args) -> int:
    try:
        ic = interference.GaussianIC(args.P1, args.P2, args.N1, args.N2,
                                     args.g11, args.g12, args.g21, args.g22)
    except ValueError as exc:
        raise _Fail(str(exc))
    if args.grid < 2:
        raise _Fail("--grid must be at least 2")
    out = Path(args.out or ".")
    sd = interference.sdrs_region(ic, args.grid, include_mirror=args.include_mirror)
    _write(out / "sdrs_region.csv", interference.region_to_csv(sd))
    if args.raw:
        pts = interference.sdrs_corners(ic, args.grid, args.include_mirror)
        _write(out / "sdrs_corners.csv",
               "R1,R2\n" + "".join(f"{a:.12g},{b:.12g}\n" for a, b in pts))
    summary = {"ic": ic.to_dict(), "grid": args.grid, "include_mirror": args.include_mirror,
               "strong_interference": interference.strong_interference_check(ic)}
    code = EXIT_OK
    if summary["strong_interference"]:
        hk = interference.hk_strong_region(ic)
        _write(out / "hk_region.csv", interference.region_to_csv(hk))
        _write(out / "regions.svg", interference.regions_svg([hk, sd]))
        summary["compare"] = interference.region_compare(sd, hk).to_dict()
        summary["hk_bounds"] = dict(zip(("R1", "R2", "R1+R2"),
                                        interference.mac_bounds(ic).min(axis=0).tolist()))
    else:
        sys.stderr.write("warning: weak interference, HK curve omitted\n")
        _write(out / "regions.svg", interference.regions_svg([sd]))
        code = EXIT_UNSUPPORTED
    if args.format == "json":
        sys.stdout.write(_dump(summary))
    else:
        lines = [f"strong interference: {summary['strong_interference']}"]
        if "compare" in summary:
            c = summary["compare"]
            b = summary["hk_bounds"]
            lines += [f"HK bounds: R1 <= {b['R1']:.6f}, R2 <= {b['R2']:.6f}, "
                      f"R1+R2 <= {b['R1+R2']:.6f}",
                      f"contained={str(c['contained']).lower()} max_gap={c['max_gap']:.6f} "
                      f"witness=({c['witness'][0]:.6f}, {c['witness'][1]:.6f})"]
        sys.stdout.write("\n".join(lines) + "\n")
    return code


# -- split-sweep -------------------------------------------------------------

def sweep_to_csv(rows, n_channels) -> str:
    head = ["epsilon"] + [f"ch{k}_{f}" for k in range(n_channels) for f in SWEEP_FIELDS]
    lines = [",".join(head)]
    for eps, analyses in rows:
        vals = [f"{eps:.12g}"] + [f"{getattr(a, f):.15g}" for a in analyses for f in SWEEP_FIELDS]
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


def sweep_from_csv(text):
    """Inverse of :func:`sweep_to_csv`: ``[(epsilon, [SplitAnalysis, ...]), ...]``."""
    rows = [ln.split(",") for ln in text.splitlines() if ln.strip()]
    head, body = rows[0], rows[1:]
    n_ch = (len(head) - 1) // len(SWEEP_FIELDS)
    out = []
    for r in body:
        vals = list(map(float, r))
        analyses = []
        for k in range(n_ch):
            chunk = vals[1 + k * len(SWEEP_FIELDS): 1 + (k + 1) * len(SWEEP_FIELDS)]
            analyses.append(ratesplit.SplitAnalysis(*chunk))
        out.append((vals[0], analyses))
    return out


def cmd_split_sweep(args) -> int:
    p_x = files.load_probvec(args.px)
    chans = [files.load_channel(c) for c in args.channel]
    if args.grid < 2:
        raise _Fail("--grid must be at least 2")
    try:
        rows = ratesplit.sweep_epsilon(p_x, chans, args.grid)
    except ValidationError as exc:
        raise _Fail(str(exc))
    _write(args.out, sweep_to_csv(rows, len(chans)))
    return EXIT_OK


# -- simulate ----------------------------------------------------------------

def spec_from_config(cfg, ch) -> mcsim.CodebookSpec:
    code = cfg["code"]
    where = "config: field $.code"
    p_x = (files.probvec_from_dict(code["p_x"], where + ".p_x") if "p_x" in code
           else ProbVec.uniform(ch.input_support))
    budget = cfg.get("budget", mcsim.DEFAULT_BUDGET)
    seed = cfg.get("codebook_seed", 0)
    n0 = cfg["n_list"][0]
    if code["type"] == "unsplit":
        if "rate" not in code:
            raise _Fail(where + ": 'rate' is required for an unsplit code")
        return mcsim.CodebookSpec.unsplit(n0, code["rate"], p_x, seed, budget)
    for k in ("epsilon", "R_a", "R_b"):
        if k not in code:
            raise _Fail(f"{where}: {k!r} is required for a min_split code")
    split = ratesplit.make_split(p_x, code["epsilon"])
    return mcsim.CodebookSpec(n0, ratesplit.RatePair(code["R_a"], code["R_b"]), split, seed, budget)


def cmd_simulate(args) -> int:
    cfg = files.load_sim_config(args.config)
    ch = files.channel_from_dict(cfg["channel"], f"{args.config}: channel")
    spec = spec_from_config(cfg, ch)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    try:
        rows = mcsim.error_vs_n(ch, spec, cfg["n_list"], cfg["trials"], seed,
                                cfg.get("order", "ab"))
    except mcsim.BudgetError as exc:
        raise _Fail(f"budget exceeded: {exc}")
    except ValidationError as exc:
        raise _Fail(str(exc))
    _write(args.out, mcsim.table_to_csv(rows))
    return EXIT_OK


# -- switch-demo -------------------------------------------------------------

def cmd_switch_demo(args) -> int:
    ic, sw = files.load_switch_fixture(args.fixture)
    if args.p_h is not None or args.p_v is not None:
        sw = switchsplit.SwitchSpec(sw.p_h if args.p_h is None else args.p_h,
                                    sw.p_v if args.p_v is None else args.p_v)
    if args.rates is not None:
        try:
            vals = [float(v) for v in args.rates.split(",")]
            if len(vals) != 5:
                raise ValueError(f"got {len(vals)} values")
            rates = switchsplit.GridRates(*vals)
        except (ValueError, TypeError) as exc:
            raise _Fail(f"--rates: expected 5 nonnegative numbers R2a,R2b,R2c,R2d,R1 ({exc})")
        expect_violation = False
    elif args.preset == "zero":
        rates, expect_violation = switchsplit.GridRates(), False
    elif args.preset == "common":
        rates, expect_violation = switchsplit.common_rates(ic, sw, slack=1e-9), False
    else:
        rates, expect_violation = switchsplit.receiver_rates(ic, sw, 2), True
    rep = switchsplit.feasibility_check(ic, sw, rates)
    table = [c.to_dict() for c in switchsplit.stage_constraints(ic, sw)]
    if args.format == "json":
        doc = {"switch": {"p_h": sw.p_h, "p_v": sw.p_v}, "rates": rates.to_dict(),
               "constraints": table, "report": rep.to_dict()}
        _write(args.out, _dump(doc))
    else:
        lines = [f"switch: p_h={sw.p_h:g} p_v={sw.p_v:g}",
                 "rates: " + ", ".join(f"{k}={v:.6f}" for k, v in rates.to_dict().items())]
        for c in rep.checks:
            lines.append(f"  stage {c['stage']} {c['name']:<10} rate={c['rate']:.6f} "
                         f"cap={c['cap']:.6f} margin={c['margin']:+.6f} "
                         f"{'ok' if c['ok'] else 'VIOLATED'}")
        for rx, ff in rep.first_failure.items():
            lines.append(f"Rx{rx}: " + ("all stages pass" if ff is None
                                       else f"first failure {ff[0]} (margin {ff[1]:+.6f})"))
        lines.append(f"feasible: {str(rep.feasible).lower()}")
        _write(args.out, "\n".join(lines) + "\n")
    if expect_violation:
        ff = rep.first_failure[1]
        return EXIT_OK if ff is not None and ff[0] == "R2b vs Rx1" else EXIT_INVALID
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (simulate)")
    common.add_argument("--out", default=None,
                        help="output file, or directory for 'region'; stdout if omitted")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="sdrs", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("example1", parents=[common], help="rebuild the two-receiver counterexample")
    e.add_argument("--epsilon", type=float, default=ratesplit.EXAMPLE1_EPSILON,
                   help=argparse.SUPPRESS)
    e.set_defaults(func=cmd_example1)

    fig = interference.GaussianIC.figure1()
    r = sub.add_parser("region", parents=[common], help="SD+RS vs HK regions of a Gaussian IC")
    for name in ("P1", "P2", "N1", "N2", "g11", "g12", "g21", "g22"):
        r.add_argument(f"--{name}", type=float, default=float(getattr(fig, name)))
    r.add_argument("--grid", type=int, default=201)
    r.add_argument("--include-mirror", action="store_true",
                   help="also include the scheme with the two pairs' roles exchanged")
    r.add_argument("--raw", action="store_true", help="also write the unconvexified corner cloud")
    r.set_defaults(func=cmd_region)

    s = sub.add_parser("split-sweep", parents=[common], help="split quantities over epsilon")
    s.add_argument("--px", required=True, help="ProbVec JSON file")
    s.add_argument("--channel", required=True, action="append",
                   help="Channel JSON file or builtin:<name>; repeatable")
    s.add_argument("--grid", type=int, default=11)
    s.set_defaults(func=cmd_split_sweep)

    m = sub.add_parser("simulate", parents=[common], help="Monte Carlo error vs block length")
    m.add_argument("config", help="simulation config JSON")
    m.set_defaults(func=cmd_simulate)

    w = sub.add_parser("switch-demo", parents=[common], help="switch-split stage constraints")
    w.add_argument("--fixture", default=None, help="fixture JSON (default: shipped fixture)")
    w.add_argument("--rates", default=None, help="R2a,R2b,R2c,R2d,R1")
    w.add_argument("--preset", choices=("rx2", "common", "zero"), default="rx2")
    w.add_argument("--p-h", type=float, default=None)
    w.add_argument("--p-v", type=float, default=None)
    w.set_defaults(func=cmd_switch_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except files.FileFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
