"""Command-line front end.

    qchernoff measures RHO SIGMA [--priors PI0 PI1]
    qchernoff scan RHO SIGMA --n-max N [--priors PI0 PI1]
    qchernoff sscan RHO SIGMA --points K
    qchernoff metric RHO DRHO
    qchernoff verify [--trials T] [--dim D] [--check NAME] [--replay-dir DIR] [--replay FILE]
"""
from __future__ import annotations

import argparse
import io as _io
import json
import math
import sys

import numpy as np

from . import errors
from .io import (
    fmt,
    load_matrix,
    load_replay,
    write_replay,
    write_scan_csv,
    write_sscan_csv,
)
from .linalg import DEFAULT_SIZE_CAP
from .measures import (
    chernoff,
    chernoff_metric,
    fidelity,
    helstrom,
    q_s,
    relative_entropy,
    trace_distance,
)
from .multicopy import copy_scan
from .states import TRACE_ATOL, PriorPair, density_from_matrix, perturbation_from_matrix
from .verify import CHECKS, replay, run_all

EXIT_FAILED_CHECKS = 1
EXIT_USAGE = 2

EXIT_CODES = [
    (0, "success"),
    (EXIT_FAILED_CHECKS, "verification found violations"),
    (EXIT_USAGE, "usage error (bad flags, unknown check name, invalid arguments)"),
    (errors.ParseError.exit_code, "input file could not be read or parsed"),
    (errors.NotHermitianError.exit_code, "matrix is not Hermitian"),
    (errors.NotPositiveError.exit_code, "matrix is not positive semidefinite"),
    (errors.TraceError.exit_code, "wrong trace (state not normalised, perturbation not traceless)"),
    (errors.DimensionError.exit_code, "dimension mismatch"),
    (errors.SizeCapError.exit_code, "size cap exceeded"),
    (errors.NumericalConsistencyError.exit_code, "internal numerical consistency check failed"),
    (errors.QCBError.exit_code, "other library error"),
    (errors.UnsupportedInputError.exit_code, "input outside the supported domain"),
    (errors.SingularMetricError.exit_code, "metric undefined at a rank-deficient state"),
    (errors.EigensolverError.exit_code, "eigensolver did not converge"),
    (errors.NotTracePreservingError.exit_code, "channel is not trace preserving"),
]


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or math.isinf(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _cap(text: str) -> int:
    value = int(text)
    if value < 4:
        raise argparse.ArgumentTypeError("cap must be at least 4")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="tolerance override: trace tolerance for input states, "
                             "margin tolerance for verify")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--cap", type=_cap, default=DEFAULT_SIZE_CAP,
                        help=f"maximum matrix dimension (default {DEFAULT_SIZE_CAP})")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=["text", "csv", "json"], default=None,
                        help="output format (default: csv for scans, text otherwise)")

    epilog = "exit codes:\n" + "\n".join(f"  {code:>3}  {text}" for code, text in EXIT_CODES)
    parser = argparse.ArgumentParser(
        prog="qchernoff",
        description="Quantum Chernoff bound and related distinguishability measures.",
        epilog=epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def priors(p):
        p.add_argument("--priors", nargs=2, type=float, metavar=("PI0", "PI1"), default=(0.5, 0.5))

    p = sub.add_parser("measures", parents=[common], help="single-copy measures for a pair of states")
    p.add_argument("rho")
    p.add_argument("sigma")
    priors(p)

    p = sub.add_parser("scan", parents=[common], help="exact n-copy error probabilities")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("--n-max", type=_positive_int, required=True)
    priors(p)

    p = sub.add_parser("sscan", parents=[common], help="tabulate Tr[rho^s sigma^(1-s)] on a grid")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("--points", type=_positive_int, required=True)

    p = sub.add_parser("metric", parents=[common], help="Chernoff metric line element")
    p.add_argument("rho")
    p.add_argument("drho")

    p = sub.add_parser("verify", parents=[common], help="randomised inequality and property checks")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--dim", type=_positive_int, default=None)
    p.add_argument("--check", choices=list(CHECKS), default=None)
    p.add_argument("--replay-dir", default=None, help="write a replay file per failing trial")
    p.add_argument("--replay", default=None, metavar="FILE", help="re-run one recorded trial")
    return parser


def _load_state(path: str, tol: float | None):
    rho = density_from_matrix(load_matrix(path), atol=TRACE_ATOL if tol is None else tol)
    # accepted within --tol; renormalise so library calls see unit trace
    return rho / np.real(np.trace(rho))


def _render_record(record: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(record, indent=2, allow_nan=False) + "\n"
    if fmt_name == "csv":
        return ",".join(record) + "\n" + ",".join(str(v) for v in record.values()) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in record.items())


def _value(x: float) -> str:
    return "infinite" if math.isinf(x) else fmt(x)


def cmd_measures(args) -> tuple[str, int]:
    rho = _load_state(args.rho, args.tol)
    sigma = _load_state(args.sigma, args.tol)
    pri = PriorPair(*args.priors)
    res = chernoff(rho, sigma)
    hel = helstrom(rho, sigma, pri)
    record = {
        "q": fmt(res.q_value),
        "s_star": fmt(res.s_star),
        "xi_qcb": "infinite" if res.infinite else fmt(res.exponent),
        "trace_distance": fmt(trace_distance(rho, sigma)),
        "fidelity": fmt(fidelity(rho, sigma)),
        "rel_ent_rho_sigma": _value(relative_entropy(rho, sigma)),
        "rel_ent_sigma_rho": _value(relative_entropy(sigma, rho)),
        "helstrom_p_error": fmt(hel.p_error),
        "helstrom_rank": hel.rank,
    }
    return _render_record(record, args.format or "text"), 0


def cmd_scan(args) -> tuple[str, int]:
    rho = _load_state(args.rho, args.tol)
    sigma = _load_state(args.sigma, args.tol)
    result = copy_scan(rho, sigma, PriorPair(*args.priors), args.n_max, cap=args.cap)
    if (args.format or "csv") == "json":
        payload = {
            "xi_qcb": _value(result.xi_qcb),
            "s_star": fmt(result.s_star),
            "priors": [result.priors.pi0, result.priors.pi1],
            "rows": [{"n": r.n, "p_err": fmt(r.p_err), "rate": _value(r.rate),
                      "theorem1_bound": fmt(r.theorem1_bound)} for r in result.rows],
        }
        return json.dumps(payload, indent=2) + "\n", 0
    buf = _io.StringIO()
    write_scan_csv(result, buf)
    return buf.getvalue(), 0


def cmd_sscan(args) -> tuple[str, int]:
    rho = _load_state(args.rho, args.tol)
    sigma = _load_state(args.sigma, args.tol)
    points = [(k / args.points, q_s(rho, sigma, k / args.points)) for k in range(args.points + 1)]
    if (args.format or "csv") == "json":
        return json.dumps([{"s": fmt(s), "q_s": fmt(q)} for s, q in points], indent=2) + "\n", 0
    buf = _io.StringIO()
    write_sscan_csv(points, buf)
    return buf.getvalue(), 0


def cmd_metric(args) -> tuple[str, int]:
    rho = _load_state(args.rho, args.tol)
    drho = perturbation_from_matrix(load_matrix(args.drho))
    ds2 = chernoff_metric(rho, drho)
    return _render_record({"ds2": fmt(ds2)}, args.format or "text"), 0


def cmd_verify(args) -> tuple[str, int]:
    if args.replay:
        record = load_replay(args.replay)
        margin = replay(record)
        tol = args.tol if args.tol is not None else CHECKS[record["check_name"]].tolerance
        ok = margin >= -tol
        line = (f"{'PASS' if ok else 'FAIL'} replay {record['check_name']} dim={record['dim']} "
                f"trial={record['trial_index']} seed={record['seed']} margin={margin!r}\n")
        return line, 0 if ok else EXIT_FAILED_CHECKS
    checks = None if args.check is None else [args.check]
    dims = None if args.dim is None else [args.dim]
    reports = run_all(args.seed, args.trials, checks, dims, args.tol)
    if args.replay_dir:
        for report in reports:
            for record in report.replays:
                write_replay(record, args.replay_dir)
    status = 0 if all(r.passed for r in reports) else EXIT_FAILED_CHECKS
    if args.format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n", status
    text = "".join(r.format_line() + "\n" for r in reports)
    failed = sum(not r.passed for r in reports)
    text += f"{len(reports) - failed}/{len(reports)} checks passed\n"
    return text, status


COMMANDS = {
    "measures": cmd_measures,
    "scan": cmd_scan,
    "sscan": cmd_sscan,
    "metric": cmd_metric,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = COMMANDS[args.command](args)
    except errors.QCBError as exc:
        print(f"qchernoff: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"qchernoff: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status

