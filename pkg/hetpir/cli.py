"""
The ``hetpir`` command line.

Sub-commands compute capacities, write placements, run simulated retrievals,
sweep the sum storage, audit the query privacy and tabulate the trade-off
corner points. Exit codes are 0 on success, 1 for usage errors, 2 when the
storage system is infeasible and 3 when a retrieval, a check or an audit
fails.
"""

import argparse
import sys
from decimal import Decimal, localcontext

import numpy as np
import pandas as pd

from hetpir.capacity import (homogeneous_capacity, regime_label, solve_lp,
                             solve_relaxed, tradeoff_corners)
from hetpir.core import (IO, ContractError, DecodeError, DomainError,
                         HetpirIOError, LayoutSizeError, OutputParameters,
                         ProtocolError, ProvisioningError, RetrievalParameters,
                         StorageProfile, SubsetId, SweepParameters,
                         format_plan, format_rational, is_infeasible, logger,
                         parse_rational, parse_rational_list, read_messages,
                         read_plan, sample_profile, validate_placement,
                         write_plan, write_table)
from hetpir.placement import (FarkasCertificate, lift_beta, place_n3_table,
                              place_optimal, place_symmetric_batch)
from hetpir.retrieval import make_layout, random_messages
from hetpir.simulation import (AuditMode, audit_privacy, provision,
                               run_retrieval, write_transcript)
from hetpir.retrieval.sun_jafar import QueryVariant

__all__ = ["main", "build_parser"]


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_FAILURE = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser that raises rather than exiting on bad arguments."""

    def error(self, message):
        raise UsageError(message)


def _profile(args):
    return StorageProfile(tuple(parse_rational_list(args.m)), args.k)


def _decimal(value, places=10):
    with localcontext() as context:
        context.prec = 40
        return format(Decimal(value.numerator) / Decimal(value.denominator), f".{places}f")


# ---------------------------------------------------------------------------- #
# Sub-commands
# ---------------------------------------------------------------------------- #
def cmd_capacity(args, io):
    profile = _profile(args)
    result = solve_lp(profile)
    if is_infeasible(result):
        print(f"D*=infeasible (m_s={result.sum_storage} < 1)")
        return EXIT_INFEASIBLE
    _, point = result
    beta = solve_relaxed(profile)
    print(f"D*={point.download_cost} (regime: {regime_label(profile)}, beta={beta})")
    print(f"D*~{_decimal(point.download_cost)}")
    return EXIT_OK


def cmd_place(args, io):
    profile = _profile(args)
    if args.method == "auto":
        plan = place_optimal(profile)
    elif args.method == "table":
        plan = place_n3_table(profile)
    elif args.method == "batch":
        plan = place_symmetric_batch(profile)
    elif args.method == "lp":
        result = solve_lp(profile)
        plan = result if is_infeasible(result) else result[0]
    else:
        beta = solve_relaxed(profile)
        plan = beta if is_infeasible(beta) else lift_beta(profile, beta)
        if isinstance(plan, FarkasCertificate):
            print(f"lifting failed, certificate y=({','.join(str(v) for v in plan.y)})")
            return EXIT_FAILURE

    if is_infeasible(plan):
        print(f"placement infeasible (m_s={plan.sum_storage} < 1)")
        return EXIT_INFEASIBLE

    if args.out is None:
        sys.stdout.write(format_plan(plan))
    else:
        write_plan(plan, io.filename(args.out))
    report = validate_placement(plan)
    print(f"cost={plan.objective()} validation: {report}")
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_retrieve(args, io):
    plan = read_plan(args.plan)
    K = plan.profile.K
    if not 1 <= args.theta <= K:
        raise DomainError(f"Desired message {args.theta} outside 1, ..., {K}")
    parameters = RetrievalParameters(base_length=args.base_length)
    layout = make_layout(plan, parameters=parameters)
    if args.messages is not None:
        messages = read_messages(args.messages, K, layout.length)
    else:
        messages = random_messages(K, layout.length, args.seed)

    stored_plan, stored_layout, stored_messages = plan, layout, messages
    if args.provision_plan is not None:
        stored_plan = read_plan(args.provision_plan)
        stored_layout = make_layout(stored_plan, parameters=parameters)
        if stored_layout.length != layout.length or stored_plan.profile.K != K:
            stored_messages = random_messages(stored_plan.profile.K, stored_layout.length, args.seed)

    databases = provision(stored_plan, stored_layout, stored_messages)
    transcript, message = run_retrieval(databases, plan, layout, args.theta, args.seed)

    if args.transcript is not None or io.output.log_transcript:
        filename = io.filename(args.transcript if args.transcript is not None else "transcript.txt")
        write_transcript(transcript, filename)
        logger.info(f"Written transcript to {filename}")

    decoded = np.array_equal(message, messages[args.theta-1])
    ratio = transcript.normalized_download
    print(f"downloaded/L = {format_rational(ratio)}, decode {'OK' if decoded else 'MISMATCH'}")
    if not decoded or ratio != plan.objective():
        return EXIT_FAILURE
    return EXIT_OK


def cmd_sweep(args, io):
    sweep = SweepParameters(N=args.n, K=args.k, resolution=args.resolution,
                             profiles=args.profiles, seed=args.seed)
    if args.lower is not None:
        sweep.lower = parse_rational(args.lower)
    if args.upper is not None:
        sweep.upper = parse_rational(args.upper)
    upper = sweep.N if sweep.upper is None else sweep.upper
    rng = np.random.default_rng(sweep.seed)

    rows = []
    for i in range(sweep.resolution):
        m_s = sweep.lower + (upper - sweep.lower)*i/(sweep.resolution - 1)
        homogeneous = homogeneous_capacity(m_s/sweep.N, sweep.N, sweep.K)
        for p in range(sweep.profiles):
            profile = sample_profile(sweep.N, sweep.K, m_s, rng, sweep.max_denominator)
            heterogeneous = solve_lp(profile)
            if is_infeasible(heterogeneous):
                d_hetero = "infeasible"
            else:
                d_hetero = format_rational(heterogeneous[1].download_cost)
            d_homog = "infeasible" if is_infeasible(homogeneous) \
                else format_rational(homogeneous.download_cost)
            rows.append({
                "m_s": format_rational(m_s), "profile": p, "D_hetero": d_hetero,
                "D_homog": d_homog, "equal": d_hetero == d_homog,
                "m": " ".join(format_rational(m) for m in profile.budgets)
            })

    frame = pd.DataFrame(rows, columns=["m_s", "profile", "D_hetero", "D_homog", "equal", "m"])
    if args.out is None:
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    else:
        write_table(frame, io.filename(args.out))
    all_equal = bool(frame["equal"].all())
    print(f"{len(frame)} rows, heterogeneous and homogeneous costs "
          f"{'all equal' if all_equal else 'DIFFER'}", file=sys.stderr)
    return EXIT_OK if all_equal else EXIT_FAILURE


def cmd_audit(args, io):
    subset = SubsetId(tuple(range(1, args.ell+1)))
    variant = QueryVariant.skip_interference_singletons if args.broken else QueryVariant.sun_jafar
    report = audit_privacy(None, subset, args.k, trials=args.trials,
                           mode=AuditMode(args.mode), variant=variant)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_tradeoff(args, io):
    corners = tradeoff_corners(args.n, args.k)
    frame = pd.DataFrame({
        "t": list(range(1, args.n+1)),
        "mu": [format_rational(mu) for mu, _ in corners],
        "D": [format_rational(d) for _, d in corners],
        "D_decimal": [_decimal(d) for _, d in corners],
    })
    if args.out is None:
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    else:
        write_table(frame, io.filename(args.out))
    return EXIT_OK


# ---------------------------------------------------------------------------- #
# Parser
# ---------------------------------------------------------------------------- #
def build_parser():
    parser = ArgumentParser(
        prog="hetpir",
        description="capacity, placement and private retrieval for databases "
                    "with heterogeneous storage"
    )
    common = ArgumentParser(add_help=False)
    common.add_argument("--dirname", default=None,
                        help="write outputs and the logfile to results/<dirname>")
    subparsers = parser.add_subparsers(dest="command", required=True)

    capacity = subparsers.add_parser("capacity", parents=[common],
                                     help="optimal normalised download cost")
    capacity.add_argument("--m", required=True, help="budgets, e.g. 9/10,6/10,3/10")
    capacity.add_argument("--k", type=int, required=True, help="number of messages")
    capacity.set_defaults(handler=cmd_capacity)

    place = subparsers.add_parser("place", parents=[common], help="write an optimal placement")
    place.add_argument("--m", required=True, help="budgets, e.g. 9/10,6/10,3/10")
    place.add_argument("--k", type=int, required=True, help="number of messages")
    place.add_argument("--out", default=None, help="plan file, stdout if omitted")
    place.add_argument("--method", default="auto", choices=["auto", "table", "lift", "lp", "batch"])
    place.set_defaults(handler=cmd_place)

    retrieve = subparsers.add_parser("retrieve", parents=[common],
                                     help="simulate a private retrieval")
    retrieve.add_argument("--plan", required=True, help="plan file")
    retrieve.add_argument("--theta", type=int, required=True, help="desired message")
    retrieve.add_argument("--seed", type=int, default=0)
    retrieve.add_argument("--messages", default=None,
                          help="raw message file of K*L bytes, random if omitted")
    retrieve.add_argument("--base-length", type=int, default=1)
    retrieve.add_argument("--transcript", default=None, help="transcript file")
    retrieve.add_argument("--provision-plan", default=None,
                          help="provision the databases from this plan instead")
    retrieve.set_defaults(handler=cmd_retrieve)

    sweep = subparsers.add_parser("sweep", parents=[common],
                                  help="compare heterogeneous and homogeneous costs")
    sweep.add_argument("--n", type=int, default=3)
    sweep.add_argument("--k", type=int, default=3)
    sweep.add_argument("--resolution", type=int, default=11)
    sweep.add_argument("--profiles", type=int, default=5)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--lower", default=None, help="smallest sum storage, 0 by default")
    sweep.add_argument("--upper", default=None, help="largest sum storage, N by default")
    sweep.add_argument("--out", default=None, help="CSV file, stdout if omitted")
    sweep.set_defaults(handler=cmd_sweep)

    audit = subparsers.add_parser("audit", parents=[common], help="audit query privacy")
    audit.add_argument("--ell", type=int, required=True, help="replicated databases")
    audit.add_argument("--k", type=int, required=True, help="number of messages")
    audit.add_argument("--mode", default="exhaustive", choices=[m.value for m in AuditMode])
    audit.add_argument("--trials", type=int, default=None)
    audit.add_argument("--broken", action="store_true",
                       help="audit the variant without undesired round-one singletons")
    audit.set_defaults(handler=cmd_audit)

    tradeoff = subparsers.add_parser("tradeoff", parents=[common],
                                     help="corner points of the storage/download trade-off")
    tradeoff.add_argument("--n", type=int, default=3)
    tradeoff.add_argument("--k", type=int, default=3)
    tradeoff.add_argument("--out", default=None, help="CSV file, stdout if omitted")
    tradeoff.set_defaults(handler=cmd_tradeoff)

    return parser


def main(argv=None):
    """
    Runs the command line.

    Args:
        argv (list, optional): the arguments. Defaults to None, in which case
            ``sys.argv`` is used.

    Returns:
        int: the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ["audit", "sweep", "tradeoff"] and (args.k < 1 or getattr(args, "n", 1) < 1):
            raise UsageError("--n and --k must be positive")
        if args.command == "audit" and args.ell < 1:
            raise UsageError("--ell must be positive")
    except UsageError as e:
        print(f"hetpir: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    io = IO(OutputParameters(dirname=args.dirname))
    try:
        return args.handler(args, io)
    except (ProtocolError, DecodeError, ProvisioningError) as e:
        logger.error(f"Retrieval failed: {e}")
        print(f"retrieval failed: {e}")
        return EXIT_FAILURE
    except (DomainError, ContractError, HetpirIOError, LayoutSizeError, ValueError) as e:
        logger.error(str(e))
        return EXIT_USAGE
