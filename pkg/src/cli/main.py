"""Command-line entry point: ccsurgery <command> [options]"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.cli.documents import load_connection
from src.cli.reports import build_report, emit
from src.clifford.generation import CONSTRUCTIVE, EXHAUSTIVE, generation_check, standard_generators
from src.clifford.symplectic import gate_matrix, parse_gate
from src.clifford.tableau import ppm_cnot_check
from src.codes.cc import CcCode, seed_kernel_image_report, validate_cc_seed
from src.codes.logical import cluster_grid_position, clustered_basis, verify_clustered
from src.codes.seeds import list_seeds, load_seed
from src.distance.exhaustive import exhaustive_distance
from src.distance.randomized import randomized_distance
from src.gadgets import fold, toolbox
from src.gadgets.physical import DATA_LOGICALS
from src.gadgets.schedules import SCHEDULES, run_cnot_schedule
from src.surgery.connection import merge_complex, merged_counts
from src.surgery.pairing import pair_connection
from src.surgery.procedure import surgery_trace
from src.surgery.scan import boost_census, ft_scan, overhead_report
from src.utils.config import settings
from src.utils.errors import BudgetExceededError, InputError, SeedValidationError, VerificationError
from src.utils.logger import app_logger

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

Outcome = Tuple[Dict[str, Any], bool, Optional[int]]


def _code(ref: str) -> Tuple[CcCode, Optional[int]]:
    doc = load_seed(ref)
    return doc.build(), doc.d


def _seed(args: argparse.Namespace) -> int:
    return settings.default_seed if args.seed is None else args.seed


# Commands


def cmd_build(args: argparse.Namespace) -> Outcome:
    doc = load_seed(args.code)
    h_a, h_b = doc.ring_matrices()
    results = {
        "validation": {"H_a": validate_cc_seed(h_a), "H_b": validate_cc_seed(h_b)},
        "kernel_image": {"H_a": seed_kernel_image_report(h_a), "H_b": seed_kernel_image_report(h_b)},
    }
    code = doc.build()
    results.update(label=code.describe(), hx=code.hx.to_strings(), hz=code.hz.to_strings())
    return results, True, None


def cmd_params(args: argparse.Namespace) -> Outcome:
    code, d = _code(args.code)
    results = {"label": code.describe(), "N": code.n_phys, "k": code.k_log, "W": code.max_check_weight(),
               "p": code.p, "d": d}
    return results, True, None


def cmd_basis(args: argparse.Namespace) -> Outcome:
    code, _ = _code(args.code)
    basis = clustered_basis(code)
    check = verify_clustered(basis, code)
    clusters = []
    for i in range(basis.k):
        sector, a, b = cluster_grid_position(code, i)
        clusters.append({"logical": i + 1, "sector": sector, "grid": [a, b], "qubits": basis.cluster_columns(i)})
    return {"clusters": clusters, "check": check}, check.passed, None


def cmd_distance(args: argparse.Namespace) -> Outcome:
    code, _ = _code(args.code)
    target = code
    if args.connection:
        target = merge_complex(code, load_connection(args.connection).build(code), args.basis)
    if args.weight_cap is not None:
        estimate = exhaustive_distance(target, args.weight_cap)
        return {"code": target.describe(), "estimate": estimate, "d": estimate.d}, True, None
    seed = _seed(args)
    estimate = randomized_distance(target, args.trials or settings.default_trials, seed, args.jobs)
    return {"code": target.describe(), "estimate": estimate, "d": estimate.d}, True, seed


def _connection_arg(args: argparse.Namespace, code: CcCode):
    if not args.connection:
        raise InputError(f"{args.command} needs --connection")
    return load_connection(args.connection).build(code)


def cmd_surgery(args: argparse.Namespace) -> Outcome:
    code, d = _code(args.code)
    conn = _connection_arg(args, code)
    merged = merge_complex(code, conn, args.basis)
    trace = surgery_trace(code, conn, args.basis, args.d_rounds or d or 1)
    stages = [{"label": s.label, "shape_x": list(s.hx.shape), "shape_z": list(s.hz.shape),
               "abelian": s.is_abelian()} for s in trace.stages]
    results = {"merged": merged.describe(), "counts": merged_counts(code, conn, args.basis), "stages": stages,
               "d_rounds": trace.d_rounds, "split_basis": trace.split_basis}
    return results, all(s["abelian"] for s in stages), None


def cmd_merges(args: argparse.Namespace) -> Outcome:
    code, _ = _code(args.code)
    return {"counts": merged_counts(code, _connection_arg(args, code), args.basis)}, True, None


def cmd_pair_connection(args: argparse.Namespace) -> Outcome:
    code, _ = _code(args.code)
    conn = pair_connection(code, args.alpha, args.beta)
    a_bits, b_bits = conn.seed_bits()
    return {"H_a_prime": a_bits, "H_b_prime": b_bits, "counts": merged_counts(code, conn, "Z")}, True, None


def cmd_ft_scan(args: argparse.Namespace) -> Outcome:
    code, d = _code(args.code)
    bound = args.weight_cap or d
    if bound is None:
        raise InputError("the seed document has no distance; pass --weight-cap")
    seed = _seed(args)
    report = ft_scan(code, bound, basis=args.basis, trials=args.trials, seed=seed, jobs=args.jobs)
    if args.exhaustive and any(e.method != "exhaustive" for e in report.entries):
        raise BudgetExceededError("exhaustive scan exceeded its budget; raise CCSURGERY_EXHAUSTIVE_BUDGET")
    return {"scan": report}, not report.failures, seed


def cmd_boost_count(args: argparse.Namespace) -> Outcome:
    code, _ = _code(args.code)
    return {"census": boost_census(code)}, True, None


def cmd_overhead(args: argparse.Namespace) -> Outcome:
    code, d = _code(args.code)
    distance = args.distance or d
    if distance is None:
        raise InputError("the seed document has no distance; pass --distance")
    merges = args.merges or code.k_log // 2
    return {"overhead": overhead_report(code, merges, distance)}, True, None


def cmd_clifford_check(args: argparse.Namespace) -> Outcome:
    if args.generators:
        gens = [gate_matrix(parse_gate(text), args.m) for text in args.generators]
    else:
        gens = standard_generators(args.m, with_ssdg=not args.no_ssdg)
    report = generation_check(args.m, gens, args.mode)
    results: Dict[str, Any] = {"generation": report}
    passed = report.full
    if args.ppm:
        ppm = ppm_cnot_check()
        results["ppm_cnot"] = {**ppm.model_dump(), "passed": ppm.passed}
        passed &= ppm.passed
    return results, passed, None


def _gadget_cnot(args: argparse.Namespace) -> Outcome:
    names = sorted(SCHEDULES) if args.schedule in (None, "all") else [args.schedule]
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_cnot_schedule, names))
    else:
        reports = [run_cnot_schedule(n) for n in tqdm(names, desc="schedules", disable=not settings.show_progress)]
    return {"schedules": reports}, all(r.passed for r in reports), None


def _gadget_sisj(args: argparse.Namespace) -> Outcome:
    pairs = [tuple(args.pair)] if args.pair else list(permutations(DATA_LOGICALS, 2))
    reports = [toolbox.verify_SiSj_gadget(i, j) for i, j in pairs]
    return {"gadgets": reports}, all(r.passed for r in reports), None


def cmd_gadget(args: argparse.Namespace) -> Outcome:
    which = args.which
    if which == "cnot":
        return _gadget_cnot(args)
    if which == "sisj":
        return _gadget_sisj(args)
    if which == "cz-s":
        action = fold.verify_cz_s()
        return {"action": action, "passed": action.passed}, action.passed, None
    if which == "h-swap":
        action = fold.verify_h_swap()
        return {"action": action, "passed": action.passed}, action.passed, None
    if which == "automorphisms":
        actions = fold.verify_automorphisms()
        spans = fold.row_span_report()
        passed = all(a.passed for a in actions) and all(spans[a.name] for a in actions)
        return {"actions": actions, "row_spans": spans}, passed, None
    if which == "global-h":
        report = fold.simplified_global_hadamard()
        return {"global_h": report, "passed": report.passed}, report.passed, None
    certificate = toolbox.clifford_toolbox_certificate(exhaustive=args.exhaustive)
    return {"certificate": certificate, "passed": certificate.passed}, certificate.passed, None


def cmd_seeds(args: argparse.Namespace) -> Outcome:
    seeds = [{"name": name, "label": doc.label, "p": doc.p, "d": doc.d} for name, doc in list_seeds()]
    return {"seeds": seeds}, True, None


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "build": cmd_build,
    "params": cmd_params,
    "basis": cmd_basis,
    "distance": cmd_distance,
    "surgery": cmd_surgery,
    "merges": cmd_merges,
    "pair-connection": cmd_pair_connection,
    "ft-scan": cmd_ft_scan,
    "boost-count": cmd_boost_count,
    "overhead": cmd_overhead,
    "clifford-check": cmd_clifford_check,
    "gadget": cmd_gadget,
    "seeds": cmd_seeds,
}

GADGETS = ["cnot", "cz-s", "h-swap", "automorphisms", "global-h", "sisj", "toolbox"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Write the report to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default {settings.default_seed})")
    common.add_argument("--trials", type=int, default=None, help="Randomized trials per Pauli type")
    common.add_argument("--jobs", type=int, default=settings.jobs, help="Worker processes")
    common.add_argument("--weight-cap", type=int, default=None, help="Exhaustive weight cap or scan bound")

    parser = argparse.ArgumentParser(
        prog="ccsurgery",
        description="Clustered-cyclic codes, product surgery and Clifford gadget verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, with_code: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        if with_code:
            p.add_argument("code", help="Seed document: path, file stem under data/seeds, or label")
        return p

    add("build", "Validate seeds and build the code")
    add("params", "N, k and check weight")
    add("basis", "Clustered logical basis and its checks")
    for name, help_text in (("distance", "Exhaustive (--weight-cap) or randomized distance"),
                            ("surgery", "Merged code and stage-by-stage checks"),
                            ("merges", "Merge count, merged logicals and targets")):
        p = add(name, help_text)
        p.add_argument("--connection", help="Connection document")
        p.add_argument("--basis", default="Z", choices=["X", "Z"])
        if name == "surgery":
            p.add_argument("--d-rounds", type=int, default=None)

    p = add("pair-connection", "0/1 connection measuring Z_alpha Z_beta")
    p.add_argument("alpha", type=int)
    p.add_argument("beta", type=int)

    p = add("ft-scan", "Merged-code distances over all 0/1 connections")
    p.add_argument("--basis", default="Z", choices=["X", "Z"])
    p.add_argument("--exhaustive", action="store_true", help="Fail instead of falling back to randomized search")

    add("boost-count", "Boostable measurement configurations")
    p = add("overhead", "Auxiliary space and time of one round")
    p.add_argument("--merges", type=int, default=None)
    p.add_argument("--distance", type=int, default=None)

    p = add("clifford-check", "Clifford-group generation check", with_code=False)
    p.add_argument("m", type=int)
    p.add_argument("--generators", nargs="*", help='Named gates such as "CNOT(1,2)" "SSDG(1,2)" "HALL"')
    p.add_argument("--mode", default=EXHAUSTIVE, choices=[EXHAUSTIVE, CONSTRUCTIVE])
    p.add_argument("--no-ssdg", action="store_true", help="Drop S_i S_j^dagger from the standard set")
    p.add_argument("--ppm", action="store_true", help="Also check the measurement-based CNOT")

    p = add("gadget", "[[24,8,3]] gadget verification", with_code=False)
    p.add_argument("which", choices=GADGETS)
    p.add_argument("--schedule", default=None, help='Schedule id such as "26x48", or "all"')
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--exhaustive", action="store_true", help="Close the three-qubit restriction by BFS")

    add("seeds", "List shipped seed documents", with_code=False)
    return parser


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "jobs") and v is not None}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and emit its report

    Returns:
        0 when the command passes, 1 when a verification fails, 2 on bad input or budgets
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    command = args.command
    inputs = _inputs(args)
    with app_logger.contextualize(command=command):
        return _dispatch(command, args, inputs)


def _dispatch(command: str, args: argparse.Namespace, inputs: Dict[str, Any]) -> int:
    try:
        results, passed, rng_seed = COMMANDS[command](args)
    except SeedValidationError as e:
        app_logger.error(str(e))
        results = {"validation": e.report} if e.report is not None else {}
        emit(build_report(command, inputs, results, passed=False, error=str(e)), args.out)
        return EXIT_INPUT
    except (InputError, BudgetExceededError) as e:
        app_logger.error(str(e))
        emit(build_report(command, inputs, passed=False, error=str(e)), args.out)
        return EXIT_INPUT
    except VerificationError as e:
        app_logger.error(f"identity '{e.identity}' failed {e.detail}")
        emit(build_report(command, inputs, passed=False, error=str(e)), args.out)
        return EXIT_FAILED

    emit(build_report(command, inputs, results, rng_seed=rng_seed, passed=passed), args.out)
    return EXIT_OK if passed else EXIT_FAILED


def main(argv: Optional[List[str]] = None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
