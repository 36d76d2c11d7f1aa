"""
Command-line surface: simulate, pattern, find-period, accuracy, compare, a0-scan

Exit codes: 0 ok, 1 usage / configuration / capacity errors, 2 pattern mismatch,
3 period not found
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from pydantic import ValidationError

from qpf_rdm.analysis.model import compare_rows, peak_predicate
from qpf_rdm.analysis.rdm import multiplicity_classes, rdm_direct, rdm_from_state, rho00_direct
from qpf_rdm.config import RunConfig, Settings, load_settings, parse_extra_range, parse_qprimes
from qpf_rdm.exceptions import CapacityError, PatternMismatchError, QpfError
from qpf_rdm.io import (
    A0_SCAN_COLUMNS,
    ACCURACY_COLUMNS,
    COMPARE_COLUMNS,
    PATTERN_COLUMNS,
    FIND_COLUMNS,
    SIMULATE_COLUMNS,
    save_json,
    save_table,
)
from qpf_rdm.models.domain import Domain
from qpf_rdm.models.oracle import PeriodicFunction, parse_oracle
from qpf_rdm.search.builders import builder_for
from qpf_rdm.search.finder import accuracy_sweep, find_period
from qpf_rdm.simulation.circuit import PostSelect, Sample, run_full_circuit
from qpf_rdm.simulation.direct import multiplicity

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PATTERN_MISMATCH = 2
EXIT_NOT_FOUND = 3


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rdm_row(n: int, r: int, rdm) -> dict:
    bloch = rdm.bloch
    return {
        "n": n,
        "r": r,
        "q": rdm.q,
        "rho00": rdm.rho00,
        "rho01_re": rdm.rho01.real,
        "rho01_im": rdm.rho01.imag,
        "ax": bloch.ax,
        "ay": bloch.ay,
        "az": bloch.az,
    }


def sample_offset(domain: Domain, r: int, seed: int) -> int:
    """
    Draws x0 with the probability M(x0)/N of measuring a0 = f(x0); the generator is
    numpy PCG64 seeded with seed + r
    """
    rng = np.random.default_rng(seed + r)
    weights = np.array([multiplicity(domain, r, x0) for x0 in range(r)], dtype=np.float64)
    return int(rng.choice(r, p=weights / weights.sum()))


def simulate_period(task: tuple[int, int, str, str, int | None, Settings]) -> list[dict]:
    """
    Rows of every qubit for one period
    """
    n, r, mode, a0_mode, seed, settings = task
    domain = Domain(n=n)
    config = RunConfig(command="simulate", n=n, r=r, mode=mode, a0_mode=a0_mode, seed=seed)

    if mode == "full":
        f = PeriodicFunction.sawtooth(domain, r)
        if a0_mode == "sample":
            measurement = Sample(seed=seed + r)
        else:
            a0 = config.postselect_value
            measurement = PostSelect(a0=f.evaluate(0) if a0 is None else a0)
        state, _ = run_full_circuit(domain, f, measurement, settings)
        return [rdm_row(n, r, rdm_from_state(state, q, settings)) for q in range(n)]

    if a0_mode == "sample":
        x0 = sample_offset(domain, r, seed)
    else:
        x0 = config.postselect_value
        x0 = 0 if x0 is None else x0
    return [rdm_row(n, r, rdm_direct(domain, r, q, x0, settings)) for q in range(n)]


def pattern_rows_for_qubit(task: tuple[int, int, Settings]) -> list[dict]:
    n, q, settings = task
    domain = Domain(n=n)
    rows = list()
    for r in range(1, domain.N):
        predicted = peak_predicate(n, q, r)
        observed = rho00_direct(domain, r, q, settings=settings) - 0.5 > settings.eps_zero
        rows.append(
            {
                "n": n,
                "q": q,
                "r": r,
                "predicted": predicted,
                "observed": observed,
                "match": predicted == observed,
            }
        )
    return rows


def run_tasks(function, tasks: list, settings: Settings) -> list:
    """
    Maps tasks over a process pool, results in task order
    """
    if settings.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=settings.threads) as executor:
            return list(executor.map(function, tasks))
    return [function(task) for task in tasks]


def check_direct_capacity(cfg: RunConfig, settings: Settings):
    if cfg.n > settings.direct_limit:
        raise CapacityError(f"{cfg.command} supports n <= {settings.direct_limit}, got n={cfg.n}")


def cmd_simulate(cfg: RunConfig, settings: Settings) -> int:
    if cfg.mode == "full" and cfg.n > settings.full_circuit_limit:
        raise CapacityError(f"--mode full supports n <= {settings.full_circuit_limit}")
    check_direct_capacity(cfg, settings)

    domain = Domain(n=cfg.n)

    periods = [cfg.r] if cfg.r is not None else list(range(1, domain.N))
    for r in periods:
        domain.check_period(r)

    tasks = [(cfg.n, r, cfg.mode, cfg.a0_mode, cfg.seed, settings) for r in periods]
    rows = [row for rows in run_tasks(simulate_period, tasks, settings) for row in rows]
    save_table(rows, SIMULATE_COLUMNS, cfg.out, cfg.format)
    return EXIT_OK


def cmd_pattern(cfg: RunConfig, settings: Settings) -> int:
    if cfg.n > settings.exhaustive_limit:
        raise CapacityError(f"pattern checks are limited to n <= {settings.exhaustive_limit}")

    tasks = [(cfg.n, q, settings) for q in range(cfg.n)]
    rows = [row for rows in run_tasks(pattern_rows_for_qubit, tasks, settings) for row in rows]
    save_table(rows, PATTERN_COLUMNS, cfg.out, cfg.format)

    mismatches = [row for row in rows if not row["match"]]
    if mismatches:
        first = mismatches[0]
        raise PatternMismatchError(
            f"{len(mismatches)} (q, r) pairs break the peak rule, first q={first['q']} r={first['r']}"
        )
    return EXIT_OK


def cmd_find_period(cfg: RunConfig, settings: Settings) -> int:
    f = parse_oracle(cfg.oracle, Domain(n=cfg.n))
    result = find_period(f, cfg.n, cfg.max_extra, builder_for(cfg.mode, settings), settings)
    if cfg.format == "csv":
        save_table([result.as_dict()], FIND_COLUMNS, cfg.out)
    else:
        save_json(result.as_dict(), cfg.out)
    return EXIT_OK if result.found else EXIT_NOT_FOUND


def cmd_accuracy(cfg: RunConfig, settings: Settings) -> int:
    reports = accuracy_sweep(cfg.n, cfg.extra or [cfg.n], settings)
    save_table([report.as_row() for report in reports], ACCURACY_COLUMNS, cfg.out, cfg.format)
    return EXIT_OK


def cmd_compare(cfg: RunConfig, settings: Settings) -> int:
    check_direct_capacity(cfg, settings)
    rows = compare_rows(cfg.n, cfg.qprimes or [0, 1])
    save_table(rows, COMPARE_COLUMNS, cfg.out, cfg.format)
    return EXIT_OK


def cmd_a0_scan(cfg: RunConfig, settings: Settings) -> int:
    check_direct_capacity(cfg, settings)
    domain = Domain(n=cfg.n)
    periods = [cfg.r] if cfg.r is not None else list(range(1, domain.N))

    rows = list()
    for r in periods:
        classes = multiplicity_classes(domain, r)
        for q in range(cfg.n):
            for M in sorted(classes):
                for x0 in classes[M]:
                    rdm = rdm_direct(domain, r, q, x0, settings)
                    rows.append(
                        {
                            "n": cfg.n,
                            "r": r,
                            "q": q,
                            "x0": x0,
                            "a0": x0,
                            "multiplicity": M,
                            "rho00": rdm.rho00,
                            "rho01_re": rdm.rho01.real,
                            "rho01_im": rdm.rho01.imag,
                        }
                    )
    save_table(rows, A0_SCAN_COLUMNS, cfg.out, cfg.format)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "pattern": cmd_pattern,
    "find-period": cmd_find_period,
    "accuracy": cmd_accuracy,
    "compare": cmd_compare,
    "a0-scan": cmd_a0_scan,
}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="qpf-rdm", description="Period finding from one-qubit reduced density matrices"
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    parser.add_argument("--threads", type=int, default=None, help="worker processes")
    parser.add_argument("--eps-zero", type=float, default=1e-6, help="a_z peak threshold")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    simulate = commands.add_parser("simulate", help="1-RDMs of every qubit and period")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--r", type=int)
    simulate.add_argument("--mode", choices=["direct", "full"], default="direct")
    simulate.add_argument("--a0-mode", default="postselect")
    simulate.add_argument("--seed", type=int)

    pattern = commands.add_parser("pattern", help="check the peak rule against simulation")
    pattern.add_argument("--n", type=int, required=True)

    find = commands.add_parser("find-period", help="recover the period of an oracle")
    find.add_argument("--oracle", required=True, help="sawtooth:r=<int> or modexp:a=<int>,S=<int>")
    find.add_argument("--bits", dest="n", type=int, required=True)
    find.add_argument("--max-extra", type=int, default=4)
    find.add_argument("--mode", choices=["direct", "full"], default="direct")

    accuracy = commands.add_parser("accuracy", help="fraction of periods recovered")
    accuracy.add_argument("--bits", dest="n", type=int, required=True)
    accuracy.add_argument("--extra", default=None, help="'3', '0..6' or '0,2,4'")

    compare = commands.add_parser("compare", help="approximate against exact a_z")
    compare.add_argument("--n", type=int, required=True)
    compare.add_argument("--qprime", default="0,1")

    a0_scan = commands.add_parser("a0-scan", help="1-RDMs for every measured value a0")
    a0_scan.add_argument("--n", type=int, required=True)
    a0_scan.add_argument("--r", type=int)

    for subparser in commands.choices.values():
        subparser.add_argument("--out", default=None, help="output path, stdout by default")
        subparser.add_argument(
            "--format",
            choices=["csv", "json"],
            default=None,
            help="json for find-period and csv elsewhere by default",
        )

    return parser


def configure_logging(verbose: bool):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("qpf_rdm")
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def parse_config(args: argparse.Namespace) -> RunConfig:
    extra = getattr(args, "extra", None)
    qprime = getattr(args, "qprime", None)
    return RunConfig(
        command=args.command,
        n=args.n,
        r=getattr(args, "r", None),
        oracle=getattr(args, "oracle", None),
        mode=getattr(args, "mode", "direct"),
        a0_mode=getattr(args, "a0_mode", "postselect"),
        seed=getattr(args, "seed", None),
        eps_zero=args.eps_zero,
        max_extra=getattr(args, "max_extra", 4),
        extra=parse_extra_range(extra) if extra else None,
        qprimes=parse_qprimes(qprime) if qprime else None,
        out=args.out,
        format=args.format or ("json" if args.command == "find-period" else "csv"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        cfg = parse_config(args)
        settings = load_settings(threads=args.threads, eps_zero=cfg.eps_zero)
        return COMMANDS[cfg.command](cfg, settings)
    except PatternMismatchError as error:
        logger.warning("%s", error)
        return EXIT_PATTERN_MISMATCH
    except ValidationError as error:
        print(f"qpf-rdm: invalid configuration: {error}", file=sys.stderr)
        return EXIT_USAGE
    except QpfError as error:
        print(f"qpf-rdm: {error}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
