# cardest. GNU GPL-3.0 (see LICENSE file)
"""
cli.py
Command line front end: `cardest {bounds,estimate,verify,sweep}`.

Reports go to standard output (or --output), diagnostics to standard error.
Exit codes are stable:

| code | meaning                         |
|------|---------------------------------|
| 0    | success                         |
| 2    | invalid arguments or grid       |
| 3    | hard cap reached (estimate)     |
| 4    | input file cannot be read       |
| 5    | verification failed             |
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass
from enum import IntEnum

from cardest.bounds import Precision, compute_k_err, sample_budget, hard_cap, repeat_shortfall_tail
from cardest.classes import run
from cardest.errors import ParameterDomainError, BudgetExhaustedError, SourceError, TrialBatchError, GridFormatError
from cardest.harness import run_trials, sweep, passes, report_rows, CSV_COLUMNS
from cardest.samplers import RngSeed, Identity, synthetic_source, file_source
from cardest.utils import functions as fun

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    INVALID = 2
    BUDGET_EXHAUSTED = 3
    IO_ERROR = 4
    VERIFICATION_FAILED = 5


COMMANDS = ("bounds", "estimate", "verify", "sweep")


@dataclass
class CliConfig:
    """Settings of one CLI invocation, built from the parsed arguments"""
    command: str
    delta_err: float = None
    p_err: float = None
    n: int = None
    input_path: str = None
    identity_mode: str = Identity.POSITION.value
    trials: int = 1000
    seed: int = 0
    hard_cap: int = None
    output_format: str = None
    """json or csv, None picks the command's default (csv for sweep, json otherwise)"""
    output_path: str = None
    """None writes to standard output"""
    grid_path: str = None
    """Sweep grid CSV, None uses the bundled canonical grid"""
    workers: int = 1
    verbose: bool = False

    @classmethod
    def from_args(cls, args:argparse.Namespace) -> "CliConfig":
        """Config from an argparse namespace, unknown attributes are ignored"""
        fields = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(args).items() if k in fields})

    @property
    def precision(self) -> Precision:
        """Precision from --delta and --p-err"""
        return Precision(self.delta_err, self.p_err)

    @property
    def format(self) -> str:
        if self.output_format is not None:
            return self.output_format
        return "csv" if self.command == "sweep" else "json"

    def validate(self):
        """Check command specific requirements before running anything

        Raises:
            ParameterDomainError: missing or inconsistent settings
        """
        if self.command not in COMMANDS:
            raise ParameterDomainError(f"Unknown command '{self.command}', use one of {COMMANDS}")
        if self.command != "sweep":
            Precision(self.delta_err, self.p_err)
        if self.command == "estimate" and (self.n is None) == (self.input_path is None):
            raise ParameterDomainError("estimate needs exactly one of --n or --input")
        if self.command == "verify" and self.n is None:
            raise ParameterDomainError("verify needs --n (the cardinality must be known)")
        if self.n is not None and self.n < 1:
            raise ParameterDomainError(f"--n must be at least 1, got {self.n}")
        if self.trials < 1:
            raise ParameterDomainError(f"--trials must be at least 1, got {self.trials}")
        if self.hard_cap is not None and self.hard_cap < 1:
            raise ParameterDomainError(f"--hard-cap must be at least 1, got {self.hard_cap}")
        if self.workers < 1:
            raise ParameterDomainError(f"--workers must be at least 1, got {self.workers}")
        RngSeed(self.seed)


# COMMANDS ________________________________________________________________________________________

def cmd_bounds(cfg:CliConfig) -> tuple[dict, int]:
    """k_err and its ceiling, plus the sample budget and hard cap when --n is given"""
    p = cfg.precision
    k = compute_k_err(p)
    report = {
        "delta_err": p.delta_err,
        "p_err": p.p_err,
        "k_err": k.value,
        "k_ceil": k.ceil,
        "repeat_shortfall_tail": repeat_shortfall_tail(p),
    }
    if cfg.n is not None:
        report.update(n=cfg.n, budget=sample_budget(cfg.n, k), hard_cap=hard_cap(cfg.n, k))
    return report, ExitCode.OK


def cmd_estimate(cfg:CliConfig) -> tuple[dict, int]:
    """One estimation run against a synthetic set (--n) or the lines of a file (--input)"""
    seed = RngSeed(cfg.seed)
    if cfg.n is not None:
        source = synthetic_source(cfg.n, seed=seed)
    else:
        source = file_source(cfg.input_path, identity=cfg.identity_mode, seed=seed)

    try:
        estimate = run(cfg.precision, source, hard_cap=cfg.hard_cap)
    except BudgetExhaustedError as er:
        print(f"cardest: {er}", file=sys.stderr)
        partial = {"error": "budget_exhausted", "hard_cap": er.hard_cap, "s": er.s, "d": er.d, "w": er.w, "seed": cfg.seed}
        return partial, ExitCode.BUDGET_EXHAUSTED

    report = estimate.as_json()
    report["seed"] = cfg.seed
    return report, ExitCode.OK


def cmd_verify(cfg:CliConfig) -> tuple[dict, int]:
    """Monte Carlo check of the guarantee at one (n, precision) point.
    The report is emitted even when verification fails."""
    as_data = (lambda r: r.as_row()) if cfg.format == "csv" else (lambda r: r.as_json())
    try:
        report = run_trials(cfg.n, cfg.precision, cfg.trials, cfg.seed, workers=cfg.workers)
    except TrialBatchError as er:
        print(f"cardest: {er}", file=sys.stderr)
        data = as_data(er.report) if er.report is not None else {"error": str(er)}
        return data, ExitCode.VERIFICATION_FAILED

    if not passes(report):
        print(f"cardest: verification failed, wilson99 {report.wilson_99_upper:.4f} >= p_err {report.precision.p_err}",
              file=sys.stderr)
        return as_data(report), ExitCode.VERIFICATION_FAILED
    return as_data(report), ExitCode.OK


def cmd_sweep(cfg:CliConfig) -> tuple[list, int]:
    """`cmd_verify` over every point of a grid CSV"""
    grid = fun.import_grid_csv(cfg.grid_path)
    reports = sweep(grid, cfg.trials, cfg.seed, workers=cfg.workers)
    failed = [r for r in reports if not passes(r)]
    for r in failed:
        print(f"cardest: point n={r.n} delta_err={r.precision.delta_err} p_err={r.precision.p_err} failed"
              + (f": {r.error}" if r.error else ""), file=sys.stderr)
    if cfg.format == "json":
        return [r.as_json() for r in reports], (ExitCode.VERIFICATION_FAILED if failed else ExitCode.OK)
    return report_rows(reports), (ExitCode.VERIFICATION_FAILED if failed else ExitCode.OK)


_COMMANDS = {"bounds": cmd_bounds, "estimate": cmd_estimate, "verify": cmd_verify, "sweep": cmd_sweep}


# PARSER __________________________________________________________________________________________

def _int_arg(text:str) -> int:
    """int parser that also takes integral scientific notation like 1e4. Ranges are checked by `CliConfig.validate`"""
    try:
        value = float(text) if any(c in text for c in ".eE") else int(text)
    except ValueError as er:
        raise argparse.ArgumentTypeError(f"invalid integer '{text}'") from er
    if isinstance(value, float) and not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"'{text}' is not a finite integer")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per `COMMANDS` entry"""
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="cardest", formatter_class=fmt,
                                     description="Estimate the size of a set from uniform random samples")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--output", dest="output_path", default=None, help="write the report to this file instead of standard output")
    output.add_argument("--format", dest="output_format", choices=["json", "csv"], default=None,
                        help="report format (sweep defaults to csv, other commands to json)")
    output.add_argument("--verbose", action="store_true", help="log progress on standard error")

    precision = argparse.ArgumentParser(add_help=False)
    precision.add_argument("--delta", dest="delta_err", type=float, required=True, help="relative accuracy, in (0,1)")
    precision.add_argument("--p-err", dest="p_err", type=float, required=True, help="error probability, in (0,1)")

    trials = argparse.ArgumentParser(add_help=False)
    trials.add_argument("--trials", type=_int_arg, default=1000, help="number of Monte Carlo trials")
    trials.add_argument("--seed", type=_int_arg, default=0, help="base seed, trial i uses stream i")
    trials.add_argument("--workers", type=_int_arg, default=1, help="worker processes")

    pb = sub.add_parser("bounds", parents=[precision, output], formatter_class=fmt,
                        help="k_err, sample budget and hard cap")
    pb.add_argument("--n", type=_int_arg, default=None, help="cardinality, adds the budget and hard cap")

    pe = sub.add_parser("estimate", parents=[precision, output], formatter_class=fmt,
                        help="run the estimator once")
    source = pe.add_mutually_exclusive_group(required=True)
    source.add_argument("--n", type=_int_arg, default=None, help="sample a synthetic set of this size")
    source.add_argument("--input", dest="input_path", default=None, help="sample the lines of this UTF-8 file")
    pe.add_argument("--identity", dest="identity_mode", choices=[i.value for i in Identity], default="position",
                    help="what identifies a line of --input")
    pe.add_argument("--seed", type=_int_arg, default=0, help="seed of the random stream")
    pe.add_argument("--hard-cap", dest="hard_cap", type=_int_arg, default=None, help="give up after this many samples")

    pv = sub.add_parser("verify", parents=[precision, trials, output], formatter_class=fmt,
                        help="Monte Carlo check of the accuracy and sample budget guarantee")
    pv.add_argument("--n", type=_int_arg, required=True, help="cardinality of the synthetic set")

    ps = sub.add_parser("sweep", parents=[trials, output], formatter_class=fmt,
                        help="verify every point of a grid")
    ps.add_argument("--grid", dest="grid_path", default=None,
                    help="CSV with header n,delta_err,p_err (defaults to the bundled canonical grid)")

    return parser


def _render(cfg:CliConfig, data) -> str:
    if cfg.format == "json":
        return fun.as_json_text(data)
    rows = data if isinstance(data, list) else [data]
    if cfg.command in ("sweep", "verify") and all(set(CSV_COLUMNS) <= set(row) for row in rows):
        columns = CSV_COLUMNS
    else:
        columns = sorted({k for row in rows for k in row})
    return fun.as_csv_text(rows, columns)


def main(argv=None) -> int:
    """Entry point of `cardest`. Returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as er:
        # argparse exits 2 on bad arguments and 0 on --help
        return int(er.code or 0)

    cfg = CliConfig.from_args(args)
    logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)

    try:
        cfg.validate()
        logger.debug("running %s", cfg)
        data, code = _COMMANDS[cfg.command](cfg)
        fun.write_output(_render(cfg, data), cfg.output_path)
        return int(code)

    except GridFormatError as er:
        print(f"cardest: {er}", file=sys.stderr)
        if er.lines:
            print(f"cardest: offending lines {er.lines}", file=sys.stderr)
        return int(ExitCode.INVALID)
    except ParameterDomainError as er:
        print(f"cardest: {er}", file=sys.stderr)
        return int(ExitCode.INVALID)
    except (OSError, SourceError, UnicodeDecodeError) as er:
        print(f"cardest: {er}", file=sys.stderr)
        return int(ExitCode.IO_ERROR)


if __name__ == "__main__":
    sys.exit(main())
