"""
Command-line front end.

    langexp fit --input FILE --kmax X [--kmin X] [--method exact|pade] [--format text|json] [--strict]
    langexp eval {L,Linv,LinvPade,Lprime} ARG
    langexp moments --gamma G --kmax X [--kmin X] --order N
    langexp sample --gamma G --kmax X [--kmin X] -n N [--seed S] [--output FILE]

Exit status: 0 on success, 1 on I/O or parse errors, 2 on domain or model
errors (including unfittable data).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, TextIO

from . import __version__
from .errors import ConvergenceError, DomainError, InsufficientDataError
from .estimate import METHODS, fit_gamma, goodness_variance, summarize
from .langevin import inv_langevin, inv_langevin_pade, langevin, langevin_derivative
from .truncexp import MAX_CUMULANT_ORDER, SAMPLER, TruncExp, cumulant, sample

EXIT_OK = 0
EXIT_IO = 1
EXIT_MODEL = 2

# paper-era convention for the clearness index; k_max has no sane default
DEFAULT_KMIN = 0.05

FUNCTIONS = {
    "L": langevin,
    "Linv": inv_langevin,
    "LinvPade": inv_langevin_pade,
    "Lprime": langevin_derivative,
}


class InputParseError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    k_min: float = DEFAULT_KMIN
    k_max: Optional[float] = None
    input_path: Optional[str] = None
    gamma: Optional[float] = None
    n: Optional[int] = None
    seed: Optional[int] = None
    method: str = "exact"
    output_format: str = "text"
    strict: bool = False
    order: int = 2
    function: Optional[str] = None
    arg: Optional[float] = None
    output_path: Optional[str] = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        return cls(**fields)


def fmt(value: float) -> str:
    return f"{value:.17g}"


def read_observations(stream: TextIO) -> Iterator[float]:
    """Yield one float per non-blank, non-comment line."""
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield float(line)
        except ValueError:
            raise InputParseError(f"line {lineno}: cannot parse {line!r} as a number") from None


def cmd_fit(cfg: RunConfig, out: TextIO) -> int:
    with open(cfg.input_path, encoding="utf-8") as fh:
        summary = summarize(read_observations(fh), cfg.k_min, cfg.k_max, strict=cfg.strict)
    if summary.n_clipped:
        print(
            f"warning: clipped {summary.n_clipped} observation(s) onto [{cfg.k_min}, {cfg.k_max}]",
            file=sys.stderr,
        )
    fit = fit_gamma(summary, cfg.k_min, cfg.k_max, method=cfg.method)
    verdict = goodness_variance(fit).verdict if summary.n >= 2 else None
    report = {
        "gamma_hat": fit.gamma_hat,
        "y": fit.y,
        "k_bar": summary.k_bar,
        "s2": summary.s2,
        "n": summary.n,
        "model_mean": fit.model_mean,
        "model_variance": fit.model_variance,
        "variance_ratio": fit.variance_ratio,
        "method": fit.method,
        "iterations": fit.iterations,
        "n_clipped": summary.n_clipped,
        "verdict": verdict,
    }
    if cfg.output_format == "json":
        print(json.dumps(report), file=out)
    else:
        for key, value in report.items():
            text = fmt(value) if isinstance(value, float) else str(value)
            print(f"{key:<15}{text}", file=out)
    return EXIT_OK


def cmd_eval(cfg: RunConfig, out: TextIO) -> int:
    value = FUNCTIONS[cfg.function](cfg.arg)
    if cfg.output_format == "json":
        print(json.dumps({"function": cfg.function, "arg": cfg.arg, "value": value}), file=out)
    else:
        print(fmt(value), file=out)
    return EXIT_OK


def cmd_moments(cfg: RunConfig, out: TextIO) -> int:
    if not 1 <= cfg.order <= MAX_CUMULANT_ORDER:
        raise DomainError(f"--order must be in [1, {MAX_CUMULANT_ORDER}], got {cfg.order}")
    d = TruncExp(cfg.gamma, cfg.k_min, cfg.k_max)
    kappas = [cumulant(d, k) for k in range(1, cfg.order + 1)]
    if cfg.output_format == "json":
        print(json.dumps(kappas), file=out)
    else:
        print(f"{'k':>2}  kappa_k", file=out)
        for k, value in enumerate(kappas, start=1):
            print(f"{k:>2}  {fmt(value)}", file=out)
    return EXIT_OK


def cmd_sample(cfg: RunConfig, out: TextIO) -> int:
    d = TruncExp(cfg.gamma, cfg.k_min, cfg.k_max)
    draws = sample(d, cfg.n, seed=cfg.seed)
    text = "".join(f"{fmt(v)}\n" for v in draws)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {"fit": cmd_fit, "eval": cmd_eval, "moments": cmd_moments, "sample": cmd_sample}


def _bounds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kmin", dest="k_min", type=float, default=DEFAULT_KMIN,
                   help=f"lower truncation bound (default {DEFAULT_KMIN})")
    p.add_argument("--kmax", dest="k_max", type=float, required=True,
                   help="upper truncation bound")


def _format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langexp",
        description="Truncated exponential distribution and the Langevin function.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="estimate gamma from observations")
    p.add_argument("--input", dest="input_path", required=True,
                   help="file with one observation per line; '#' comments and blank lines ignored")
    _bounds(p)
    p.add_argument("--method", choices=METHODS, default="exact")
    _format(p)
    p.add_argument("--strict", action="store_true",
                   help="reject out-of-range observations instead of clipping them")

    p = sub.add_parser("eval", help="evaluate a Langevin-family function")
    p.add_argument("function", choices=sorted(FUNCTIONS))
    p.add_argument("arg", type=float)
    _format(p)

    p = sub.add_parser("moments", help="print cumulants kappa_1..kappa_N")
    p.add_argument("--gamma", type=float, required=True)
    _bounds(p)
    p.add_argument("--order", type=int, default=2, help=f"highest order, 1..{MAX_CUMULANT_ORDER}")
    _format(p)

    p = sub.add_parser(
        "sample",
        help="draw variates",
        epilog=f"Generator: {SAMPLER}. The same --seed gives byte-identical output.",
    )
    p.add_argument("--gamma", type=float, required=True)
    _bounds(p)
    p.add_argument("-n", dest="n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", dest="output_path", help="write here instead of stdout")
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    ns = build_parser().parse_args(argv)
    cfg = RunConfig.from_namespace(ns)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (OSError, InputParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, InsufficientDataError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
