"""Command-line front end: coefficient dumps, structural checks, and
truncation / global convergence studies.

Commands: coeffs, check, truncation, converge.  All options may also be
supplied through `--config <file>` holding newline-separated `key = value`
pairs (same keys as the flags); explicit flags override the file.
Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import coeffs, plc, pqc, solver, study
from .grid import KernelParams, UniformGrid
from .oracle import OracleError, constant, exponential, monomial
from .solver import CollocationSystem, SingularSystemError

COMMANDS = ("coeffs", "check", "truncation", "converge")

_FUNCTIONS = {
    "const": constant,
    "linear": lambda: monomial(1),
    "quadratic": lambda: monomial(2),
    "exp": exponential,
}


class UsageError(Exception):
    """Invalid invocation; message names the offending flag."""


@dataclass(frozen=True)
class CliInvocation:
    command: str
    options: dict
    outputPath: str


def _parse_levels(raw: str) -> tuple:
    try:
        levels = tuple(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"--levels: expected comma-separated integers, got {raw!r}")
    if not levels:
        raise UsageError("--levels: empty list")
    return levels


def _parse_interval(raw: str) -> tuple:
    try:
        a, b = (float(tok) for tok in raw.split(","))
    except ValueError:
        raise UsageError(f"--interval: expected 'a,b', got {raw!r}")
    if not a < b:
        raise UsageError(f"--interval: need a < b, got {raw!r}")
    return a, b


def _parse_point(raw: str):
    if raw in ("center", "first"):
        return raw
    if raw.startswith("x="):
        try:
            return float(raw[2:])
        except ValueError:
            pass
    raise UsageError(f"--point: expected center, first or x=<real>, got {raw!r}")


def _read_config(path: str) -> dict:
    pairs = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(
                        f"--config: line {lineno} is not 'key = value': {line!r}")
                key, _, value = line.partition("=")
                pairs[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path!r}: {exc}")
    return pairs


_OPTION_KEYS = ("scheme", "gamma", "interval", "levels", "function",
                "point", "format", "out")
_DEFAULTS = {"interval": "0,1", "function": "exp", "point": "center",
             "format": "csv", "out": None}


class _Parser(argparse.ArgumentParser):
    def error(self, message):            # exit 2 with a one-line message
        raise UsageError(message)


def parse_args(argv) -> CliInvocation:
    parser = _Parser(prog="nlcolloc", description=__doc__, add_help=True)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--scheme", choices=("plc", "pqc"))
    parser.add_argument("--gamma")
    parser.add_argument("--interval")
    parser.add_argument("--levels")
    parser.add_argument("--function", choices=tuple(_FUNCTIONS))
    parser.add_argument("--point")
    parser.add_argument("--format", choices=("csv", "markdown"))
    parser.add_argument("--out")
    parser.add_argument("--config")
    args = parser.parse_args(argv)

    raw = {k: getattr(args, k) for k in _OPTION_KEYS}
    if args.config:
        for key, value in _read_config(args.config).items():
            if key not in _OPTION_KEYS:
                raise UsageError(f"--config: unknown key {key!r}")
            if raw[key] is None:          # flags override the file
                raw[key] = value
    for key, value in _DEFAULTS.items():
        if raw[key] is None:
            raw[key] = value

    if raw["scheme"] is None:
        raise UsageError("--scheme is required (plc or pqc)")
    if raw["scheme"] not in ("plc", "pqc"):
        raise UsageError(f"--scheme: expected plc or pqc, got {raw['scheme']!r}")
    if raw["gamma"] is None:
        raise UsageError("--gamma is required")
    try:
        gamma = float(raw["gamma"])
    except ValueError:
        raise UsageError(f"--gamma: not a real number: {raw['gamma']!r}")
    if not 0.0 <= gamma < 1.0:
        raise UsageError(f"--gamma: must lie in [0, 1), got {gamma}")
    if raw["levels"] is None:
        raise UsageError("--levels is required")
    if raw["function"] not in _FUNCTIONS:
        raise UsageError(f"--function: unknown kind {raw['function']!r}")
    if raw["format"] not in ("csv", "markdown"):
        raise UsageError(f"--format: expected csv or markdown, got {raw['format']!r}")

    options = {
        "scheme": raw["scheme"],
        "gamma": gamma,
        "interval": _parse_interval(raw["interval"]),
        "levels": _parse_levels(raw["levels"]),
        "function": raw["function"],
        "point": _parse_point(raw["point"]),
        "format": raw["format"],
    }
    return CliInvocation(command=args.command, options=options,
                         outputPath=raw["out"])


# --- command bodies ---------------------------------------------------------

def _cmd_coeffs(opt) -> str:
    params = KernelParams(opt["gamma"])
    a, b = opt["interval"]
    out = []
    for N in opt["levels"]:
        grid = UniformGrid(a, b, N)
        out.append(f"# scheme = {opt['scheme']}, gamma = {opt['gamma']:g}, N = {N}")
        if opt["scheme"] == "plc":
            c = coeffs.plc_weights(params, grid)
            out.append(f"sigma = {c.sigma:.17g}")
            tables = {"g": c.g, "alpha": c.alpha, "d": c.d}
        else:
            c = coeffs.pqc_weights(params, grid)
            out.append(f"eta = {c.eta:.17g}")
            tables = {"m": c.m, "p": c.p, "q": c.q, "n": c.n,
                      "beta": c.beta, "gamma": c.gammaB, "d_half": c.dHalf}
        for name, table in tables.items():
            out.append(f"[{name}]")
            out.append(coeffs.dump_table(table).rstrip("\n"))
    return "\n".join(out) + "\n"


def _bare_system(scheme: str, params, grid) -> CollocationSystem:
    if scheme == "plc":
        A = plc.plc_matrix(params, grid)
        c = coeffs.plc_weights(params, grid)
        return CollocationSystem(matrix=A, rhs=np.zeros(len(A)),
                                 ordering="plc-interior", scaling=c.sigma,
                                 scheme="plc", params=params, grid=grid,
                                 nodes=grid.interior_nodes())
    A = pqc.pqc_matrix(params, grid)
    c = coeffs.pqc_weights(params, grid)
    nodes = np.concatenate([grid.interior_nodes(), grid.half_nodes()])
    return CollocationSystem(matrix=A, rhs=np.zeros(len(A)),
                             ordering="pqc-paper", scaling=c.eta,
                             scheme="pqc", params=params, grid=grid,
                             nodes=nodes)


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "n/a"
    if isinstance(v, np.ndarray):
        return f"min {np.min(v):.10e}, max {np.max(v):.10e}"
    if isinstance(v, float):
        return f"{v:.10e}"
    return str(v)


def _cmd_check(opt) -> str:
    params = KernelParams(opt["gamma"])
    a, b = opt["interval"]
    out = []
    for N in opt["levels"]:
        system = _bare_system(opt["scheme"], params, UniformGrid(a, b, N))
        report = solver.check_structure(system)
        out.append(f"N = {N}")
        for name in ("diagPositive", "offDiagNegative", "rowSums",
                     "minRowSlack", "gershgorinLowerBound", "symmetric",
                     "spdFactorizationOk"):
            out.append(f"{name} = {_fmt_value(getattr(report, name))}")
    return "\n".join(out) + "\n"


def _cmd_truncation(opt) -> str:
    config = study.StudyConfig(
        scheme=opt["scheme"], mode="truncation", gamma=opt["gamma"],
        levels=opt["levels"], interval=opt["interval"],
        testFunction=_FUNCTIONS[opt["function"]](),
        evalPoints=(opt["point"],))
    report = study.run_truncation_study(config)[0]
    return study.emit_table(report, opt["format"])


def _cmd_converge(opt) -> str:
    config = study.StudyConfig(
        scheme=opt["scheme"], mode="global", gamma=opt["gamma"],
        levels=opt["levels"], interval=opt["interval"],
        testFunction=_FUNCTIONS[opt["function"]]())
    report = study.run_global_study(config)
    return study.emit_table(report, opt["format"])


_BODIES = {"coeffs": _cmd_coeffs, "check": _cmd_check,
           "truncation": _cmd_truncation, "converge": _cmd_converge}


def run(invocation: CliInvocation) -> int:
    try:
        text = _BODIES[invocation.command](invocation.options)
    except (OracleError, SingularSystemError, FloatingPointError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    if invocation.outputPath:
        with open(invocation.outputPath, "w") as fh:
            fh.write(text)
    return 0


def main(argv=None) -> int:
    try:
        invocation = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return run(invocation)


if __name__ == "__main__":
    sys.exit(main())
