"""
Command-line interface.

    smfp gen eisenstein --k 4 --B 20 --out e4.smfp
    smfp gen hasse --g 2 --p 5 --B 8
    smfp op U,V --p 5 f.smfp --out g.smfp
    smfp verify all --seed 42
    smfp table e4.smfp --max-trace 6

Exit codes: 0 success, 1 a verification check failed, 2 usage error or
unknown generator, 3 parameter/type error (the message names the library
error or the first bad edge of an operator chain), 4 unparsable input.
Outputs are written to a temporary file and renamed into place, so a
failing run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import generators as gen
from .coeffdomain import CoeffDomain
from .errors import ParseError, SMFPError
from .operators import cartier, hecke_Tl_g1, op_phi, op_theta_det, op_theta_matrix, op_U, op_V
from .quadforms import HalfIntegralForm
from .qseries import MatrixQSeries, QSeries, deserialize, reduce_series, serialize
from .suites import DEFAULT_SEED, READING, SUITES, run_suite

GENERATORS = ("eisenstein", "delta", "hasse", "theta", "chi10", "psi4")
OPERATORS = ("U", "V", "phi", "hecke", "cartier", "thetadet", "thetamatrix")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    subcommand: str
    genus: int | None = None
    prime: int | None = None
    bound: int | None = None
    scale: int = 1
    input: str | None = None
    output: str | None = None
    suite: str | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.bound is not None and self.bound < 0:
            raise CliError(3, "bound must be nonnegative")
        if self.prime is not None:
            try:
                CoeffDomain(self.prime)
            except ValueError as exc:
                raise CliError(3, f"{type(exc).__name__}: {exc}") from None


def _write_atomic(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".smfp-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _read_series(path: str):
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(4, f"cannot read {path}: {exc.strerror}") from None
    try:
        return deserialize(text)
    except ParseError as exc:
        raise CliError(4, f"{path}: {exc}") from None


def _sidecar(cfg: RunConfig, log: list) -> str:
    return json.dumps({"config": asdict(cfg), "operators": [e.as_dict() for e in log]},
                      indent=2) + "\n"


# ---------------------------------------------------------------------------
# gen


def _generate(name: str, args) -> QSeries:
    B = 8 if args.B is None else args.B
    if name == "eisenstein":
        if args.k is None:
            raise CliError(3, "eisenstein needs --k")
        f = gen.eisenstein_g1(args.k, B)
    elif name == "delta":
        f = gen.delta_g1(B)
    elif name == "hasse":
        if args.p is None:
            raise CliError(3, "hasse needs --p")
        return gen.hasse_series(args.g or 1, args.p, B)
    elif name == "theta":
        if args.m is None:
            raise CliError(3, "theta needs --m (four characteristic bits)")
        f = gen.theta_constant_g2(gen.ThetaCharacteristic.from_bits(args.m), B)
    elif name == "chi10":
        f = gen.chi10_prop(B)
    else:
        f = gen.psi4_prop(B)
    return f if args.p is None else reduce_series(f, args.p)


def cmd_gen(args, parser) -> int:
    if args.name not in GENERATORS:
        parser.print_usage(sys.stderr)
        print(f"smfp gen: unknown generator {args.name!r}; choose from {', '.join(GENERATORS)}",
              file=sys.stderr)
        return 2
    cfg = RunConfig("gen", args.g, args.p, args.B, 1, None, args.out, None, args.seed)
    f = _generate(args.name, args)
    _write_atomic(args.out, serialize(f))
    if args.out:
        _write_atomic(args.out + ".log.json", _sidecar(cfg, []))
    return 0


# ---------------------------------------------------------------------------
# op


def _signature(x) -> str:
    if isinstance(x, MatrixQSeries):
        return f"matrix(g={x.g}, Fp:{x.p})"
    return f"scalar(g={x.g}, {x.domain.tag})"


def _check_edge(op: str, kind: str, g: int, p) -> str | None:
    """Reason why ``op`` cannot take a (kind, g, p) input, or None."""
    if op == "cartier":
        return None if kind == "matrix" else "needs a matrix series"
    if kind != "scalar":
        return "needs a scalar series"
    if op in ("U", "V", "thetamatrix") and p is None:
        return "needs an F_p series (pass --p to reduce the input)"
    if op == "phi" and g < 2:
        return "needs genus >= 2"
    if op == "hecke" and g != 1:
        return "needs genus 1"
    return None


def _type_check(pipeline: list[str], x, args) -> None:
    kind = "matrix" if isinstance(x, MatrixQSeries) else "scalar"
    g, p = x.g, x.p
    prev = f"input {_signature(x)}"
    for op in pipeline:
        if op not in OPERATORS:
            raise CliError(3, f"bad edge {prev} -> {op}: unknown operator; "
                              f"choose from {', '.join(OPERATORS)}")
        if op == "hecke" and args.l is None:
            raise CliError(3, f"bad edge {prev} -> hecke: needs --l")
        reason = _check_edge(op, kind, g, p)
        if reason:
            raise CliError(3, f"bad edge {prev} -> {op}: {reason}")
        if op == "phi":
            g -= 1
        elif op == "thetamatrix":
            kind = "matrix"
        prev = op


def cmd_op(args) -> int:
    pipeline = [s for s in args.pipeline.split(",") if s]
    if not pipeline:
        raise CliError(3, "empty operator pipeline")
    cfg = RunConfig("op", args.g, args.p, args.B, 1, args.input, args.out, None, args.seed)
    x = _read_series(args.input)
    log: list = []
    if args.p is not None:
        if x.p is None and isinstance(x, QSeries):
            x = reduce_series(x, args.p)
        elif x.p != args.p:
            raise CliError(3, f"DomainMismatch: input is over F_{x.p}, --p {args.p} given")
    _type_check(pipeline, x, args)
    for op in pipeline:
        if op == "U":
            x = op_U(x, log=log)
        elif op == "V":
            x = op_V(x, log=log)
        elif op == "phi":
            x = op_phi(x, log=log)
        elif op == "hecke":
            x = hecke_Tl_g1(x, args.l, args.k, log=log)
        elif op == "cartier":
            x = cartier(x, log=log)
        elif op == "thetadet":
            x = op_theta_det(x, log=log)
        else:
            x = op_theta_matrix(x, log=log)
    _write_atomic(args.out, serialize(x))
    sidecar = _sidecar(cfg, log)
    if args.out:
        _write_atomic(args.out + ".log.json", sidecar)
    else:
        sys.stderr.write(sidecar)
    return 0


# ---------------------------------------------------------------------------
# verify / table


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        print(f"smfp verify: unknown suite {args.suite!r}; choose from "
              f"{', '.join([*SUITES, 'all'])}", file=sys.stderr)
        return 2
    RunConfig("verify", None, args.p, args.B, 1, None, args.out, args.suite, args.seed)
    checks = run_suite(args.suite, seed=args.seed, p=args.p, B=args.B)
    lines = [READING] + [c.line() for c in checks]
    _write_atomic(args.out, "\n".join(lines) + "\n")
    return 1 if any(c.status == "FAIL" for c in checks) else 0


def _render_value(x, v) -> str:
    if isinstance(x, MatrixQSeries):
        return str(x[v])
    return x.domain.render(x[v])


def cmd_table(args) -> int:
    x = _read_series(args.input)
    limit = x.bound if args.max_trace is None else Fraction(args.max_trace)
    head = serialize(x).split("\n", 1)[0]
    rows = [head]
    for key in x.sorted_keys():
        t = HalfIntegralForm(x.g, x.d, key)
        if t.trace > limit:
            break
        rows.append(f"{t.render():<24} {_render_value(x, key)}")
    _write_atomic(args.out, "\n".join(rows) + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--p", type=int, help="odd prime")
    common.add_argument("--B", type=int, help="trace bound")
    common.add_argument("--d", type=int, default=1, help="scale (forms stored as 2dT)")
    common.add_argument("--k", type=int, help="weight")
    common.add_argument("--m", help="theta characteristic bits, e.g. 0000")
    common.add_argument("--l", type=int, help="Hecke prime")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="smfp", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gen", parents=[common], help="generate a series")
    p.add_argument("name", help=", ".join(GENERATORS))
    p = sub.add_parser("op", parents=[common], help="apply an operator pipeline")
    p.add_argument("pipeline", help="comma separated: " + ",".join(OPERATORS))
    p.add_argument("input")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join([*SUITES, "all"]))
    p = sub.add_parser("table", parents=[common], help="print a coefficient table")
    p.add_argument("input")
    p.add_argument("--max-trace", type=Fraction, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args, parser)
        if args.command == "op":
            return cmd_op(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_table(args)
    except CliError as exc:
        print(f"smfp {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except (SMFPError, ValueError) as exc:
        print(f"smfp {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
