"""Command-line front end.

Exit codes: 0 and 1 carry the command's yes/no answer, 2 flags an internal
disagreement (a bug), 64 a usage or parse error, 65 a size limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import partition_polynomial
from .certificate import (
    BRUTE_FORCE_MAX_N,
    Certificate,
    NotCertifiable,
    brute_force_partition,
    build_certificate,
    encode,
    verify_certificate,
)
from .matrix import DimensionLimitError, bareiss_determinant
from .partition_matrix import MAX_N, WeightSet, build, check_properties
from .subsets import LimitExceeded

EXIT_YES = 0
EXIT_NO = 1
EXIT_BUG = 2
EXIT_USAGE = 64
EXIT_LIMIT = 65

ENV_MAX_N = "NULLPART_MAX_N"


class UsageError(Exception):
    pass


class LimitError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    weights: WeightSet
    max_n: int = MAX_N
    output_format: str = "text"
    output_path: Path | None = None
    verify_properties: bool = False
    method: str = "solve"


def parse_int(token: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise UsageError(f"not an integer: {token!r}") from None


def read_weight_file(path: Path) -> list[int]:
    """One integer per line; blank lines and '#' comments are ignored."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_int(line))
    return out


def default_max_n() -> int:
    raw = os.environ.get(ENV_MAX_N)
    if raw is None:
        return MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_MAX_N}={raw!r} is not an integer") from None


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.file is not None and args.weights:
        raise UsageError("give weights either positionally or via --file, not both")
    raw = read_weight_file(Path(args.file)) if args.file is not None else [parse_int(t) for t in args.weights]
    if not raw:
        raise UsageError("no weights given")
    max_n = args.max_n if args.max_n is not None else default_max_n()
    if max_n < 1:
        raise UsageError(f"max-n must be at least 1, got {max_n}")
    if len(raw) > max_n:
        raise LimitError(f"n={len(raw)} exceeds max-n={max_n}")
    return RunConfig(
        weights=WeightSet(tuple(raw)),
        max_n=max_n,
        output_format=args.format,
        output_path=Path(args.output) if args.output else None,
        verify_properties=getattr(args, "verify_properties", False),
        method=getattr(args, "method", "solve"),
    )


def emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output_path is not None:
        cfg.output_path.write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_check(cfg: RunConfig) -> int:
    w = cfg.weights
    if w.n > BRUTE_FORCE_MAX_N:
        raise LimitError(f"n={w.n} exceeds brute-force limit {BRUTE_FORCE_MAX_N}")
    witness = brute_force_partition(w)
    det = bareiss_determinant(build(w, max_n=cfg.max_n).body)
    agree = (witness is not None) == (det == 0)
    if cfg.output_format == "json":
        emit(cfg, _dump({
            "weights": list(w),
            "partitionable": witness is not None,
            "witness": None if witness is None else {"side": str(witness.side), "complement": str(witness.complement)},
            "det": str(det),
            "agree": agree,
        }))
    else:
        lines = []
        if witness is not None:
            lines.append(f"partitionable: {witness}")
        else:
            lines.append(f"non-partitionable; det = {det}")
        lines.append(f"brute force: {'witness found' if witness else 'no split'}; determinant: {det}")
        if not agree:
            lines.append("DISAGREEMENT between brute force and determinant")
        emit(cfg, "\n".join(lines))
    if not agree:
        return EXIT_BUG
    return EXIT_YES if witness is not None else EXIT_NO


def cmd_matrix(cfg: RunConfig) -> int:
    pm = build(cfg.weights, max_n=cfg.max_n)
    report = check_properties(pm) if cfg.verify_properties else None
    if cfg.output_format == "json":
        data = pm.to_json()
        if report is not None:
            data["properties"] = report.results
        emit(cfg, _dump(data))
    else:
        text = pm.to_text()
        if report is not None:
            text += "\n\n" + "\n".join(report.lines())
        emit(cfg, text)
    if report is not None and not report.passed:
        return EXIT_BUG
    return EXIT_YES


def factor_expression(signs: Sequence[int], weights: Sequence[int]) -> str:
    values = [s * x for s, x in zip(signs, weights)] + [weights[-1]]
    out = str(values[0])
    for v in values[1:]:
        out += f"+{v}" if v >= 0 else f"-{-v}"
    return f"({out})"


def cmd_det(cfg: RunConfig) -> int:
    w = list(cfg.weights)
    det = bareiss_determinant(build(cfg.weights, max_n=cfg.max_n).body)
    pp = partition_polynomial(w)
    match = det == pp.value
    if cfg.output_format == "json":
        emit(cfg, _dump({
            "weights": w,
            "bareiss": str(det),
            "partition_polynomial": str(pp.value),
            "factors": [
                {"signs": list(s), "expression": factor_expression(s, w), "value": str(v)}
                for s, v in zip(pp.signs, pp.factors)
            ],
            "match": match,
        }))
    else:
        lines = [
            f"bareiss determinant:  {det}",
            f"partition polynomial: {pp.value}",
            f"factors ({len(pp.factors)}):",
        ]
        lines += [f"  {factor_expression(s, w)} = {v}" for s, v in zip(pp.signs, pp.factors)]
        lines.append("MATCH" if match else "MISMATCH")
        emit(cfg, "\n".join(lines))
    return EXIT_YES if match else EXIT_BUG


def cmd_certificate(cfg: RunConfig) -> int:
    try:
        cert = build_certificate(cfg.weights, max_n=cfg.max_n, method=cfg.method)
    except NotCertifiable as exc:
        if cfg.output_format == "json":
            print(_dump({"certificate": None, "witness": {
                "side": str(exc.witness.side), "complement": str(exc.witness.complement)}}))
        else:
            print(f"no certificate: partitionable: {exc.witness}")
        return EXIT_NO
    check = verify_certificate(cert, encode(cfg.weights))
    if not check.passed:
        print(f"refusing to emit unverified certificate; residual: {check.residual}", file=sys.stderr)
        return EXIT_BUG
    if cfg.output_path is not None:
        cfg.output_path.write_text(cert.dumps())
        if cfg.output_format == "text":
            print(f"verified certificate (degree {cert.degree()}, det {cert.meta['det']}) written to {cfg.output_path}")
    elif cfg.output_format == "json":
        sys.stdout.write(cert.dumps())
    else:
        print(cert.to_text())
    return EXIT_YES


def cmd_verify(path: Path, output_format: str = "text") -> int:
    try:
        cert = Certificate.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"malformed certificate {path}: {exc}") from None
    n = len(cert.beta_squares)
    if cert.weights.n != n:
        result = {"passed": False, "reason": f"certificate has {n} square multipliers but {cert.weights.n} weights"}
    else:
        check = verify_certificate(cert, encode(cert.weights))
        result = {"passed": check.passed}
        if not check.passed:
            result["residual"] = str(check.residual)
    if output_format == "json":
        print(_dump(result))
    elif result["passed"]:
        print("PASS: certificate expands to 1")
    else:
        print("FAIL: " + result.get("reason", f"residual {result.get('residual')}"))
    return EXIT_YES if result["passed"] else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("weights", nargs="*", help="integer weights w_1 .. w_n")
    common.add_argument("--file", help="read weights from a file, one per line")
    common.add_argument("--max-n", type=int, default=None, help=f"largest n accepted (default {MAX_N} or ${ENV_MAX_N})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output", help="write output to this file")

    parser = _Parser(prog="nullpart", description="Nullstellensatz refutations for Partition")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="decide partitionability two ways")
    m = sub.add_parser("matrix", parents=[common], help="print the partition matrix")
    m.add_argument("--verify-properties", action="store_true")
    sub.add_parser("det", parents=[common], help="compare Bareiss determinant and partition polynomial")
    c = sub.add_parser("certificate", parents=[common], help="build and verify a certificate")
    c.add_argument("--method", choices=("solve", "cramer"), default="solve")
    v = sub.add_parser("verify", help="verify a certificate file")
    v.add_argument("path")
    v.add_argument("--format", choices=("text", "json"), default="text")
    return parser


COMMANDS = {"check": cmd_check, "matrix": cmd_matrix, "det": cmd_det, "certificate": cmd_certificate}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; every argparse complaint is a usage error
        return exc.code if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(Path(args.path), args.format)
        cfg = make_config(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"nullpart: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LimitError, LimitExceeded, DimensionLimitError) as exc:
        print(f"nullpart: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
