"""Command-line interface: ``cartanball <subcommand> ...``.

Every subcommand reads JSON (a file path, ``-`` for stdin, or an inline JSON
literal) and writes JSON to stdout.  Exit codes: 0 ok, 2 parse or dimension
error, 3 not a group member, 4 ``--max-k`` guard, 5 internal inconsistency.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import io
from .ball import caratheodory_distance
from .classify import classify, is_non_unitary_normal, spectrum_normal
from .errors import (
    CartanError,
    DimensionMismatch,
    InternalInconsistency,
    KTooLarge,
    NotAMember,
    NotStrictContraction,
    ParseError,
    SquareDims,
)
from .fixed_points import (
    DEFAULT_MAX_K,
    Conclusion,
    common_eigen_fixed_points,
    detect_generic,
    enumerate_generic,
    verify_fixed,
)
from .generate import KINDS, generate
from .group import act, factorize, verify_relations
from .linalg import DEFAULT_TOL, ToleranceConfig
from .spectral import decompose

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_MEMBER = 3
EXIT_GUARD = 4
EXIT_INTERNAL = 5


@dataclass(frozen=True)
class CliConfig:
    tol: float = DEFAULT_TOL.eq_tol
    seed: int = 0
    max_k: int = DEFAULT_MAX_K
    output: str = "json"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.max_k < 0:
            raise ValueError("--max-k must be nonnegative")
        if self.output not in ("json", "pretty"):
            raise ValueError("--output must be json or pretty")

    @property
    def tolerances(self) -> ToleranceConfig:
        return ToleranceConfig(eq_tol=self.tol)


class _Failure(Exception):
    """Carries a JSON payload and exit code out of a command."""

    def __init__(self, code, payload):
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _read(source, stdin):
    if source == "-":
        return io.load_json(stdin.read())
    if source.lstrip().startswith(("{", "[")):
        return io.load_json(source)
    try:
        with open(source, encoding="utf-8") as fh:
            return io.load_json(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {source!r}: {exc.strerror}") from None


def _read_isometry(source, cfg, stdin, verify=True):
    return io.isometry_from_json(_read(source, stdin), cfg.tolerances, verify=verify)


def _read_matrix(source, stdin):
    return io.matrix_from_json(_read(source, stdin))


def cmd_gen(args, cfg, stdin):
    T = generate(args.kind, args.m, args.n, cfg.seed, args.target_norm, args.k, cfg.tolerances)
    return io.isometry_to_json(T)


def cmd_classify(args, cfg, stdin):
    T = _read_isometry(args.input, cfg, stdin, verify=False)
    c = classify(T, tol=cfg.tolerances)
    report = io.classification_to_json(c)
    if not c.is_member:
        raise _Failure(EXIT_NOT_MEMBER, {"error": "NotAMember", **report})
    return report


def cmd_spectrum(args, cfg, stdin):
    tol = cfg.tolerances
    T = _read_isometry(args.input, cfg, stdin)
    S = decompose(factorize(T, tol), tol)
    out = io.decomposition_to_json(S)
    nun, _ = is_non_unitary_normal(T, tol)
    out["eigenvalues"] = (
        [
            {"value": io.complex_to_json(e.value), "kind": e.kind, "block": e.block, "index": e.index}
            for e in spectrum_normal(T, tol, check=False)
        ]
        if nun
        else None
    )
    return out


def cmd_fixpoints(args, cfg, stdin):
    tol = cfg.tolerances
    T = _read_isometry(args.input, cfg, stdin)
    det = detect_generic(T, tol)
    if det.k > cfg.max_k:
        raise KTooLarge(f"k = {det.k} exceeds --max-k {cfg.max_k}")
    out = {"k": det.k, "count": det.count, "conclusion": det.conclusion.value, "detection": io.detection_to_json(det)}
    nun, _ = is_non_unitary_normal(T, tol)
    if nun != (det.conclusion is Conclusion.NON_UNITARY_NORMAL):
        raise InternalInconsistency(
            f"eigenvector detection says {det.conclusion.value} but the factor criterion says {nun}"
        )
    if nun:
        points = enumerate_generic(T, tol, max_k=cfg.max_k, check=False)
        out["points"] = [io.generic_point_to_json(p) for p in points]
        out["common"] = [io.common_point_to_json(p) for p in common_eigen_fixed_points(T, tol, check=False)]
    else:
        out["points"] = []
        out["common"] = []
        if det.conclusion is Conclusion.UNITARY:
            zero = np.zeros((T.m, T.n))
            out["points"] = [
                {
                    "theta": [],
                    "F": io.matrix_to_json(zero),
                    "norm": 0.0,
                    "residual": io._f(verify_fixed(T, zero, tol)),
                    "eigenvalues": [],
                }
            ]
    return out


def cmd_distance(args, cfg, stdin):
    A1 = _read_matrix(args.a1, stdin)
    A2 = _read_matrix(args.a2, stdin)
    if A1.shape != A2.shape:
        raise DimensionMismatch(f"shapes {A1.shape} and {A2.shape} differ")
    return {"distance": io._f(caratheodory_distance(A1, A2, cfg.tolerances))}


def cmd_act(args, cfg, stdin):
    T = _read_isometry(args.isometry, cfg, stdin)
    A = _read_matrix(args.point, stdin)
    return io.matrix_to_json(act(T, A, cfg.tolerances))


def cmd_verify(args, cfg, stdin):
    obj = _read(args.input, stdin)
    T = io.isometry_from_json(obj, cfg.tolerances, verify=False)
    report = io.relations_to_json(verify_relations(T.matrix, T.m, T.n, cfg.tolerances))
    if not report["member"]:
        raise _Failure(EXIT_NOT_MEMBER, {"error": "NotAMember", **report})
    return report


def build_parser():
    def add_globals(parser, suppress):
        # global flags are accepted before or after the subcommand
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--tol", type=float, default=dflt(DEFAULT_TOL.eq_tol), help="equality threshold (eq_tol)")
        parser.add_argument("--seed", type=int, default=dflt(0), help="seed for gen")
        parser.add_argument(
            "--max-k", type=int, default=dflt(DEFAULT_MAX_K), help="largest k enumerated by fixpoints"
        )
        parser.add_argument("--output", choices=("json", "pretty"), default=dflt("json"))

    p = argparse.ArgumentParser(
        prog="cartanball",
        description="Isometries of the unit ball of m x n complex matrices.",
    )
    add_globals(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a group element")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("m", type=int)
    g.add_argument("n", type=int)
    g.add_argument("--target-norm", type=float, default=0.6, help="norm of the center A")
    g.add_argument("--k", type=int, default=None, help="dim ran C for normal kinds")
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("classify", cmd_classify, "classification report"),
        ("spectrum", cmd_spectrum, "spectral decomposition of the positive part"),
        ("fixpoints", cmd_fixpoints, "detect and enumerate eigenvector fixed points"),
        ("verify", cmd_verify, "group relation residuals"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("input", help="isometry JSON: path, '-' or inline")
        s.set_defaults(func=func)

    d = sub.add_parser("distance", parents=[common], help="Caratheodory distance of two points")
    d.add_argument("a1")
    d.add_argument("a2")
    d.set_defaults(func=cmd_distance)

    a = sub.add_parser("act", parents=[common], help="apply an isometry to a point of the closed ball")
    a.add_argument("isometry")
    a.add_argument("point")
    a.set_defaults(func=cmd_act)
    return p


def _exit_code(exc):
    if isinstance(exc, NotAMember):
        return EXIT_NOT_MEMBER
    if isinstance(exc, KTooLarge):
        return EXIT_GUARD
    if isinstance(exc, (ParseError, DimensionMismatch, NotStrictContraction, SquareDims)):
        return EXIT_INPUT
    if isinstance(exc, CartanError):
        return EXIT_INTERNAL
    return EXIT_INPUT


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = CliConfig(args.tol, args.seed, args.max_k, args.output)
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    pretty = cfg.output == "pretty"
    try:
        result = args.func(args, cfg, stdin)
    except _Failure as f:
        print(io.dumps(f.payload, pretty), file=stdout)
        return f.code
    except (CartanError, ValueError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, NotAMember):
            payload["residuals"] = {k: io._f(v) for k, v in exc.residuals.items()}
        print(io.dumps(payload, pretty), file=stderr)
        return _exit_code(exc)
    print(io.dumps(result, pretty), file=stdout)
    return EXIT_OK


def main_entry():
    sys.exit(main())
