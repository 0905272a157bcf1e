"""JSON encodings.

A matrix is ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` in row-major
order.  Complex scalars elsewhere are ``[re, im]`` pairs.  Output is
deterministic: keys sorted, floats written with ``repr`` (shortest string
that round-trips the double).
"""

import json

import numpy as np

from .errors import ParseError
from .group import FactoredIsometry, GIsometry
from .linalg import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "complex_to_json",
    "isometry_to_json",
    "isometry_from_json",
    "factored_to_json",
    "factored_from_json",
    "decomposition_to_json",
    "classification_to_json",
    "relations_to_json",
    "detection_to_json",
    "generic_point_to_json",
    "common_point_to_json",
    "dumps",
    "load_json",
]


def _f(x):
    # + 0.0 folds -0.0 into 0.0 so output bytes do not depend on the sign of zero
    return float(x) + 0.0


def complex_to_json(z):
    z = complex(z)
    return [_f(z.real), _f(z.imag)]


def matrix_to_json(M):
    M = np.asarray(M, dtype=complex)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [complex_to_json(z) for z in M.ravel()],
    }


def matrix_from_json(obj):
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"not a matrix object: {exc}") from None
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise ParseError(f"expected {rows}x{cols} = {rows * cols} entries, got {len(data)}")
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in data], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"entries must be [re, im] pairs: {exc}") from None
    if not np.all(np.isfinite(flat)):
        raise ParseError("matrix entries must be finite")
    return flat.reshape(rows, cols)


def isometry_to_json(T: GIsometry):
    return {"m": T.m, "n": T.n, "matrix": matrix_to_json(T.matrix)}


def isometry_from_json(obj, tol: ToleranceConfig = DEFAULT_TOL, verify=True) -> GIsometry:
    try:
        m, n = int(obj["m"]), int(obj["n"])
        M = matrix_from_json(obj["matrix"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"not an isometry object: {exc}") from None
    return GIsometry.from_matrix(M, m, n, tol, verify=verify)


def factored_to_json(F: FactoredIsometry):
    return {"A": matrix_to_json(F.A), "U": matrix_to_json(F.U), "V": matrix_to_json(F.V)}


def factored_from_json(obj, tol: ToleranceConfig = DEFAULT_TOL) -> FactoredIsometry:
    try:
        return FactoredIsometry(
            matrix_from_json(obj["A"]), matrix_from_json(obj["U"]), matrix_from_json(obj["V"]), tol
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a factored isometry object: {exc}") from None


def decomposition_to_json(S):
    return {
        "blocks": [
            {
                "a": _f(b.a),
                "delta": _f(b.delta),
                "k_i": b.k_i,
                "basis_K": matrix_to_json(b.basis_K),
                "basis_M": matrix_to_json(b.basis_M),
            }
            for b in S.blocks
        ],
        "k": S.k,
        "basis_Kperp": matrix_to_json(S.basis_Kperp) if S.basis_Kperp.shape[1] else None,
    }


def _residuals(res):
    return {k: _f(v) for k, v in res.items()}


def classification_to_json(c):
    return {
        "member": c.is_member,
        "unitary": c.is_unitary,
        "normal": c.is_normal,
        "self_adjoint": c.is_self_adjoint,
        "non_unitary_normal": c.is_non_unitary_normal,
        "residuals": _residuals(c.residuals),
    }


def relations_to_json(report):
    return {"member": report.is_member, "residuals": _residuals(report.residuals)}


def detection_to_json(r):
    return {
        "count": r.count,
        "k": r.k,
        "q": r.q,
        "conclusion": r.conclusion.value,
        "completable": r.completable,
        "pairs": [
            {"mu": complex_to_json(d["mu"]), "mu_prime": complex_to_json(d["mu_prime"]), "dim": d["dim"]}
            for d in r.details
        ],
    }


def generic_point_to_json(p):
    return {
        "theta": [int(t) for t in p.theta],
        "F": matrix_to_json(p.F),
        "norm": _f(p.norm),
        "residual": _f(p.residual),
        "eigenvalues": [complex_to_json(z) for z in p.eigenvalues],
    }


def common_point_to_json(p):
    return {
        "mu": complex_to_json(p.mu),
        "F": matrix_to_json(p.F),
        "pairs": p.pairs,
        "norm": _f(p.norm),
        "residual": _f(p.residual),
    }


def dumps(obj, pretty=False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
