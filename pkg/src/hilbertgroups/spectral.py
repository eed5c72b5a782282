"""Finite sections on ``[-M, M]``, operator-norm estimates, and resolvent solves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .errors import InvalidParameterError, NumericalError, ResourceLimitError
from .operators import OperatorSpec, is_integer_time
from .seqcore import Sequence, Window, lp_norm

#: Largest admissible matrix side ``2M + 1``.
MAX_MATRIX_SIDE = 8193


@dataclass(frozen=True)
class DenseOperator:
    """Finite section ``entries[m + M, n + M] = A(m, n)`` for ``|m|, |n| <= M``.

    All operators built here have real kernels, so ``entries`` is a real
    array; it acts on complex vectors as usual.
    """

    M: int
    entries: np.ndarray
    label: str = ""

    @property
    def window(self) -> Window:
        return Window.centered(self.M)

    def vector(self, a: Sequence) -> np.ndarray:
        return a.on_window(self.window).values

    def matvec(self, a: Sequence) -> Sequence:
        return Sequence(-self.M, self.entries @ self.vector(a))

    def transpose(self) -> "DenseOperator":
        return DenseOperator(self.M, np.ascontiguousarray(self.entries.T), self.label + "^T")


def build_truncated_matrix(spec: OperatorSpec, M: int) -> DenseOperator:
    if M < 1:
        raise InvalidParameterError("M must be >= 1")
    side = 2 * M + 1
    if side > MAX_MATRIX_SIDE:
        raise ResourceLimitError(f"matrix side {side} exceeds maximum {MAX_MATRIX_SIDE}")
    kind = spec.kind
    if kind == "Tt" and is_integer_time(spec.t):
        k = int(round(spec.t))
        # (T_k a)_m = (-1)^k a_{m+k}
        entries = np.eye(side, k=k) * (-1.0) ** (k % 2)
    elif kind == "Ut":
        K = build_truncated_matrix(OperatorSpec("K"), M).entries
        entries = math.cos(spec.t) * np.eye(side) + math.sin(spec.t) * K
    elif kind in ("H", "Hd", "Tt", "K", "Ktilde"):
        c = kernels.kernel_samples(spec, -2 * M, 2 * M).values
        # entry(m, n) = c_{m-n}
        entries = scipy.linalg.toeplitz(c[2 * M :], c[2 * M :: -1])
    else:
        raise InvalidParameterError(f"no finite section for {spec.label}")
    return DenseOperator(M, np.ascontiguousarray(entries, dtype=float), spec.label)


@dataclass
class NormEstimate:
    value: float
    p: float
    M: int
    iterations: int
    converged: bool
    witness: Sequence

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "p": self.p,
            "M": self.M,
            "iterations": self.iterations,
            "converged": self.converged,
            "witness_l2": lp_norm(self.witness, 2),
        }


def _ratio(A: np.ndarray, x: np.ndarray, p: float) -> float:
    return float(np.linalg.norm(A @ x, p) / np.linalg.norm(x, p))


def l2_norm_estimate(A: DenseOperator, iters: int = 5000, tol: float = 1e-13, seed: int = 0) -> NormEstimate:
    """Largest singular value via power iteration on ``A^T A``.

    The Rayleigh quotient ``||A x||^2`` (``||x|| = 1``) is a lower bound on
    ``||A||^2`` at every step; ``converged`` means two successive quotients
    differ by less than ``tol``.
    """
    if iters < 1 or tol <= 0:
        raise InvalidParameterError("need iters >= 1 and tol > 0")
    E = A.entries
    rng = np.random.Generator(np.random.Philox(key=seed))
    x = rng.standard_normal(E.shape[1])
    x /= np.linalg.norm(x)
    prev = -1.0
    converged = False
    k = 0
    for k in range(1, iters + 1):
        y = E @ x
        rq = float(y @ y)
        z = E.T @ y
        nz = np.linalg.norm(z)
        if nz == 0:
            break
        x = z / nz
        if abs(rq - prev) < tol:
            converged = True
            break
        prev = rq
    return NormEstimate(_ratio(E, x, 2), 2.0, A.M, k, converged, Sequence(-A.M, x))


def _dual(y: np.ndarray, r: float) -> np.ndarray:
    """Duality map for l^r up to scaling: ``|y|^(r-1) sign(y)``."""
    return np.abs(y) ** (r - 1) * np.sign(y)


def power_law_starts(M: int, p: float) -> list:
    """Start vectors ``sign(n - c)|n - c|^(-1/p)`` for ``c`` in ``{0, -1/2}``.

    These mimic the near-extremal functions of Hilbert-type kernels; the
    nonlinear power method otherwise tends to settle on poorer local maxima.
    """
    n = np.arange(-M, M + 1, dtype=float)
    starts = []
    for c in (0.0, -0.5):
        h = n - c
        mag = np.abs(np.where(h == 0, 1.0, h)) ** (-1.0 / p)
        starts.append(np.where(h == 0, 0.0, np.sign(h) * mag))
    return starts


def _boyd(E: np.ndarray, p: float, x: np.ndarray, iters: int, tol: float):
    q = p / (p - 1)
    x = x / np.linalg.norm(x, p)
    est = 0.0
    for k in range(1, iters + 1):
        y = E @ x
        cur = float(np.linalg.norm(y, p))
        z = E.T @ _dual(y, p)
        if not np.any(z):
            return x, k, False
        x_new = _dual(z, q)
        x_new /= np.linalg.norm(x_new, p)
        if cur - est <= tol * cur:
            return x, k, True
        est, x = cur, x_new
    return x, iters, False


def lp_norm_estimate(
    A: DenseOperator,
    p: float,
    iters: int = 2000,
    restarts: int = 8,
    seed: int = 0,
    tol: float = 1e-12,
    structured: bool = True,
) -> NormEstimate:
    """Lower bound on the induced ``l^p`` norm by the nonlinear power method.

    Runs ``x <- dual_q(A^T dual_p(A x))`` from ``restarts`` random starts
    (seeds ``seed .. seed + restarts - 1``) plus, with ``structured``, the
    :func:`power_law_starts`; keeps the largest ratio. The value is the
    ratio ``||A w||_p / ||w||_p`` at the returned witness, so it never
    exceeds the true norm of the finite section.
    """
    if not (1 < p < math.inf):
        raise InvalidParameterError(f"lp_norm_estimate needs 1 < p < inf, got {p}")
    if iters < 1 or restarts < 1:
        raise InvalidParameterError("need iters >= 1 and restarts >= 1")
    E = A.entries
    starts = [
        np.random.Generator(np.random.Philox(key=seed + r)).standard_normal(E.shape[1])
        for r in range(restarts)
    ]
    if structured:
        starts += power_law_starts(A.M, p)
    best = None
    for x0 in starts:
        x, k, ok = _boyd(E, p, x0, iters, tol)
        val = _ratio(E, x, p)
        if best is None or val > best[0]:
            best = (val, x, k, ok)
    val, x, k, ok = best
    return NormEstimate(val, float(p), A.M, k, ok, Sequence(-A.M, x))


def np_constant(p: float) -> float:
    """``max(tan(pi/2p), cot(pi/2p))``, the l^p norm of the continuous Hilbert transform."""
    if not (1 < p < math.inf):
        raise InvalidParameterError(f"np_constant needs 1 < p < inf, got {p}")
    x = math.pi / (2 * p)
    return max(math.tan(x), 1.0 / math.tan(x))


def resolvent_solve(a: Sequence, lam: float, M: int, rtol: float = 1e-8, max_refine: int = 5):
    """Solve ``(pi H_M - lam I) x = a`` on the finite section ``[-M, M]``.

    LU factorization plus iterative refinement. Returns ``(x, residual)``
    with ``residual = ||(pi H_M - lam I) x - a||_2``.
    """
    if not lam > 0:
        raise InvalidParameterError(f"lambda must be > 0, got {lam}")
    if not a.is_empty and (a.lo < -M or a.hi > M):
        raise InvalidParameterError("support of a must lie in [-M, M]")
    H = build_truncated_matrix(OperatorSpec("H"), M).entries
    A = math.pi * H - lam * np.eye(2 * M + 1)
    rhs = a.on_window(Window.centered(M)).values
    target = rtol * lp_norm(a, 2)
    lu = scipy.linalg.lu_factor(A)
    x = scipy.linalg.lu_solve(lu, rhs)
    r = A @ x - rhs
    res = float(np.linalg.norm(r))
    for _ in range(max_refine):
        if res <= target:
            break
        x = x - scipy.linalg.lu_solve(lu, r)
        r = A @ x - rhs
        res = float(np.linalg.norm(r))
    if res > target:
        raise NumericalError(f"resolvent residual {res:.3e} above {target:.3e}", residual=res)
    return Sequence(-M, x), res
