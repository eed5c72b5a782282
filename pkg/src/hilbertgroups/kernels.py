"""Cotangent-type series: closed forms, brute-force partial sums, kernel samples.

Closed forms use ``sinpi``/``cospi`` with exact argument reduction, so
``cot_closed(0.5) == 0.0`` and ``inverse_square_sum(0.5) == pi**2`` hold
bit for bit. Partial sums add terms in ascending magnitude (largest index
first) with numpy's pairwise reduction.

Every evaluator refuses arguments within ``POLE_GUARD`` of an integer pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, PoleError

POLE_GUARD = 1e-9
PI = math.pi


def _reduce(x):
    """Split ``x = k + r`` with integer ``k`` and ``|r| <= 1/2`` (exact)."""
    k = np.rint(x)
    return k, x - k


def sinpi(x):
    """``sin(pi x)`` with exact reduction; zero at integers."""
    k, r = _reduce(np.asarray(x, dtype=float))
    sign = np.where(np.fmod(k, 2) == 0, 1.0, -1.0)
    out = sign * np.sin(PI * r)
    return out if out.ndim else float(out)


def cospi(x):
    """``cos(pi x)`` with exact reduction; zero at half-integers."""
    k, r = _reduce(np.asarray(x, dtype=float))
    sign = np.where(np.fmod(k, 2) == 0, 1.0, -1.0)
    out = sign * np.sin(PI * (0.5 - np.abs(r)))
    return out if out.ndim else float(out)


def _check_nonpole(name: str, x) -> None:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x - np.rint(x)) < POLE_GUARD):
        raise PoleError(f"{name}: argument within {POLE_GUARD:g} of an integer pole")


def _pairwise(terms: np.ndarray) -> float:
    # terms arrive largest-index-first, i.e. ascending magnitude
    return float(np.sum(np.ascontiguousarray(terms)))


def _symmetric_range(N: int) -> np.ndarray:
    """``[N, -N, N-1, -(N-1), ..., 1, -1, 0]`` as floats."""
    n = np.arange(N, 0, -1, dtype=float)
    return np.append(np.column_stack([n, -n]).ravel(), 0.0)


# --- pi cot(pi x) = 1/x + sum_{n>=1} (1/(x+n) + 1/(x-n)) ---------------------

def cot_closed(x: float) -> float:
    """``pi * cot(pi * x)``."""
    _check_nonpole("cot_closed", x)
    return PI * cospi(x) / sinpi(x)


def cot_partial(x: float, N: int) -> float:
    """Symmetric partial fraction sum of ``pi cot(pi x)`` truncated at ``n = N``."""
    _check_nonpole("cot_partial", x)
    if N < 1:
        raise InvalidParameterError(f"cot_partial needs N >= 1, got {N}")
    n = np.arange(N, 0, -1, dtype=float)
    pairs = 1.0 / (x + n) + 1.0 / (x - n)
    return _pairwise(np.append(pairs, 1.0 / x))


# --- sum_m 1/((m-u)(m-v)) = pi (cot(pi v) - cot(pi u)) / (u - v) --------------

def double_pole_sum(u, v):
    """Closed form of ``sum_m 1/((m-u)(m-v))`` for non-integer ``u != v``.

    Accepts arrays (broadcast). Uses
    ``cot(pi v) - cot(pi u) = sin(pi (u - v)) / (sin(pi u) sin(pi v))``
    so the value is exactly zero when ``u - v`` is an integer. The
    evaluation order makes it bit-symmetric in ``(u, v)``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_nonpole("double_pole_sum", u)
    _check_nonpole("double_pole_sum", v)
    diff = u - v
    if np.any(diff == 0):
        raise InvalidParameterError("double_pole_sum needs u != v (use inverse_square_sum)")
    out = PI * (sinpi(diff) / diff) / (sinpi(u) * sinpi(v))
    return out if np.ndim(out) else float(out)


def double_pole_partial(u: float, v: float, N: int) -> float:
    """Brute-force ``sum_{|m| <= N} 1/((m-u)(m-v))``."""
    _check_nonpole("double_pole_partial", u)
    _check_nonpole("double_pole_partial", v)
    m = _symmetric_range(N)
    return _pairwise(1.0 / ((m - u) * (m - v)))


# --- sum_n 1/(n+d)^2 -----------------------------------------------------------

def inverse_square_sum(d: float) -> float:
    """``pi^2 csc^2(pi d)`` for non-integer ``d``; ``pi^2/3`` (pole omitted) otherwise.

    Arguments closer than ``POLE_GUARD`` to an integer without being one are
    rejected.
    """
    d = float(d)
    if d == round(d):
        return PI**2 / 3.0
    _check_nonpole("inverse_square_sum", d)
    return PI**2 / sinpi(d) ** 2


def inverse_square_partial(d: float, N: int) -> float:
    n = _symmetric_range(N)
    shifted = n + d
    if d == round(d):
        shifted = shifted[n != -d]
    return _pairwise(1.0 / shifted**2)


# --- ||nu||_1 = sum_{n != 0} 1/(n(n+d)) = (1 - pi d cot(pi d)) / d^2 ----------

def _check_d(name: str, d: float) -> None:
    if not (0 < abs(d) < 1):
        raise InvalidParameterError(f"{name}: need 0 < |d| < 1, got {d}")


def nu_l1_norm(d: float) -> float:
    _check_d("nu_l1_norm", d)
    return (1.0 - PI * d * cospi(d) / sinpi(d)) / (d * d)


def nu_l1_partial(d: float, N: int) -> float:
    _check_d("nu_l1_partial", d)
    n = _symmetric_range(N)[:-1]
    return _pairwise(1.0 / (n * (n + d)))


# --- convolution kernels -------------------------------------------------------

@dataclass(frozen=True)
class KernelSamples:
    """Kernel values ``c_j`` for ``j = lo, lo+1, ...``.

    Operator application is ``result_m = sum_n a_n c_{m-n}``.
    """

    lo: int
    values: np.ndarray

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1


def _j_range(j_lo: int, j_hi: int) -> np.ndarray:
    if j_lo > j_hi:
        raise InvalidParameterError(f"kernel range [{j_lo}, {j_hi}] is empty")
    return np.arange(j_lo, j_hi + 1, dtype=float)


def hilbert_kernel(j_lo: int, j_hi: int) -> np.ndarray:
    j = _j_range(j_lo, j_hi)
    out = np.zeros_like(j)
    nz = j != 0
    out[nz] = 1.0 / (PI * j[nz])
    return out


def shifted_hilbert_kernel(d: float, j_lo: int, j_hi: int) -> np.ndarray:
    """``1/(pi (j + d))`` for ``j != 0``; the ``j = 0`` (n = m) term is excluded."""
    _check_d("Hd kernel", d)
    j = _j_range(j_lo, j_hi)
    out = 1.0 / (PI * (j + d))
    out[j == 0] = 0.0
    return out


def group_kernel(t: float, j_lo: int, j_hi: int) -> np.ndarray:
    """``sin(pi t) / (pi (j + t))`` for non-integer ``t``."""
    if t == round(t):
        raise InvalidParameterError("integer t has no convolution kernel (signed shift)")
    j = _j_range(j_lo, j_hi)
    shifted = j + t
    if np.any(np.abs(shifted) < POLE_GUARD):
        raise PoleError(f"T_t kernel: t = {t!r} is within {POLE_GUARD:g} of a pole")
    return sinpi(t) / (PI * shifted)


def kak_kernel(j_lo: int, j_hi: int) -> np.ndarray:
    """``2/(pi j)`` on odd ``j``, zero on even ``j``."""
    j = _j_range(j_lo, j_hi)
    out = np.zeros_like(j)
    odd = np.fmod(j, 2) != 0
    out[odd] = 2.0 / (PI * j[odd])
    return out


def kak_complement_kernel(j_lo: int, j_hi: int) -> np.ndarray:
    """``2/(pi j)`` on even ``j != 0``, zero elsewhere (kernel of ``2H - K``)."""
    j = _j_range(j_lo, j_hi)
    out = np.zeros_like(j)
    even = (np.fmod(j, 2) == 0) & (j != 0)
    out[even] = 2.0 / (PI * j[even])
    return out


def kernel_samples(spec, j_lo: int, j_hi: int) -> KernelSamples:
    """Kernel samples for a convolution-type :class:`~hilbertgroups.operators.OperatorSpec`."""
    kind = spec.kind
    if kind == "H":
        vals = hilbert_kernel(j_lo, j_hi)
    elif kind == "Hd":
        vals = shifted_hilbert_kernel(spec.d, j_lo, j_hi)
    elif kind == "Tt":
        vals = group_kernel(spec.t, j_lo, j_hi)
    elif kind == "K":
        vals = kak_kernel(j_lo, j_hi)
    elif kind == "Ktilde":
        vals = kak_complement_kernel(j_lo, j_hi)
    else:
        raise InvalidParameterError(f"{kind} is not a pure convolution operator")
    return KernelSamples(j_lo, vals)
