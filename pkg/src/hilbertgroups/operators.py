"""Direct-summation operators on finitely supported sequences.

Every applier takes a :class:`~hilbertgroups.seqcore.Sequence` and a
:class:`~hilbertgroups.seqcore.Window` and returns the result materialized
exactly on the window. Because the input has finite support, each output
entry is a finite sum, so the only error is rounding.

All operators here except the integer-time shifts are convolutions
``result_m = sum_n a_n c_{m-n}``:

======== ==================================================
operator kernel ``c_j``
======== ==================================================
H        ``1/(pi j)``, ``c_0 = 0``
Hd(d)    ``1/(pi (j + d))``, ``c_0 = 0``
Tt(t)    ``sin(pi t)/(pi (j + t))`` (non-integer ``t``)
K        ``2/(pi j)`` for odd ``j``, else 0
Ktilde   ``2/(pi j)`` for even ``j != 0``, else 0
======== ==================================================

Integer ``t`` gives ``T_t a = (-1)^t a_{m+t}``, and
``U_t = cos(t) I + sin(t) K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend, kernels
from .errors import InvalidParameterError
from .seqcore import Sequence, Window, inner, translate

KINDS = ("H", "Hd", "Tt", "K", "Ktilde", "Ut", "ExpSeries")
_PARAMS = {
    "H": (),
    "Hd": ("d",),
    "Tt": ("t",),
    "K": (),
    "Ktilde": (),
    "Ut": ("t",),
    "ExpSeries": ("s", "terms"),
}


@dataclass(frozen=True)
class OperatorSpec:
    """Tagged operator description; a parameter is set iff the kind uses it."""

    kind: str
    d: float | None = None
    t: float | None = None
    s: float | None = None
    terms: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown operator kind {self.kind!r}")
        need = _PARAMS[self.kind]
        for name in ("d", "t", "s", "terms"):
            present = getattr(self, name) is not None
            if present != (name in need):
                verb = "requires" if name in need else "does not take"
                raise InvalidParameterError(f"{self.kind} {verb} parameter {name!r}")
        if self.kind == "Hd" and not (0 < abs(self.d) < 1):
            raise InvalidParameterError(f"Hd requires 0 < |d| < 1, got d = {self.d}")
        if self.kind == "ExpSeries" and self.terms < 0:
            raise InvalidParameterError("ExpSeries requires terms >= 0")
        for name in need:
            val = getattr(self, name)
            if not math.isfinite(val):
                raise InvalidParameterError(f"{name} must be finite")

    @property
    def label(self) -> str:
        args = ", ".join(f"{n}={getattr(self, n)!r}" for n in _PARAMS[self.kind])
        return f"{self.kind}({args})" if args else self.kind

    @property
    def is_convolution(self) -> bool:
        if self.kind == "Tt":
            return not is_integer_time(self.t)
        return self.kind in ("H", "Hd", "K", "Ktilde")


def is_integer_time(t: float) -> bool:
    """Exact test; ``1 + 1e-13`` is *not* an integer and takes the kernel branch."""
    return float(t) == round(t)


# --- direct convolution --------------------------------------------------------

def convolve_direct(kernel_values, a: Sequence, window: Window) -> Sequence:
    """``result_m = sum_n a_n c_{m-n}`` on ``window``.

    ``kernel_values(j_lo, j_hi)`` must return ``c_j`` for ``j_lo <= j <= j_hi``.
    """
    if a.is_empty:
        return Sequence(window.m_lo, np.zeros(window.width))
    j_lo = window.m_lo - a.hi
    j_hi = window.m_hi - a.lo
    c = np.ascontiguousarray(kernel_values(j_lo, j_hi)[::-1])
    re, im = backend.toeplitz_direct(
        np.ascontiguousarray(a.values.real), np.ascontiguousarray(a.values.imag), c, window.width
    )
    return Sequence(window.m_lo, re + 1j * im)


def _kernel_fn(spec: OperatorSpec):
    return lambda lo, hi: kernels.kernel_samples(spec, lo, hi).values


def _convolve(spec: OperatorSpec, a: Sequence, window: Window, method: str) -> Sequence:
    if method == "direct":
        return convolve_direct(_kernel_fn(spec), a, window)
    if method == "fft":
        from .fastconv import apply_conv_fft

        return apply_conv_fft(spec, a, window)
    raise InvalidParameterError(f"method must be 'direct' or 'fft', got {method!r}")


# --- appliers ------------------------------------------------------------------

def apply_H(a: Sequence, window: Window, method: str = "direct") -> Sequence:
    return _convolve(OperatorSpec("H"), a, window, method)


def apply_Hd(a: Sequence, d: float, window: Window, method: str = "direct") -> Sequence:
    """Shifted kernel ``(1/pi) sum_{n != m} a_n / (m - n + d)``, ``0 < |d| < 1``."""
    return _convolve(OperatorSpec("Hd", d=d), a, window, method)


def apply_Tt(a: Sequence, t: float, window: Window, method: str = "direct") -> Sequence:
    if is_integer_time(t):
        k = int(round(t))
        out = translate(a, k).on_window(window)
        return out if k % 2 == 0 else -out
    return _convolve(OperatorSpec("Tt", t=t), a, window, method)


def apply_K(a: Sequence, window: Window, method: str = "direct") -> Sequence:
    if method == "fft":
        from .fastconv import apply_K_fast

        return apply_K_fast(a, window)
    return _convolve(OperatorSpec("K"), a, window, method)


def apply_Ktilde(a: Sequence, window: Window, method: str = "direct") -> Sequence:
    return _convolve(OperatorSpec("Ktilde"), a, window, method)


def apply_Ut(a: Sequence, t: float, window: Window, method: str = "direct") -> Sequence:
    """``cos(t) a + sin(t) K a`` from a single ``K`` application."""
    ka = apply_K(a, window, method)
    return Sequence(window.m_lo, math.cos(t) * a.on_window(window).values + math.sin(t) * ka.values)


def default_margin(terms: int) -> int:
    return max(1024, 8 * terms)


def exp_series_Ts(
    a: Sequence,
    s: float,
    terms: int,
    window: Window,
    margin: int | None = None,
    method: str = "fft",
) -> Sequence:
    """Partial sum ``sum_{k=0}^{terms} (pi s)^k / k! H^k a`` restricted to ``window``.

    Each power of ``H`` is materialized on ``window`` widened by ``margin``
    on both sides (default ``max(1024, 8 * terms)``) and truncated there
    before the next application. Convergence in ``terms`` is factorial; keep
    ``|s| <= 1`` to avoid large intermediate terms.
    """
    if terms < 0:
        raise InvalidParameterError("terms must be >= 0")
    if margin is None:
        margin = default_margin(terms)
    if margin < 0:
        raise InvalidParameterError("margin must be >= 0")
    work = window.widened(margin)
    term = a.on_window(work)
    acc = term.values.copy()
    if s != 0:
        for k in range(1, terms + 1):
            term = apply_H(term, work, method) * (math.pi * s / k)
            acc += term.values
    return Sequence(work.m_lo, acc).on_window(window)


def apply(spec: OperatorSpec, a: Sequence, window: Window, method: str = "direct", **kw) -> Sequence:
    """Dispatch on ``spec.kind``."""
    kind = spec.kind
    if kind == "H":
        return apply_H(a, window, method)
    if kind == "Hd":
        return apply_Hd(a, spec.d, window, method)
    if kind == "Tt":
        return apply_Tt(a, spec.t, window, method)
    if kind == "K":
        return apply_K(a, window, method)
    if kind == "Ktilde":
        return apply_Ktilde(a, window, method)
    if kind == "Ut":
        return apply_Ut(a, spec.t, window, method)
    return exp_series_Ts(a, spec.s, spec.terms, window, method=method, **kw)


# --- adjoint and isometry oracles ----------------------------------------------

def _support_window(a: Sequence) -> Window:
    return Window(a.lo, a.hi)


def adjoint_pairing_residual(a: Sequence, b: Sequence, t: float) -> float:
    """``|<T_t a, b> - <a, T_{-t} b>|``; both pairings are exact finite sums."""
    if a.is_empty or b.is_empty:
        return 0.0
    lhs = inner(apply_Tt(a, t, _support_window(b)), b)
    rhs = inner(a, apply_Tt(b, -t, _support_window(a)))
    return abs(lhs - rhs)


def exact_T_gram(a: Sequence, t: float) -> float:
    """``||T_t a||_2^2`` over all of Z, from closed-form lattice sums.

    ``sum_m |(T_t a)_m|^2 = sin^2(pi t)/pi^2 * sum_{n,n'} a_n conj(a_n') S(n, n')``
    where ``S(n, n) = pi^2 csc^2(pi t)`` and, for ``n != n'``,
    ``S(n, n') = sum_m 1/((m-n+t)(m-n'+t))`` is evaluated by
    :func:`~hilbertgroups.kernels.double_pole_sum`. No window is involved.
    """
    if is_integer_time(t):
        raise InvalidParameterError("exact_T_gram needs non-integer t (integer T_t is a signed shift)")
    if a.is_empty:
        return 0.0
    nz = np.flatnonzero(a.values)
    vals = a.values[nz]
    idx = (a.lo + nz).astype(float)
    abs2 = np.concatenate([vals.real**2, vals.imag**2])
    diag = kernels.inverse_square_sum(t) * math.fsum(abs2)
    cross = 0.0
    if len(idx) > 1:
        iu, iv = np.triu_indices(len(idx), k=1)
        S = kernels.double_pole_sum(idx[iu] - t, idx[iv] - t)
        # pair (n, n') and (n', n) together contribute 2 Re(a_n conj(a_n')) S
        w = vals[iu] * np.conj(vals[iv])
        cross = 2.0 * math.fsum(w.real * S)
    scale = kernels.sinpi(t) ** 2 / math.pi**2
    return scale * math.fsum([diag, cross])


# --- evolution -----------------------------------------------------------------

@dataclass
class Trajectory:
    """States ``u(t_i) = T_{t_i} u0`` on one shared window."""

    times: list
    states: list = field(default_factory=list)
    window: Window | None = None


def evolve(u0: Sequence, t_grid, window: Window, method: str = "direct") -> Trajectory:
    """Solution of ``u' = pi H u``, ``u(0) = u0``, sampled on ``t_grid``."""
    times = [float(t) for t in t_grid]
    if not times:
        raise InvalidParameterError("t_grid must be non-empty")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise InvalidParameterError("t_grid must be strictly ascending")
    states = [apply_Tt(u0, t, window, method) for t in times]
    return Trajectory(times, states, window)
