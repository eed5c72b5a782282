"""FFT application of the convolution operators, and timing harnesses.

``apply_conv_fft`` computes the same windowed sums as the direct path by
zero-padded linear convolution (power-of-two length, no wraparound).
``apply_K_fast`` splits the Kak-Hilbert transform by parity into two
half-length ``T_{1/2}`` convolutions:

* ``K(chi_e a)_{2m+1} = T_{1/2}(b_e)_m`` with ``b_e[n] = a[2n]``
* ``K(chi_o a)_{2m} = T_{1/2}(b_o)_{m-1}`` with ``b_o[n] = a[2n+1]``
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

import numpy as np
import scipy.fft

from . import backend, kernels, operators
from .errors import InvalidParameterError, ResourceLimitError
from .operators import OperatorSpec
from .seqcore import Sequence, Window, downsample_even, translate

#: Largest padded FFT length accepted by :func:`apply_conv_fft`.
MAX_FFT_LENGTH = 2**26

HALF_STEP = OperatorSpec("Tt", t=0.5)


def _workers() -> int:
    # optional THREADS override for the FFT backend
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def _next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def apply_conv_fft(spec: OperatorSpec, a: Sequence, window: Window) -> Sequence:
    """``result_m = sum_n a_n c_{m-n}`` on ``window`` via FFT linear convolution."""
    if not spec.is_convolution:
        raise InvalidParameterError(f"{spec.label} has no convolution kernel")
    W = window.width
    if a.is_empty:
        return Sequence(window.m_lo, np.zeros(W))
    na = len(a)
    c = kernels.kernel_samples(spec, window.m_lo - a.hi, window.m_hi - a.lo).values
    nfft = _next_pow2(na + len(c) - 1)
    if nfft > MAX_FFT_LENGTH:
        raise ResourceLimitError(f"padded FFT length {nfft} exceeds maximum {MAX_FFT_LENGTH}")
    wk = _workers()
    C = scipy.fft.rfft(c, nfft, workers=wk)
    sl = slice(na - 1, na - 1 + W)
    re = scipy.fft.irfft(scipy.fft.rfft(a.values.real, nfft, workers=wk) * C, nfft, workers=wk)[sl]
    if np.any(a.values.imag):
        im = scipy.fft.irfft(scipy.fft.rfft(a.values.imag, nfft, workers=wk) * C, nfft, workers=wk)[sl]
    else:
        im = 0.0
    return Sequence(window.m_lo, re + 1j * im)


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


def apply_K_fast(a: Sequence, window: Window) -> Sequence:
    out = np.zeros(window.width, dtype=np.complex128)
    # odd outputs k = 2m+1 come from even inputs
    lo, hi = _ceil_half(window.m_lo - 1), (window.m_hi - 1) // 2
    if lo <= hi:
        part = apply_conv_fft(HALF_STEP, downsample_even(a), Window(lo, hi))
        out[2 * lo + 1 - window.m_lo :: 2] = part.values
    # even outputs k = 2m come from odd inputs, shifted by one
    lo, hi = _ceil_half(window.m_lo), window.m_hi // 2
    if lo <= hi:
        part = apply_conv_fft(HALF_STEP, downsample_even(translate(a, 1)), Window(lo - 1, hi - 1))
        out[2 * lo - window.m_lo :: 2] = part.values
    return Sequence(window.m_lo, out)


# --- benchmarks ----------------------------------------------------------------

@dataclass
class BenchRecord:
    op: OperatorSpec
    input_size: int
    window_width: int
    method: str
    wall_time: float
    max_abs_diff_vs_direct: float | None = None

    def to_json(self) -> dict:
        return {
            "op": self.op.label,
            "size": self.input_size,
            "method": self.method,
            "wall_time_s": self.wall_time,
            "max_abs_diff": self.max_abs_diff_vs_direct,
        }


def bench_input(size: int, seed: int = 0) -> Sequence:
    """Deterministic complex input with ``max |a_n| <= 1`` centered at 0."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    vals = rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size)
    vals /= max(1.0, float(np.max(np.abs(vals))))
    return Sequence(-(size // 2), vals)


def _best_of(fn, repeats: int):
    best, out = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    # perf_counter can report 0 for trivially short calls
    return max(best, 1e-9), out


def bench_apply(spec: OperatorSpec, sizes, repeats: int = 5, seed: int = 0) -> list:
    """Time direct vs fft application; input and window both have width ``size``."""
    if repeats < 1:
        raise InvalidParameterError("repeats must be >= 1")
    if spec.kind == "ExpSeries":
        raise InvalidParameterError("ExpSeries has no direct/fft pair to benchmark")
    records = []
    for n in sizes:
        if n < 1:
            raise InvalidParameterError("sizes must be positive")
        a = bench_input(n, seed)
        w = Window(a.lo, a.hi)
        t_dir, ref = _best_of(lambda: operators.apply(spec, a, w, "direct"), repeats)
        t_fft, fast = _best_of(lambda: operators.apply(spec, a, w, "fft"), repeats)
        diff = float(np.max(np.abs(fast.values - ref.values)))
        records.append(BenchRecord(spec, n, w.width, "direct", t_dir))
        records.append(BenchRecord(spec, n, w.width, "fft", t_fft, diff))
    return records


def bench_backends(sizes, repeats: int = 3, seed: int = 0) -> list:
    """Time every available direct-summation backend on the ``H`` kernel.

    Returns dicts with ``backend``, ``size``, ``wall_time_s`` and
    ``max_abs_diff`` against the first backend timed.
    """
    out = []
    for n in sizes:
        a = bench_input(n, seed)
        c = np.ascontiguousarray(kernels.hilbert_kernel(-(n - 1), n - 1)[::-1])
        ref = None
        for name, fn in backend.BACKENDS.items():
            t, (re, im) = _best_of(lambda: fn(a.values.real.copy(), a.values.imag.copy(), c, n), repeats)
            res = re + 1j * im
            if ref is None:
                ref = res
            out.append(
                {
                    "backend": name,
                    "size": n,
                    "wall_time_s": t,
                    "max_abs_diff": float(np.max(np.abs(res - ref))),
                }
            )
    return out


def records_to_json(records) -> str:
    return json.dumps([r.to_json() for r in records], indent=2)
