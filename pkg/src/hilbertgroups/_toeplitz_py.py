"""Pure numpy fallback for the compiled direct Toeplitz summation."""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# rows per block; bounds the temporary copy made for BLAS
_BLOCK_ELEMS = 1 << 22


def toeplitz_direct(a_re, a_im, kernel_rev, width):
    a_re = np.ascontiguousarray(a_re, dtype=float)
    a_im = np.ascontiguousarray(a_im, dtype=float)
    kernel_rev = np.ascontiguousarray(kernel_rev, dtype=float)
    na = len(a_re)
    if len(a_im) != na:
        raise ValueError("a_re and a_im differ in length")
    if len(kernel_rev) < width + na - 1:
        raise ValueError("kernel too short for requested width")
    out_re = np.empty(width)
    out_im = np.empty(width)
    if na == 0:
        out_re[:] = 0.0
        out_im[:] = 0.0
        return out_re, out_im
    rows = sliding_window_view(kernel_rev[: width + na - 1], na)
    step = max(1, _BLOCK_ELEMS // na)
    for i0 in range(0, width, step):
        i1 = min(width, i0 + step)
        # output i reads row width-1-i
        block = np.ascontiguousarray(rows[width - i1 : width - i0][::-1])
        out_re[i0:i1] = block @ a_re
        out_im[i0:i1] = block @ a_im
    return out_re, out_im
