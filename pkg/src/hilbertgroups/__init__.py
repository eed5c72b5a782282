"""Discrete Hilbert transforms and the operator groups they generate.

Submodules: :mod:`.seqcore` (sequences, windows, norms, CSV I/O),
:mod:`.kernels` (cotangent-series identities and convolution kernels),
:mod:`.operators` (direct appliers and exact oracles), :mod:`.fastconv`
(FFT application and benchmarks), :mod:`.spectral` (finite sections, norm
estimates, resolvent), :mod:`.checks` and :mod:`.cli`.
"""

from .backend import BACKEND
from .errors import (
    HilbertGroupsError,
    InvalidParameterError,
    NumericalError,
    PoleError,
    ResourceLimitError,
    SequenceFormatError,
)
from .operators import (
    OperatorSpec,
    apply,
    apply_H,
    apply_Hd,
    apply_K,
    apply_Ktilde,
    apply_Tt,
    apply_Ut,
    exact_T_gram,
    exp_series_Ts,
)
from .seqcore import Sequence, Window, inner, lp_norm, make_delta

__version__ = "0.1.0"
