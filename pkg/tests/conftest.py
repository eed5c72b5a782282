import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hilbertgroups.seqcore import Sequence

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


# Naive kernels evaluated term by term with the math module only; these are
# the independent oracles the vectorized appliers are checked against.

def c_H(j):
    return 0.0 if j == 0 else 1.0 / (math.pi * j)


def c_Hd(d):
    return lambda j: 0.0 if j == 0 else 1.0 / (math.pi * (j + d))


def c_Tt(t):
    # t - k is exact, so sin(pi t) keeps full relative accuracy near integers
    k = round(t)
    s = (-1) ** k * math.sin(math.pi * (t - k))
    return lambda j: s / (math.pi * (j + t))


def c_K(j):
    return 2.0 / (math.pi * j) if j % 2 else 0.0


def c_Ktilde(j):
    return 2.0 / (math.pi * j) if (j % 2 == 0 and j != 0) else 0.0


def naive_apply(c, a: Sequence, m_lo: int, m_hi: int) -> np.ndarray:
    """``out[m] = sum_n a_n c(m - n)`` by explicit double loop."""
    out = []
    for m in range(m_lo, m_hi + 1):
        acc = 0j
        for n in range(a.lo, a.hi + 1) if not a.is_empty else ():
            acc += a[n] * c(m - n)
        out.append(acc)
    return np.array(out, dtype=complex)


@st.composite
def sequences(draw, max_width=16, lo_range=(-20, 20), bound=1.0, allow_empty=False):
    """Finite-support complex sequences with entries bounded by ``bound``."""
    if allow_empty and draw(st.booleans()):
        return Sequence.empty()
    width = draw(st.integers(1, max_width))
    offset = draw(st.integers(*lo_range))
    fl = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    re = draw(st.lists(fl, min_size=width, max_size=width))
    im = draw(st.lists(fl, min_size=width, max_size=width))
    return Sequence(offset, np.array(re) + 1j * np.array(im))


fractional_t = st.floats(-3.0, 3.0, allow_nan=False).filter(lambda t: abs(t - round(t)) > 1e-3)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=12345))


def random_seq(rng, width, offset=None):
    if offset is None:
        offset = -(width // 2)
    return Sequence(offset, rng.uniform(-1, 1, width) + 1j * rng.uniform(-1, 1, width))


# --- acceptance summary --------------------------------------------------------------

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
