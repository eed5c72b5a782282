import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbertgroups import backend, kernels
from hilbertgroups._toeplitz_py import toeplitz_direct as py_direct

compiled = pytest.mark.skipif("compiled" not in backend.BACKENDS, reason="extension not built")


def _reference(a, kernel_rev, width):
    n = len(a)
    return np.array([sum(a[j] * kernel_rev[width - 1 - i + j] for j in range(n)) for i in range(width)])


@given(n=st.integers(1, 40), width=st.integers(1, 1200), seed=st.integers(0, 2**32))
def test_python_backend_matches_definition(n, width, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    k = rng.uniform(-1, 1, n + width - 1)
    re, im = py_direct(a.real.copy(), a.imag.copy(), k, width)
    ref = _reference(a, k, width)
    np.testing.assert_allclose(re + 1j * im, ref, rtol=0, atol=1e-13)


@compiled
@given(n=st.integers(1, 1500), width=st.integers(1, 1500), seed=st.integers(0, 2**32))
def test_compiled_matches_python(n, width, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    k = rng.uniform(-1, 1, n + width - 1)
    got = backend.BACKENDS["compiled"](a.real.copy(), a.imag.copy(), k, width)
    want = py_direct(a.real.copy(), a.imag.copy(), k, width)
    for g, w in zip(got, want):
        np.testing.assert_allclose(g, w, rtol=0, atol=1e-12)


@compiled
def test_compiled_is_deterministic():
    a = np.linspace(-1, 1, 3000)
    k = kernels.hilbert_kernel(-4000, 4000)[::-1].copy()
    fn = backend.BACKENDS["compiled"]
    r1, r2 = fn(a, a, k, 5001), fn(a, a, k, 5001)
    assert r1[0].tobytes() == r2[0].tobytes() and r1[1].tobytes() == r2[1].tobytes()


@compiled
def test_compiled_rejects_short_kernel():
    with pytest.raises((ValueError, IndexError)):
        backend.BACKENDS["compiled"](np.ones(4), np.zeros(4), np.ones(3), 5)


def test_env_var_forces_fallback():
    code = "import hilbertgroups.backend as b; print(b.BACKEND)"
    env = dict(os.environ, HILBERTGROUPS_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_default_prefers_compiled():
    expected = "compiled" if "compiled" in backend.BACKENDS else "python"
    env = {k: v for k, v in os.environ.items() if k != "HILBERTGROUPS_BACKEND"}
    code = "import hilbertgroups.backend as b; print(b.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


@pytest.mark.parametrize("name", list(backend.BACKENDS))
def test_backends_reject_mismatched_parts(name):
    with pytest.raises(ValueError):
        backend.BACKENDS[name](np.ones(3), np.ones(2), np.ones(9), 3)
