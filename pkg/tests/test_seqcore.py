import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbertgroups.errors import InvalidParameterError, ResourceLimitError, SequenceFormatError
from hilbertgroups.seqcore import (
    MAX_WINDOW_WIDTH,
    Sequence,
    Window,
    downsample_even,
    inner,
    lp_norm,
    make_delta,
    parity_project,
    read_sequence_csv,
    translate,
    write_sequence_csv,
)

from conftest import sequences


def seq(d):
    return Sequence.from_dict(d)


# --- examples ------------------------------------------------------------------

def test_make_delta():
    assert make_delta(0).to_dict() == {0: 1}
    assert make_delta(-3).to_dict() == {-3: 1}
    assert lp_norm(make_delta(7), 2) == 1.0


def test_translate_examples():
    assert translate(seq({0: 1}), 1).to_dict() == {-1: 1}
    a = seq({-2: 1 + 2j, 0: 3, 4: -1j})
    assert translate(a, 0) == a
    assert translate(a, 0).values.tobytes() == a.values.tobytes()
    assert translate(translate(a, 2), -2) == a


def test_parity_examples():
    a = seq({0: 1, 1: 2})
    assert parity_project(a, "even").to_dict() == {0: 1}
    assert parity_project(a, "odd").to_dict() == {1: 2}
    with pytest.raises(InvalidParameterError):
        parity_project(a, "both")


def test_downsample_examples():
    assert downsample_even(seq({0: 1, 1: 5, 2: 3})).to_dict() == {0: 1, 1: 3}
    assert downsample_even(seq({1: 5})).is_empty
    assert downsample_even(make_delta(-4)).to_dict() == {-2: 1}


def test_lp_norm_examples():
    a = seq({0: 3, 1: 4})
    assert lp_norm(a, 2) == 5.0
    assert lp_norm(a, math.inf) == 4.0
    assert lp_norm(seq({0: 1, 1: 1, 2: 1}), 1) == 3.0
    assert lp_norm(Sequence.empty(), 3) == 0.0
    for bad in (0.5, 0, -1):
        with pytest.raises(InvalidParameterError):
            lp_norm(a, bad)


def test_inner_examples():
    assert inner(make_delta(0), make_delta(0)) == 1 + 0j
    assert inner(make_delta(0), make_delta(1)) == 0
    assert inner(seq({0: 1j}), seq({0: 1})) == 1j
    assert inner(Sequence.empty(), make_delta(0)) == 0


# --- data model ------------------------------------------------------------------

def test_sequence_rejects_nonfinite():
    with pytest.raises(InvalidParameterError):
        Sequence(0, [1.0, float("nan")])
    with pytest.raises(InvalidParameterError):
        Sequence(0, [complex(0, float("inf"))])


def test_empty_is_canonical():
    e = Sequence(17, [])
    assert e.is_empty and e.offset == 0 and e == Sequence.empty()
    assert lp_norm(e, 2) == 0.0


def test_values_read_only():
    a = seq({0: 1})
    with pytest.raises(ValueError):
        a.values[0] = 2


def test_window_validation():
    assert Window.parse("-8:8") == Window(-8, 8)
    assert Window(-3, 3).width == 7
    with pytest.raises(InvalidParameterError):
        Window(2, 1)
    with pytest.raises(InvalidParameterError):
        Window.parse("3")
    with pytest.raises(ResourceLimitError):
        Window(0, MAX_WINDOW_WIDTH)


def test_on_window_pads_and_crops():
    a = seq({0: 1, 1: 2, 2: 3})
    assert a.on_window(Window(-1, 1)).values.tolist() == [0, 1, 2]
    assert a.on_window(Window(5, 6)).values.tolist() == [0, 0]


# --- properties -----------------------------------------------------------------

@given(sequences(max_width=32, bound=1e3), st.integers(-50, 50), st.sampled_from([1, 1.5, 2, 3, math.inf]))
def test_translate_preserves_norms_exactly(a, k, p):
    b = translate(a, k)
    assert lp_norm(b, p) == lp_norm(a, p)
    for m in range(a.lo - 2, a.hi + 3):
        assert b[m - k] == a[m]


@given(sequences(max_width=32, bound=1e3, allow_empty=True))
def test_parity_reconstruction_bit_exact(a):
    e, o = parity_project(a, "even"), parity_project(a, "odd")
    assert e + o == a
    assert math.isclose(lp_norm(e, 2) ** 2 + lp_norm(o, 2) ** 2, lp_norm(a, 2) ** 2, rel_tol=1e-14, abs_tol=0)


@given(sequences(max_width=32, bound=1e3), st.sampled_from([1, 2, 4, math.inf]))
def test_downsample_contracts(a, p):
    assert lp_norm(downsample_even(a), p) <= lp_norm(a, p)
    e = parity_project(a, "even")
    assert lp_norm(downsample_even(e), p) == lp_norm(e, p)


@given(sequences(max_width=32, bound=1e3), sequences(max_width=32, bound=1e3))
def test_inner_conjugate_symmetric(a, b):
    assert inner(a, b) == inner(b, a).conjugate()


@given(sequences(max_width=64, bound=1e3))
def test_inner_self_is_norm_squared(a):
    v = inner(a, a)
    assert v.imag == 0.0 and v.real >= 0
    assert math.isclose(v.real, lp_norm(a, 2) ** 2, rel_tol=1e-15, abs_tol=0)


def test_lp_norm_summation_order_stable():
    # one large entry followed by many tiny ones: naive left-to-right loses them
    vals = np.concatenate([[1e8], np.full(10**5, 1e-4)])
    a = Sequence(0, vals)
    exact = 1e8 + 10.0
    assert lp_norm(a, 1) == exact
    assert lp_norm(Sequence(0, vals[::-1]), 1) == exact


# --- CSV -------------------------------------------------------------------------

@given(sequences(max_width=40, bound=1e6, allow_empty=True))
def test_csv_round_trip_bit_exact(tmp_path_factory, a):
    path = tmp_path_factory.mktemp("csv") / "a.csv"
    write_sequence_csv(a, path)
    b = read_sequence_csv(path)
    assert b.offset == a.offset
    assert b.values.tobytes() == a.values.tobytes()


def test_csv_header_and_digits(tmp_path):
    path = tmp_path / "x.csv"
    write_sequence_csv(seq({-1: 1 / 3}), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,re,im"
    assert lines[1] == "-1,0.33333333333333331,0"


def test_csv_densifies_gaps(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("index,re,im\n-2,1,0\n1,0,2\n")
    a = read_sequence_csv(path)
    assert a.lo == -2 and a.values.tolist() == [1, 0, 0, 2j]


@pytest.mark.parametrize(
    "body",
    [
        "idx,re,im\n0,1,0\n",
        "",
        "index,re,im\n0,1,0\n0,2,0\n",
        "index,re,im\n1,1,0\n0,2,0\n",
        "index,re,im\n0,nan,0\n",
        "index,re,im\n0,1,inf\n",
        "index,re,im\n0,1\n",
        "index,re,im\nzero,1,0\n",
    ],
    ids=["bad-header", "no-header", "duplicate", "descending", "nan", "inf", "short-row", "bad-index"],
)
def test_csv_rejections(tmp_path, body):
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(SequenceFormatError):
        read_sequence_csv(path)
