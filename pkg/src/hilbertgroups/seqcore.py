"""Finitely supported complex sequences on the integers.

A :class:`Sequence` stores a dense block of complex values starting at an
integer ``offset``; every entry outside the block is zero. A :class:`Window`
is an inclusive integer range on which operator outputs (which generally
have infinite support) are materialized.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError, ResourceLimitError, SequenceFormatError

#: Largest admissible window width. Raise it deliberately, not by accident.
MAX_WINDOW_WIDTH = 2**24

CSV_HEADER = ("index", "re", "im")


class Sequence:
    """Complex sequence with finite support ``[offset, offset + len - 1]``.

    Values are copied into a read-only ``complex128`` array. The empty
    sequence is canonical: ``offset == 0`` and no stored values.
    """

    __slots__ = ("offset", "values")

    def __init__(self, offset: int, values) -> None:
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise InvalidParameterError("sequence values must be finite")
        arr.setflags(write=False)
        self.offset = int(offset) if arr.size else 0
        self.values = arr

    @classmethod
    def empty(cls) -> "Sequence":
        return cls(0, [])

    @classmethod
    def from_dict(cls, entries: dict) -> "Sequence":
        """Densify ``{index: value}`` over its index range."""
        if not entries:
            return cls.empty()
        lo, hi = min(entries), max(entries)
        vals = np.zeros(hi - lo + 1, dtype=np.complex128)
        for k, v in entries.items():
            vals[k - lo] = v
        return cls(lo, vals)

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        return self.offset + len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_empty(self) -> bool:
        return len(self.values) == 0

    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + len(self.values))

    def __getitem__(self, m: int) -> complex:
        i = m - self.offset
        if 0 <= i < len(self.values):
            return complex(self.values[i])
        return 0j

    def to_dict(self, drop_zeros: bool = True) -> dict:
        return {
            int(k): complex(v)
            for k, v in zip(self.indices(), self.values)
            if not (drop_zeros and v == 0)
        }

    def trimmed(self) -> "Sequence":
        """Drop exact zeros at both ends of the stored block."""
        nz = np.flatnonzero(self.values)
        if nz.size == 0:
            return Sequence.empty()
        return Sequence(self.offset + nz[0], self.values[nz[0] : nz[-1] + 1])

    def on_window(self, window: "Window") -> "Sequence":
        """Materialize on ``window``: truncate outside it, zero-fill inside it."""
        out = np.zeros(window.width, dtype=np.complex128)
        lo = max(window.m_lo, self.lo)
        hi = min(window.m_hi, self.hi)
        if not self.is_empty and lo <= hi:
            out[lo - window.m_lo : hi - window.m_lo + 1] = self.values[
                lo - self.offset : hi - self.offset + 1
            ]
        return Sequence(window.m_lo, out)

    def _aligned(self, other: "Sequence"):
        if self.is_empty:
            return other.offset, np.zeros(len(other)), other.values
        if other.is_empty:
            return self.offset, self.values, np.zeros(len(self))
        w = Window(min(self.lo, other.lo), max(self.hi, other.hi))
        return w.m_lo, self.on_window(w).values, other.on_window(w).values

    def __add__(self, other: "Sequence") -> "Sequence":
        off, x, y = self._aligned(other)
        return Sequence(off, x + y)

    def __sub__(self, other: "Sequence") -> "Sequence":
        off, x, y = self._aligned(other)
        return Sequence(off, x - y)

    def __neg__(self) -> "Sequence":
        return Sequence(self.offset, -self.values)

    def __mul__(self, scalar) -> "Sequence":
        return Sequence(self.offset, self.values * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        # structural: same block, same bits
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self) -> str:
        if len(self.values) <= 8:
            return f"Sequence({self.to_dict(drop_zeros=False)!r})"
        return f"Sequence(offset={self.offset}, len={len(self.values)})"


@dataclass(frozen=True)
class Window:
    """Inclusive index range ``[m_lo, m_hi]``."""

    m_lo: int
    m_hi: int

    def __post_init__(self):
        if self.m_lo > self.m_hi:
            raise InvalidParameterError(f"empty window [{self.m_lo}, {self.m_hi}]")
        if self.width > MAX_WINDOW_WIDTH:
            raise ResourceLimitError(
                f"window width {self.width} exceeds maximum {MAX_WINDOW_WIDTH}"
            )

    @property
    def width(self) -> int:
        return self.m_hi - self.m_lo + 1

    def indices(self) -> np.ndarray:
        return np.arange(self.m_lo, self.m_hi + 1)

    def widened(self, margin: int) -> "Window":
        return Window(self.m_lo - margin, self.m_hi + margin)

    @classmethod
    def centered(cls, half_width: int) -> "Window":
        return cls(-half_width, half_width)

    @classmethod
    def parse(cls, text: str) -> "Window":
        """Parse ``"lo:hi"``, e.g. ``"-8:8"``."""
        try:
            lo, hi = text.split(":")
            return cls(int(lo), int(hi))
        except ValueError as exc:
            if isinstance(exc, InvalidParameterError):
                raise
            raise InvalidParameterError(f"bad window {text!r}, expected lo:hi") from None


def make_delta(index: int) -> Sequence:
    return Sequence(index, [1.0])


def translate(a: Sequence, k: int) -> Sequence:
    """``result_m = a_{m+k}``: the support moves by ``-k``."""
    if a.is_empty:
        return a
    return Sequence(a.offset - k, a.values)


def parity_project(a: Sequence, parity: str) -> Sequence:
    """Keep entries at even (or odd) indices and zero the rest.

    The stored block is unchanged, so the even and odd projections add back
    to ``a`` bit for bit.
    """
    if parity not in ("even", "odd"):
        raise InvalidParameterError(f"parity must be 'even' or 'odd', got {parity!r}")
    if a.is_empty:
        return a
    keep = (a.indices() % 2 == 0) == (parity == "even")
    return Sequence(a.offset, np.where(keep, a.values, 0))


def downsample_even(a: Sequence) -> Sequence:
    """``result_j = a_{2j}``."""
    if a.is_empty:
        return a
    first = a.lo + (a.lo % 2)
    if first > a.hi:
        return Sequence.empty()
    return Sequence(first // 2, a.values[first - a.lo :: 2])


def _abs2(values: np.ndarray) -> np.ndarray:
    return np.concatenate([values.real**2, values.imag**2])


def lp_norm(a: Sequence, p: float = 2) -> float:
    """l^p norm with exactly rounded summation (``math.fsum``)."""
    if not (p == math.inf or p >= 1):
        raise InvalidParameterError(f"lp_norm needs p >= 1 or p = inf, got {p}")
    if a.is_empty:
        return 0.0
    if p == math.inf:
        return float(np.max(np.abs(a.values)))
    if p == 2:
        return math.sqrt(math.fsum(_abs2(a.values)))
    if p == 1:
        return math.fsum(np.abs(a.values))
    return math.fsum(np.abs(a.values) ** p) ** (1.0 / p)


def inner(a: Sequence, b: Sequence) -> complex:
    """``<a, b> = sum_m a_m conj(b_m)``, exactly rounded per component."""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if a.is_empty or b.is_empty or lo > hi:
        return 0j
    x = a.values[lo - a.offset : hi - a.offset + 1]
    y = b.values[lo - b.offset : hi - b.offset + 1]
    re = math.fsum(np.concatenate([x.real * y.real, x.imag * y.imag]))
    im = math.fsum(np.concatenate([x.imag * y.real, -x.real * y.imag]))
    return complex(re, im)


def write_sequence_csv(a: Sequence, path) -> None:
    """Write ``index,re,im`` rows with 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for k, v in zip(a.indices(), a.values):
            w.writerow((int(k), f"{v.real:.17g}", f"{v.imag:.17g}"))


def read_sequence_csv(path) -> Sequence:
    """Read a sequence file; gaps between listed indices are zero-filled."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(c.strip() for c in rows[0]) != CSV_HEADER:
        raise SequenceFormatError(f"{path}: missing header line 'index,re,im'")
    entries = {}
    prev = None
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise SequenceFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
        try:
            k, re, im = int(row[0]), float(row[1]), float(row[2])
        except ValueError:
            raise SequenceFormatError(f"{path}:{lineno}: unparsable row {row!r}") from None
        if prev is not None and k == prev:
            raise SequenceFormatError(f"{path}:{lineno}: duplicate index {k}")
        if prev is not None and k < prev:
            raise SequenceFormatError(f"{path}:{lineno}: indices not ascending at {k}")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise SequenceFormatError(f"{path}:{lineno}: non-finite value")
        entries[k] = complex(re, im)
        prev = k
    return Sequence.from_dict(entries)
