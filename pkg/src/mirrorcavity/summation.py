"""Deterministic compensated summation.

All headline mode sums accumulate in ascending index order with a
Neumaier (Kahan-Babuska) compensated loop, so results are bit-reproducible
across runs and independent of how outer work is distributed.  The parallel
contract used elsewhere: a single mode's partial sum is never split across
workers; chunk boundaries are fixed constants, workers only decide who
evaluates which chunk.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence


class NeumaierAccumulator:
    """Running compensated sum; add values in a fixed, documented order."""

    __slots__ = ("_sum", "_comp")

    def __init__(self) -> None:
        self._sum = 0.0
        self._comp = 0.0

    def add(self, value: float) -> None:
        t = self._sum + value
        if abs(self._sum) >= abs(value):
            self._comp += (self._sum - t) + value
        else:
            self._comp += (value - t) + self._sum
        self._sum = t

    @property
    def partials(self) -> tuple[float, float]:
        return self._sum, self._comp

    @property
    def value(self) -> float:
        return self._sum + self._comp

    def __float__(self) -> float:
        return self.value


def neumaier_sum(values: Iterable[float]) -> float:
    acc = NeumaierAccumulator()
    for v in values:
        acc.add(float(v))
    return acc.value


def combine_partials(partials: Sequence[tuple[float, float]]) -> float:
    """Combine per-chunk (sum, compensation) pairs in the given (fixed) order."""
    acc = NeumaierAccumulator()
    for s, c in partials:
        acc.add(s)
        acc.add(c)
    return acc.value


def chunk_ranges(length: int, size: int) -> Iterator[tuple[int, int]]:
    """Half-open [start, stop) ranges of fixed size covering 0..length."""
    if size < 1:
        raise ValueError("chunk size must be >= 1")
    for start in range(0, length, size):
        yield start, min(start + size, length)


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log y against log x (scaling-exponent fits)."""
    if len(x) != len(y) or len(x) < 2:
        raise ValueError("need two or more points")
    lx = [math.log(v) for v in x]
    ly = [math.log(v) for v in y]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den
