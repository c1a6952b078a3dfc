import math
import random

from mirrorcavity.summation import (
    NeumaierAccumulator,
    chunk_ranges,
    combine_partials,
    fit_loglog_slope,
    neumaier_sum,
)


def test_compensation_beats_naive():
    # classic cancellation case: 1 + 1e100 - 1e100 + ...
    values = [1.0, 1e100, 1.0, -1e100]
    assert neumaier_sum(values) == 2.0


def test_matches_fsum_on_random_data():
    rng = random.Random(7)
    values = [rng.uniform(-1, 1) * 10 ** rng.randint(-8, 8) for _ in range(2000)]
    assert neumaier_sum(values) == math.fsum(values)


def test_partial_combination_fixed_chunks():
    rng = random.Random(3)
    values = [rng.uniform(0, 1) for _ in range(1000)]
    partials = []
    for start, stop in chunk_ranges(len(values), 64):
        acc = NeumaierAccumulator()
        for v in values[start:stop]:
            acc.add(v)
        partials.append(acc.partials)
    combined = combine_partials(partials)
    assert abs(combined - math.fsum(values)) <= 1e-12 * abs(combined)


def test_chunk_ranges_cover_exactly():
    ranges = list(chunk_ranges(130, 64))
    assert ranges == [(0, 64), (64, 128), (128, 130)]


def test_loglog_slope():
    xs = [1.0, 2.0, 4.0, 8.0]
    ys = [3.0 * x**2 for x in xs]
    assert abs(fit_loglog_slope(xs, ys) - 2.0) < 1e-12
