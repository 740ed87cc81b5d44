# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Test the random generators, thread pools, and run information.
"""
import threading

import numpy as np
import numpy.testing as npt
import pytest

from ..utils import (
    THREADS_VARIABLE,
    capture_run_info,
    make_rng,
    parallel_map,
    spawn_rngs,
    thread_count,
)


def test_make_rng_is_reproducible():
    "Same seed, same numbers"
    npt.assert_array_equal(make_rng(5).uniform(size=10), make_rng(5).uniform(size=10))
    other = make_rng(6).uniform(size=10)
    assert not np.array_equal(make_rng(5).uniform(size=10), other)
    assert isinstance(make_rng(1).bit_generator, np.random.Philox)


def test_spawn_rngs():
    "Independent streams that only depend on the seed and index"
    first = [rng.uniform(size=4) for rng in spawn_rngs(9, 3)]
    second = [rng.uniform(size=4) for rng in spawn_rngs(9, 3)]
    for a, b in zip(first, second):
        npt.assert_array_equal(a, b)
    assert not np.array_equal(first[0], first[1])
    # Asking for more streams doesn't change the earlier ones
    npt.assert_array_equal(spawn_rngs(9, 5)[1].uniform(size=4), first[1])


def test_thread_count(monkeypatch):
    "Explicit values, the environment variable, and the CPU count"
    assert thread_count(3) == 3
    monkeypatch.setenv(THREADS_VARIABLE, "2")
    assert thread_count() == 2
    monkeypatch.delenv(THREADS_VARIABLE)
    assert thread_count() >= 1
    with pytest.raises(ValueError, match="must be positive"):
        thread_count(0)


def test_parallel_map_keeps_order():
    "Results come back in input order for any number of threads"
    items = list(range(50))
    expected = [i**2 for i in items]
    assert parallel_map(lambda i: i**2, items, threads=1) == expected
    assert parallel_map(lambda i: i**2, items, threads=4) == expected
    assert parallel_map(lambda i: i, [], threads=4) == []


def test_parallel_map_uses_threads():
    "More than one worker thread runs the items"
    names = parallel_map(
        lambda _: (threading.Event().wait(0.01), threading.current_thread().name)[1],
        range(8),
        threads=4,
    )
    assert len(set(names)) > 1
    single = parallel_map(lambda _: threading.current_thread().name, range(3), 1)
    assert set(single) == {threading.current_thread().name}


def test_capture_run_info():
    "Versions, date, and the seed when given"
    info = capture_run_info(seed=7)
    assert info["seed"] == 7
    assert info["numpy_version"] == np.__version__
    assert "torsionlab_version" in info
    assert "today" in info
    assert "seed" not in capture_run_info()
