# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Misc utilities."""
import concurrent.futures
import contextlib
import datetime
import os
import subprocess

import numpy as np

from ._version import __version__ as torsionlab_version

THREADS_VARIABLE = "TORSIONLAB_THREADS"


def make_rng(seed):
    """
    Create the counter-based random generator used for every sweep.

    Parameters
    ----------
    seed : int or :class:`numpy.random.SeedSequence`
        The seed.

    Returns
    -------
    rng : :class:`numpy.random.Generator`
    """
    return np.random.Generator(np.random.Philox(seed))


def spawn_rngs(seed, number):
    """
    Split a seed into independent generators, one per parallel task.

    The streams only depend on the seed and the task index, so results don't
    change with the number of workers.
    """
    children = np.random.SeedSequence(seed).spawn(number)
    return [make_rng(child) for child in children]


def thread_count(threads=None):
    """
    Number of workers to use.

    Parameters
    ----------
    threads : int or None
        Explicit number. If None, use the ``TORSIONLAB_THREADS`` environment
        variable or the number of CPUs.

    Returns
    -------
    threads : int
    """
    if threads is None:
        threads = os.environ.get(THREADS_VARIABLE) or os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"Number of threads must be positive but got {threads}.")
    return threads


def parallel_map(function, items, threads=None):
    """
    Apply a function to every item using a pool of threads.

    Output order matches the input order. With a single thread the items are
    processed in the calling thread.

    Parameters
    ----------
    function : callable
        Takes one item.
    items : iterable
        The inputs.
    threads : int or None
        Number of workers (see :func:`torsionlab.utils.thread_count`).

    Returns
    -------
    results : list
    """
    items = list(items)
    threads = thread_count(threads)
    if threads == 1 or len(items) < 2:
        return [function(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))


def capture_run_info(seed=None):
    """
    Create a dictionary with information about the run environment.

    Returns
    -------
    info : dict
        Dictionary with the captured information.
    """
    info = {
        "today": datetime.datetime.utcnow().isoformat(timespec="seconds"),
        "torsionlab_version": torsionlab_version,
        "numpy_version": np.__version__,
    }
    if seed is not None:
        info["seed"] = seed
    # Have to be careful if git isn't installed or if not running in a repository
    with contextlib.suppress(Exception):
        git_output = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"], capture_output=True, text=True
        )
        commit = git_output.stdout.strip()
        if commit:
            info["commit"] = commit
    return info
