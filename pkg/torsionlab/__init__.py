# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
torsionlab: Nonlinear qubits from torsion.
"""
from ._api import (
    converge,
    fixed_points,
    flow,
    monogamy,
    monotonicity,
    sat,
    squeeze,
    viviani,
)
from ._version import __version__
