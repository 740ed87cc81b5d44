# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Version string coming from setuptools_scm."""
try:
    from . import _version_generated

    # Kept apart from torsionlab/__init__.py to avoid circular imports
    __version__ = f"v{_version_generated.version}"
except ImportError:
    # Running from a source checkout that was never installed
    __version__ = "unknown"
