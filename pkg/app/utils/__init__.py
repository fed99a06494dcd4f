"""
Utilities Package

This package contains the computational modules (topology, algorithm,
daemons, potentials, checker) and their helpers. Submodules are imported
explicitly by callers; only the error model is loaded eagerly.
"""

from . import error_handlers

__all__ = [
    'error_handlers'
]
