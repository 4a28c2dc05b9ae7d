"""Kernel backend selection.

Imports the compiled extension when it was built, otherwise the numpy
fallback.  ``NAME`` reports which one is active ("compiled" or "python").
Both expose ``eigh`` and ``feasibility_loop`` with identical contracts, so
everything above this module is backend-agnostic.
"""
try:
    from . import _core as _impl  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _fallback as _impl

NAME = _impl.NAME
eigh = _impl.eigh
feasibility_loop = _impl.feasibility_loop
