"""Kernel selection: compiled Cython loops when available, numpy otherwise."""

try:
    from . import _speedups as _impl
except ImportError:  # extension not built
    from . import fallback as _impl

from . import fallback

BACKEND = _impl.BACKEND
dirichlet_sum = _impl.dirichlet_sum
hurwitz_main_sum = _impl.hurwitz_main_sum

__all__ = ["BACKEND", "dirichlet_sum", "hurwitz_main_sum", "fallback"]
