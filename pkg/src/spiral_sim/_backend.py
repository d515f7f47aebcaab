"""Kernel selection: the compiled extension when importable, else numpy."""

from . import _fallback

try:
    from . import _kernels
except ImportError:
    _kernels = None

BACKENDS = {"python": _fallback.step_counts}
if _kernels is not None:
    BACKENDS["cython"] = _kernels.step_counts

DEFAULT_BACKEND = "cython" if _kernels is not None else "python"


def get_kernel(name: str | None = None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
