"""Scoring kernel backends.

The compiled extension (``_ckernels``, built from ``_ckernels.pyx``) and the
NumPy module (``_pykernels``) implement the same set of functions. The
compiled one is preferred when importable; set ``BREGSIM_KERNELS=python`` or
``BREGSIM_KERNELS=c`` to force a choice. The selected module is exposed as
``active`` and call sites resolve it at call time, so tests may swap it.
"""

import os

from . import _pykernels


def _compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


def available():
    """Name-to-module map of the importable backends."""
    out = {"python": _pykernels}
    c = _compiled()
    if c is not None:
        out["c"] = c
    return out


def get_backend(name):
    """Return a backend module by name ('python' or 'c')."""
    backends = available()
    try:
        return backends[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {sorted(backends)}"
        ) from None


def _select():
    requested = os.environ.get("BREGSIM_KERNELS", "auto").strip().lower()
    if requested in ("auto", ""):
        c = _compiled()
        return c if c is not None else _pykernels
    if requested == "python":
        return _pykernels
    if requested == "c":
        c = _compiled()
        if c is None:
            raise ImportError(
                "BREGSIM_KERNELS=c requested but the compiled kernel module is not built"
            )
        return c
    raise ValueError(
        f"BREGSIM_KERNELS must be 'auto', 'c' or 'python', got {requested!r}"
    )


active = _select()


def backend_name():
    """Name of the backend in use ('c' or 'python')."""
    return active.NAME
