"""Kernel backend selection.

The compiled Cython kernel is preferred when its extension module imports;
otherwise the pure-Python kernel takes over.  Both expose the same raw
interface (``solve_quartic_raw`` and ``solve_batch``), so callers never need
to care which one is active.  Set ``QUARTROOTS_BACKEND=python`` or
``=compiled`` to force a choice at import time.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernel_py

try:
    from . import _kernel as _compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build environment
    _compiled = None

_KERNELS: dict[str, ModuleType] = {"python": _kernel_py}
if _compiled is not None:
    _KERNELS["compiled"] = _compiled


def available() -> tuple[str, ...]:
    """Names of the importable kernel backends."""
    return tuple(sorted(_KERNELS))


def get(name: str) -> ModuleType:
    """Fetch a backend by name ('python' or 'compiled')."""
    try:
        return _KERNELS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {', '.join(available())}"
        ) from None


def _default() -> ModuleType:
    forced = os.environ.get("QUARTROOTS_BACKEND")
    if forced:
        return get(forced)
    return _KERNELS.get("compiled", _kernel_py)


_ACTIVE = _default()


def active() -> ModuleType:
    """The kernel module currently in use."""
    return _ACTIVE


def active_name() -> str:
    return _ACTIVE.NAME


def use(name: str) -> None:
    """Switch the process-wide active backend (mainly for tests/benchmarks)."""
    global _ACTIVE
    _ACTIVE = get(name)
