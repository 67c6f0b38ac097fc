"""Elementary-transform-sequence kinematics.

Thin wrapper over the native core. Matrices come back from the extension as a
flat row-major list plus a shape and are reassembled into nested lists here,
so every value is the exact double computed by the C++ library.
"""

from __future__ import annotations

from typing import Sequence

from . import _etskin
from ._etskin import EtskinError, check, load_model, parse_ets

__all__ = [
    "EtskinError",
    "accel_twist",
    "check",
    "fkine",
    "hessian",
    "jacobian",
    "load_model",
    "parse_ets",
    "velocity_twist",
]


def _reshape(flat: Sequence[float], shape: Sequence[int]):
    if len(shape) == 1:
        return list(flat)
    stride = len(flat) // shape[0] if shape[0] else 0
    return [_reshape(flat[k * stride:(k + 1) * stride], shape[1:]) for k in range(shape[0])]


def _unpack(result):
    flat, shape = result
    return _reshape(flat, shape)


def fkine(ets: str, q: Sequence[float]):
    """End-effector pose as a 4x4 nested list."""
    return _unpack(_etskin.fkine(ets, list(q)))


def jacobian(ets: str, q: Sequence[float], method: str = "fast"):
    """6 x n world-frame Jacobian; method is 'fast', 'naive' or 'fd'."""
    return _unpack(_etskin.jacobian(ets, list(q), method))


def hessian(ets: str, q: Sequence[float], method: str = "fast"):
    """6 x n x n world-frame Hessian indexed [r][i][j]; method is 'fast', 'naive' or 'fd'."""
    return _unpack(_etskin.hessian(ets, list(q), method))


def velocity_twist(ets: str, q: Sequence[float], qd: Sequence[float]):
    """Spatial velocity (v; w) as a 6-list."""
    return _unpack(_etskin.velocity_twist(ets, list(q), list(qd)))


def accel_twist(ets: str, q: Sequence[float], qd: Sequence[float], qdd: Sequence[float]):
    """Spatial acceleration (a; alpha) as a 6-list."""
    return _unpack(_etskin.accel_twist(ets, list(q), list(qd), list(qdd)))
