"""The four reference configurations (function + parameters)."""
from __future__ import annotations

from typing import NamedTuple

from .fnmodel import BuiltinFunction, FunctionKind, ParamSet


class Preset(NamedTuple):
    kind: FunctionKind
    params: ParamSet
    bound: float  # published maximum absolute error on [-2 pi, 2 pi]

    @property
    def function(self) -> BuiltinFunction:
        return BuiltinFunction(self.kind)


# Gaussian presets use h = 0.119; with h = 0.04 the same M, N, sigma give
# errors near 4e-4 instead of 3e-10.
PRESETS = {
    0: Preset(FunctionKind.RECT_SMOOTH, ParamSet(32, 28, 0.04, 2.7), 2.5e-3),
    1: Preset(FunctionKind.T_RECT_SMOOTH, ParamSet(32, 28, 0.04, 3.0), 6e-4),
    2: Preset(FunctionKind.GAUSS, ParamSet(16, 23, 0.119, 6.9), 3e-10),
    3: Preset(FunctionKind.T_GAUSS, ParamSet(16, 23, 0.119, 5.9), 9e-10),
}

PRESET_FOR_KIND = {p.kind: i for i, p in PRESETS.items()}
