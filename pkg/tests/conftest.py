import numpy as np
import pytest

from ratfourier.approx import PartialFractionModel
from ratfourier.fnmodel import sample_builtin
from ratfourier.presets import PRESETS

PLOT_GRID = np.linspace(-2 * np.pi, 2 * np.pi, 1000)


@pytest.fixture(scope="session")
def preset_models():
    out = {}
    for i, preset in PRESETS.items():
        f = sample_builtin(preset.function, preset.params)
        out[i] = PartialFractionModel.from_samples(f)
    return out


@pytest.fixture(scope="session")
def preset_samples():
    return {i: sample_builtin(p.function, p.params) for i, p in PRESETS.items()}


@pytest.fixture(params=sorted(PRESETS), ids=lambda i: f"preset{i}")
def preset_id(request):
    return request.param
