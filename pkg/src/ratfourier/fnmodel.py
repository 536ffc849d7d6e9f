"""Input functions, sampling grid and run parameters.

Inputs are assumed to have an even real part and an odd imaginary part.
Samples live on the uniform grid ``t_n = n*h`` for ``n = -N..N``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

PARITY_RTOL = 1e-9
GRID_RTOL = 1e-12


class Parity(str, enum.Enum):
    EVEN_REAL = "even-real"
    ODD_IMAGINARY = "odd-imaginary"
    MIXED = "mixed"


class FunctionKind(str, enum.Enum):
    RECT_SMOOTH = "rect_smooth"
    T_RECT_SMOOTH = "t_rect_smooth"
    GAUSS = "gauss"
    T_GAUSS = "t_gauss"

    @property
    def parity(self) -> Parity:
        if self in (FunctionKind.RECT_SMOOTH, FunctionKind.GAUSS):
            return Parity.EVEN_REAL
        return Parity.ODD_IMAGINARY


class SampleFileError(ValueError):
    """A sample file does not match the declared grid or parity."""


class CoverageWarning(UserWarning):
    """The sampled span does not cover the declared function width."""


class SaturationWarning(UserWarning):
    """A smoothed-rect sample overflowed and was saturated to zero."""


@dataclass(frozen=True)
class ParamSet:
    """Parameters of one approximation run.

    Parameters
    ----------
    M : int
        Number of cosine-expansion terms (and of partial-fraction terms).
    N : int
        Half sample count; samples run over ``n = -N..N``.
    h : float
        Sampling step.
    sigma : float
        Decay constant of the exponential multiplier, strictly positive.
    width : float, optional
        Declared function width ``2*tau``. Used only for coverage checks.
    """

    M: int
    N: int
    h: float
    sigma: float
    width: float | None = None

    def __post_init__(self):
        for name in ("M", "N"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"h must be positive, got {self.h!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(
                f"sigma must be > 0 (sigma <= 0 puts poles on the real nu axis), got {self.sigma!r}"
            )
        if self.width is not None and not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width!r}")
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def span(self) -> float:
        """Length ``2*N*h`` of the sampled interval."""
        return 2 * self.N * self.h

    @property
    def n(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    @property
    def t(self) -> np.ndarray:
        return self.n * self.h

    def covers(self, width: float | None = None) -> bool:
        """Whether the sampled span is larger than ``width`` (default: declared width)."""
        width = self.width if width is None else width
        if width is None:
            return True
        return self.span > width

    def to_dict(self) -> dict:
        d = {"M": self.M, "N": self.N, "h": self.h, "sigma": self.sigma}
        if self.width is not None:
            d["width"] = self.width
        return d


def make_params(M: int, N: int, h: float, sigma: float, width: float | None = None) -> ParamSet:
    """Validated constructor; raises ``ValueError`` on any out-of-range field."""
    return ParamSet(M, N, h, sigma, width)


@dataclass(frozen=True)
class BuiltinFunction:
    """One of the four closed-form test inputs.

    ``rect_smooth`` and ``t_rect_smooth`` replace the discontinuous rect by
    ``1/((2t)**(2k) + 1)``; ``k`` controls the edge steepness.
    """

    kind: FunctionKind
    k: int = 35

    def __post_init__(self):
        object.__setattr__(self, "kind", FunctionKind(self.kind))
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")

    @property
    def parity(self) -> Parity:
        return self.kind.parity

    @property
    def width(self) -> float:
        # rect family: tails negligible beyond |t| = 0.6; Gaussian: below 1e-15 beyond |t| = 1.9
        if self.kind in (FunctionKind.RECT_SMOOTH, FunctionKind.T_RECT_SMOOTH):
            return 1.2
        return 3.8

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        kind = self.kind
        if kind in (FunctionKind.RECT_SMOOTH, FunctionKind.T_RECT_SMOOTH):
            with np.errstate(over="ignore"):
                denom = (2 * t) ** (2 * self.k) + 1
            if np.any(np.isinf(denom)):
                warnings.warn(
                    "smoothed rect overflowed; saturating samples to 0", SaturationWarning, stacklevel=2
                )
            env = 1 / denom
            if kind is FunctionKind.RECT_SMOOTH:
                return env + 0j
            return 1j * (t * env)
        env = np.exp(-((np.pi * t) ** 2))
        if kind is FunctionKind.GAUSS:
            return math.sqrt(math.pi) * env + 0j
        return 1j * (np.pi**1.5 * t * env)


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples ``f(n*h)`` for ``n = -N..N`` with a parity tag."""

    params: ParamSet
    samples: np.ndarray = field(repr=False)
    parity: Parity

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128)
        if samples.shape != (2 * self.params.N + 1,):
            raise ValueError(
                f"expected {2 * self.params.N + 1} samples for N={self.params.N}, got shape {samples.shape}"
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "parity", Parity(self.parity))
        bad = parity_violation(samples, self.parity)
        if bad is not None:
            n, size, limit = bad
            raise ValueError(
                f"samples violate {self.parity.value} parity: worst offender n={n} "
                f"(violation {size:.3e} > tolerance {limit:.3e})"
            )

    @property
    def real(self) -> np.ndarray:
        return self.samples.real

    @property
    def imag(self) -> np.ndarray:
        return self.samples.imag


def parity_violation(samples: np.ndarray, parity: Parity):
    """Return ``(n, size, tolerance)`` for the worst parity violation, or None.

    Checks Re f even and Im f odd, plus vanishing of the absent part for the
    pure parities.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    N = (samples.size - 1) // 2
    n = np.arange(-N, N + 1)
    scale = np.max(np.abs(samples)) if samples.size else 0.0
    limit = PARITY_RTOL * scale
    re, im = samples.real, samples.imag
    viol = np.maximum(np.abs(re - re[::-1]), np.abs(im + im[::-1]))
    if parity is Parity.EVEN_REAL:
        viol = np.maximum(viol, np.abs(im))
    elif parity is Parity.ODD_IMAGINARY:
        viol = np.maximum(viol, np.abs(re))
    worst = int(np.argmax(viol))
    if viol[worst] > limit:
        return int(n[worst]), float(viol[worst]), float(limit)
    return None


def sample_builtin(fn: BuiltinFunction, params: ParamSet) -> SampledFunction:
    """Sample a built-in function on ``n*h``, mirroring ``n >= 0`` for exact parity."""
    if not params.covers(fn.width):
        warnings.warn(
            f"sampled span 2Nh={params.span:g} does not cover function width {fn.width:g}",
            CoverageWarning,
            stacklevel=2,
        )
    half = fn(np.arange(params.N + 1) * params.h)
    if fn.parity is Parity.EVEN_REAL:
        full = np.concatenate([half[:0:-1], half])
    else:
        full = np.concatenate([-half[:0:-1], half])
    return SampledFunction(params, full, fn.parity)


def sample_shifted(fn, params: ParamSet, a: float) -> np.ndarray:
    """Samples ``f(n*h - a)`` for ``n = 0..N`` (the one-sided shifted grid)."""
    n = np.arange(params.N + 1)
    return np.asarray(fn(n * params.h - a), dtype=np.complex128)


def write_samples(f: SampledFunction, path) -> None:
    """Write ``t, re, im`` rows at full (round-trip) precision."""
    data = np.column_stack([f.params.t, f.real, f.imag])
    header = f"t, re, im  (N={f.params.N}, h={f.params.h!r}, parity={f.parity.value})"
    np.savetxt(path, data, fmt="%.17g", delimiter=", ", header=header, comments="# ")


def load_samples(path, params: ParamSet, parity: Parity | str) -> SampledFunction:
    """Read a ``t, re, im`` sample file and validate it against ``params``.

    Raises
    ------
    SampleFileError
        On row-count mismatch, grid mismatch or parity violation.
    OSError
        When the file cannot be read.
    """
    parity = Parity(parity)
    path = Path(path)
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError as exc:
        raise SampleFileError(f"{path}: cannot parse rows as 't, re, im': {exc}") from exc
    expected = 2 * params.N + 1
    if data.shape[0] != expected:
        raise SampleFileError(f"{path}: row count {data.shape[0]} != 2N+1 = {expected}")
    if data.shape[1] != 3:
        raise SampleFileError(f"{path}: expected 3 columns (t, re, im), got {data.shape[1]}")
    t_expected = params.t
    tol = GRID_RTOL * np.maximum(np.abs(t_expected), params.h)
    off = np.abs(data[:, 0] - t_expected) > tol
    if np.any(off):
        i = int(np.argmax(off))
        raise SampleFileError(
            f"{path}: grid mismatch at row {i}: t={data[i, 0]!r}, expected n*h={t_expected[i]!r}"
        )
    samples = np.empty(expected, dtype=np.complex128)
    samples.real = data[:, 1]
    samples.imag = data[:, 2]
    bad = parity_violation(samples, parity)
    if bad is not None:
        n, size, limit = bad
        raise SampleFileError(
            f"{path}: {parity.value} parity violated, worst offender n={n} "
            f"(violation {size:.3e} > tolerance {limit:.3e})"
        )
    return SampledFunction(params, samples, parity)
