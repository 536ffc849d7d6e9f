"""Expansion coefficients of the partial-fraction forms and of the shifted baseline.

The time-domain reconstruction

    f(t) ~ exp(-sigma*t)/M * sum_m sum_n f(nh) exp(sigma*n*h) cos(mu_m (t - n*h))

integrates in closed form against ``cos(2 pi nu t)`` / ``sin(2 pi nu t)`` on
``[0, inf)``, giving for each ``m`` one term over the quartic
``kappa_m + lambda_m nu**2 + nu**4``. Sums over ``n`` are correctly rounded
(``math.fsum``), which makes them independent of summation order and hence
bit-reproducible.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .fnmodel import ParamSet, Parity, SampledFunction

PI = math.pi


class Term(NamedTuple):
    m: int
    alpha: float
    beta: float
    eta: float
    theta: float
    kappa: float
    lam: float
    mu: float


@dataclass(frozen=True)
class TermCoefficients:
    """Per-term coefficients stored as arrays indexed by ``m - 1``.

    ``alpha, beta`` multiply ``1, nu**2`` (even part); ``eta, theta`` multiply
    ``nu, nu**3`` (odd part); ``kappa, lam`` are the quartic denominator
    coefficients. Unused families are exactly zero.
    """

    params: ParamSet
    parity: Parity
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    eta: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)
    kappa: np.ndarray = field(repr=False)
    lam: np.ndarray = field(repr=False)
    mu: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "eta", "theta", "kappa", "lam", "mu"):
            arr = np.array(getattr(self, name), dtype=np.float64)
            if arr.shape != (self.params.M,):
                raise ValueError(f"{name} must have length M={self.params.M}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "parity", Parity(self.parity))

    def __len__(self) -> int:
        return self.params.M

    def __iter__(self):
        for i in range(self.params.M):
            yield self.term(i + 1)

    def term(self, m: int) -> Term:
        i = m - 1
        if not 0 <= i < self.params.M:
            raise IndexError(f"term index m={m} outside 1..{self.params.M}")
        return Term(
            m,
            float(self.alpha[i]),
            float(self.beta[i]),
            float(self.eta[i]),
            float(self.theta[i]),
            float(self.kappa[i]),
            float(self.lam[i]),
            float(self.mu[i]),
        )

    @property
    def has_even(self) -> bool:
        return self.parity in (Parity.EVEN_REAL, Parity.MIXED)

    @property
    def has_odd(self) -> bool:
        return self.parity in (Parity.ODD_IMAGINARY, Parity.MIXED)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "parity": self.parity.value,
            "terms": [
                {
                    "m": t.m,
                    "alpha": t.alpha,
                    "beta": t.beta,
                    "eta": t.eta,
                    "theta": t.theta,
                    "kappa": t.kappa,
                    "lambda": t.lam,
                    "mu": t.mu,
                }
                for t in self
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TermCoefficients":
        params = ParamSet(**d["params"])
        terms = sorted(d["terms"], key=lambda r: r["m"])
        if [r["m"] for r in terms] != list(range(1, params.M + 1)):
            raise ValueError("term records must cover m = 1..M exactly once")
        cols = {k: [float(r[k]) for r in terms] for k in ("alpha", "beta", "eta", "theta", "kappa", "lambda", "mu")}
        cols["lam"] = cols.pop("lambda")
        return cls(params, Parity(d["parity"]), **cols)


def compute_mu(m: int, params: ParamSet) -> float:
    """Angular frequency ``pi*(m - 1/2)/(M*h)`` of cosine term ``m``."""
    if not 1 <= m <= params.M:
        raise ValueError(f"m must lie in 1..{params.M}, got {m}")
    return PI * (m - 0.5) / (params.M * params.h)


def _mu_all(params: ParamSet) -> np.ndarray:
    return np.array([compute_mu(m, params) for m in range(1, params.M + 1)])


def _denominators(mu: np.ndarray, sigma: float):
    kappa = (mu**2 + sigma**2) ** 2 / (16 * PI**4)
    lam = (sigma**2 - mu**2) / (2 * PI**2)
    return kappa, lam


def _weighted(values: np.ndarray, params: ParamSet) -> np.ndarray:
    # fold the decay factor exp(sigma*n*h) into the samples once
    return values * np.exp(params.t * params.sigma)


def _even_family(re: np.ndarray, params: ParamSet, mu: np.ndarray):
    M, s = params.M, params.sigma
    g = _weighted(re, params)
    nh = params.t
    alpha = np.empty(M)
    beta = np.empty(M)
    for i, mu_m in enumerate(mu):
        c = np.cos(nh * mu_m)
        sn = np.sin(nh * mu_m)
        alpha[i] = math.fsum(g * (mu_m**2 + s**2) * (s * c + mu_m * sn)) / (8 * M * PI**4)
        beta[i] = math.fsum(g * (s * c - mu_m * sn)) / (2 * M * PI**2)
    return alpha, beta


def _odd_family(im: np.ndarray, params: ParamSet, mu: np.ndarray):
    M, s = params.M, params.sigma
    g = _weighted(im, params)
    nh = params.t
    eta = np.empty(M)
    theta = np.empty(M)
    for i, mu_m in enumerate(mu):
        c = np.cos(nh * mu_m)
        sn = np.sin(nh * mu_m)
        eta[i] = math.fsum(g * ((s**2 - mu_m**2) * c + 2 * s * mu_m * sn)) / (4 * M * PI**3)
        theta[i] = math.fsum(g * c) / (M * PI)
    return eta, theta


def compute_even_coeffs(f: SampledFunction) -> TermCoefficients:
    """Coefficients of ``sum_m (alpha_m + beta_m nu^2)/(kappa_m + lambda_m nu^2 + nu^4)``.

    Approximates the transform of ``Re f``. Requires even-real input.
    """
    if f.parity is not Parity.EVEN_REAL:
        raise ValueError(f"compute_even_coeffs needs even-real samples, got {f.parity.value}")
    return compute_coeffs(f)


def compute_odd_coeffs(f: SampledFunction) -> TermCoefficients:
    """Coefficients of ``sum_m (eta_m nu + theta_m nu^3)/(kappa_m + lambda_m nu^2 + nu^4)``.

    Approximates the transform of ``i Im f``. Requires odd-imaginary input.
    """
    if f.parity is not Parity.ODD_IMAGINARY:
        raise ValueError(f"compute_odd_coeffs needs odd-imaginary samples, got {f.parity.value}")
    return compute_coeffs(f)


def compute_coeffs(f: SampledFunction) -> TermCoefficients:
    """Coefficients for any parity; mixed input populates both numerator families."""
    params = f.params
    mu = _mu_all(params)
    kappa, lam = _denominators(mu, params.sigma)
    zeros = np.zeros(params.M)
    alpha = beta = eta = theta = zeros
    if f.parity in (Parity.EVEN_REAL, Parity.MIXED):
        alpha, beta = _even_family(f.real, params, mu)
    if f.parity in (Parity.ODD_IMAGINARY, Parity.MIXED):
        eta, theta = _odd_family(f.imag, params, mu)
    return TermCoefficients(params, f.parity, alpha, beta, eta, theta, kappa, lam, mu)


def export_coeffs(c: TermCoefficients, path) -> None:
    Path(path).write_text(json.dumps(c.to_dict(), indent=1) + "\n")


def load_coeffs(path) -> TermCoefficients:
    return TermCoefficients.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class BaselineCoefficients:
    """Coefficients of the shifted-grid baseline with its phase multiplier.

    ``terms`` counts summation terms directly; ``C_m = pi*(m - 1/2)/(terms*h)``.
    """

    params: ParamSet
    a: float
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    C: np.ndarray = field(repr=False)

    @property
    def terms(self) -> int:
        return len(self.C)


def compute_baseline_coeffs(
    shifted: np.ndarray, params: ParamSet, a: float, terms: int | None = None
) -> BaselineCoefficients:
    """Baseline coefficients from samples ``f(n*h - a)``, ``n = 0..N``.

    Parameters
    ----------
    shifted : (N+1,) array_like
        Samples on the shifted one-sided grid; may be complex.
    params : ParamSet
        Supplies ``N``, ``h`` and ``sigma``.
    a : float
        Shift constant.
    terms : int, optional
        Number of summation terms; defaults to ``params.M``.
    """
    terms = params.M if terms is None else int(terms)
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    shifted = np.asarray(shifted, dtype=np.complex128)
    if shifted.shape != (params.N + 1,):
        raise ValueError(f"expected {params.N + 1} shifted samples, got shape {shifted.shape}")
    nh = np.arange(params.N + 1) * params.h
    g = shifted * np.exp(params.sigma * nh)
    C = PI * (np.arange(1, terms + 1) - 0.5) / (terms * params.h)
    A = np.empty(terms, dtype=np.complex128)
    B = np.empty(terms, dtype=np.complex128)
    for i, c in enumerate(C):
        cs = g * np.cos(c * nh)
        sn = g * (c * np.sin(c * nh))
        A[i] = complex(math.fsum(cs.real), math.fsum(cs.imag)) / terms
        B[i] = complex(math.fsum(sn.real), math.fsum(sn.imag)) / terms
    return BaselineCoefficients(params, float(a), A, B, C)
