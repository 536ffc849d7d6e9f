"""Evaluation of the rational Fourier-transform approximations.

Also houses the cosine-sum sinc expansion and the time-domain
reconstructions that show how the decay multiplier removes the periodicity
of a truncated cosine expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import BaselineCoefficients, TermCoefficients, compute_coeffs
from .fnmodel import ParamSet, Parity, SampledFunction


@dataclass(frozen=True)
class PartialFractionModel:
    """``sum_m (alpha + eta nu + beta nu^2 + theta nu^3)/(kappa + lambda nu^2 + nu^4)``."""

    coeffs: TermCoefficients

    @classmethod
    def from_samples(cls, f: SampledFunction) -> "PartialFractionModel":
        return cls(compute_coeffs(f))

    @property
    def params(self) -> ParamSet:
        return self.coeffs.params

    @property
    def parity(self) -> Parity:
        return self.coeffs.parity

    @property
    def terms(self) -> TermCoefficients:
        return self.coeffs

    def __call__(self, nu):
        return eval_partial_fractions(self, nu)


def eval_partial_fractions(model: PartialFractionModel, nu):
    """Evaluate the partial-fraction sum at real ``nu`` (scalar or array).

    The result is real: the even family approximates the transform of
    ``Re f`` and the odd family that of ``i Im f``, both real-valued.
    Terms are added in ascending ``m``; the quartic is evaluated as
    ``kappa + nu^2 (lambda + nu^2)`` so that ``nu -> -nu`` is exactly
    symmetric (even part) or antisymmetric (odd part).
    """
    c = model.coeffs
    nu = np.asarray(nu, dtype=np.float64)
    nu2 = nu * nu
    total = np.zeros_like(nu)
    even, odd = c.has_even, c.has_odd
    for i in range(len(c)):
        den = c.kappa[i] + nu2 * (c.lam[i] + nu2)
        if even and odd:
            num = (c.alpha[i] + c.beta[i] * nu2) + nu * (c.eta[i] + c.theta[i] * nu2)
        elif even:
            num = c.alpha[i] + c.beta[i] * nu2
        else:
            num = nu * (c.eta[i] + c.theta[i] * nu2)
        total = total + num / den
    return total[()] if total.ndim == 0 else total


def eval_baseline(coeffs: BaselineCoefficients, nu):
    """Shifted-grid baseline ``e^{2 pi i nu a} sum (A s + B)/(C^2 + s^2)``, ``s = sigma + 2 pi i nu``."""
    nu = np.asarray(nu, dtype=np.float64)
    s = coeffs.params.sigma + 2j * math.pi * nu
    total = np.zeros(nu.shape, dtype=np.complex128)
    for A, B, C in zip(coeffs.A, coeffs.B, coeffs.C):
        total = total + (A * s + B) / (C * C + s * s)
    out = phase_multiplier(coeffs.a, nu) * total
    return out[()] if out.ndim == 0 else out


def phase_multiplier(a: float, nu):
    """``exp(2 pi i nu a)``; exactly 1 when ``a == 0``."""
    nu = np.asarray(nu, dtype=np.float64)
    if a == 0:
        return np.ones(nu.shape, dtype=np.complex128)
    return np.exp(2j * math.pi * nu * a)


def viete_product(t, terms: int):
    """Truncated cosine product ``prod_{m=1..terms} cos(t / 2^m)``."""
    t = np.asarray(t, dtype=np.float64)
    out = np.ones_like(t)
    for m in range(1, terms + 1):
        out = out * np.cos(t / 2.0**m)
    return out


def cosine_expansion(t, terms: int):
    """Sum form ``2^(1-terms) sum_{m=1..2^(terms-1)} cos((2m-1) t / 2^terms)``.

    Equal to :func:`viete_product` for every ``t``.
    """
    t = np.asarray(t, dtype=np.float64)
    count = 2 ** (terms - 1)
    k = 2 * np.arange(1, count + 1) - 1
    return np.cos(np.multiply.outer(t, k) / 2.0**terms).sum(axis=-1) / count


def cosine_sinc(t, params: ParamSet):
    """``(1/M) sum_m cos(pi (m - 1/2) t / (M h))``, approximating ``sinc(pi t / h)``.

    Only valid for ``|t| <= M h``; values outside raise ``ValueError``.
    """
    t = np.asarray(t, dtype=np.float64)
    M, h = params.M, params.h
    if np.any(np.abs(t) > M * h):
        raise ValueError(f"cosine sinc expansion valid only for |t| <= M*h = {M * h:g}")
    mu = math.pi * (np.arange(1, M + 1) - 0.5) / (M * h)
    out = np.cos(np.multiply.outer(t, mu)).sum(axis=-1) / M
    return out[()] if out.ndim == 0 else out


def reconstruct_time_domain(
    f: SampledFunction, t, damped: bool = True, sigma: float | None = None, part: str | None = None
):
    """Cosine-expansion reconstruction of the sampled function.

    With ``damped=False`` this is the weighted sum
    ``(1/M) sum_m sum_n f(nh) e^{sigma n h} cos(mu_m (t - nh))``, approximating
    ``f(t) e^{sigma t}`` for ``|t| <= M h`` only. With ``damped=True`` the sum is
    multiplied by ``e^{-sigma t}``, which approximates ``f(t)`` and is
    evaluated for any ``t``.

    Parameters
    ----------
    sigma : float, optional
        Overrides ``f.params.sigma``. Zero is allowed here (and only here),
        reproducing the undamped, periodic expansion.
    part : {'real', 'imag'}, optional
        Which component of ``f`` to reconstruct. Defaults to the component
        carrying the data (``'imag'`` for odd-imaginary input).
    """
    params = f.params
    sigma = params.sigma if sigma is None else float(sigma)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if part is None:
        part = "imag" if f.parity is Parity.ODD_IMAGINARY else "real"
    values = {"real": f.real, "imag": f.imag}[part]
    t = np.asarray(t, dtype=np.float64)
    M, h = params.M, params.h
    if not damped and np.any(np.abs(t) > M * h):
        raise ValueError(f"undamped reconstruction valid only for |t| <= M*h = {M * h:g}")
    nh = params.t
    g = values * np.exp(sigma * nh)
    mu = math.pi * (np.arange(1, M + 1) - 0.5) / (M * h)
    tt = np.atleast_1d(t)
    out = np.empty(tt.shape)
    for j, tj in enumerate(tt.flat):
        out.flat[j] = np.cos(np.multiply.outer(mu, tj - nh)).dot(g).sum() / M
    if damped:
        out = out * np.exp(-sigma * tt)
    out = out.reshape(t.shape)
    return out[()] if out.ndim == 0 else out
