"""Collapse of the partial-fraction model into a single ratio ``P(nu)/Q(nu)``.

``Q`` is the product of the ``M`` quartics and ``P`` the sum of every
numerator times the other quartics, both in the monomial basis.

The collapsed form is badly conditioned: at ``M = 32`` the sum
``sum_k |q_k| |nu|^k`` exceeds ``|Q(nu)|`` by ~1e27 on ``|nu| <= 2 pi``, so
float64 coefficients cannot reproduce the partial-fraction values at all.
Above ``EXTENDED_THRESHOLD`` terms the coefficients are therefore kept as
double-double (``coef + lo``) and evaluated in double-double. The
partial-fraction evaluator remains the recommended one; this form exists
for export to tools that want ``P/Q``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import ddarith as dd
from .approx import PartialFractionModel, eval_partial_fractions
from .fnmodel import ParamSet, Parity

EXTENDED_THRESHOLD = 16
FORMAT_TAG = "ratfourier-rational/1"


class Precision(str, enum.Enum):
    STANDARD = "standard"
    EXTENDED = "extended"


@dataclass(frozen=True)
class Polynomial:
    """Monomial-basis polynomial; ``coef[k]`` multiplies ``nu**k``.

    ``lo`` holds optional double-double tails (``coef[k] + lo[k]``).
    Trailing zero coefficients are trimmed so the leading coefficient is
    nonzero unless the polynomial is identically zero (``coef == [0.]``).
    """

    coef: np.ndarray = field(repr=False)
    lo: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        coef = np.array(self.coef, dtype=np.float64).ravel()
        lo = None if self.lo is None else np.array(self.lo, dtype=np.float64).ravel()
        if coef.size == 0:
            coef = np.zeros(1)
        if lo is not None and lo.shape != coef.shape:
            raise ValueError("lo must match coef in shape")
        nz = np.flatnonzero((coef != 0) | (lo != 0 if lo is not None else False))
        size = int(nz[-1]) + 1 if nz.size else 1
        coef = coef[:size].copy()
        coef.setflags(write=False)
        if lo is not None:
            lo = lo[:size].copy()
            if not np.any(lo):
                lo = None
            else:
                lo.setflags(write=False)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "lo", lo)

    @property
    def degree(self) -> int:
        return self.coef.size - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coef[0] == 0 and self.lo is None

    @property
    def tail(self) -> np.ndarray:
        return np.zeros_like(self.coef) if self.lo is None else self.lo

    def __call__(self, nu):
        return horner(self, nu)


def poly_mul(a: Polynomial, b: Polynomial, extended: bool = False) -> Polynomial:
    """Product of two polynomials by coefficient convolution.

    Partial products are exact and accumulated in double-double. With
    ``extended=False`` each result coefficient is then rounded to float64,
    i.e. a compensated convolution; with ``extended=True`` the tails are kept.
    """
    hi, lo = dd.dd_convolve(a.coef, a.tail, b.coef, b.tail)
    if extended:
        return Polynomial(hi, lo)
    return Polynomial(hi + lo)


def _poly_add(ahi, alo, bhi, blo):
    n = max(ahi.size, bhi.size)
    ahi, alo, bhi, blo = (np.pad(x, (0, n - x.size)) for x in (ahi, alo, bhi, blo))
    return dd.dd_add(ahi, alo, bhi, blo)


def horner(p: Polynomial, nu):
    """Evaluate ``p`` at real ``nu``; double-double Horner when ``p`` has tails.

    For ``|nu| > 1`` the reversed polynomial is evaluated in ``1/nu`` and the
    power ``nu**degree`` is returned separately, see :func:`_horner_scaled`.
    """
    val, shift = _horner_scaled(p, nu)
    return val * _power(np.asarray(nu, dtype=np.float64), shift)


def _power(nu, e):
    """``nu**e`` for integer ``e``, computed as ``|nu|**e`` with the sign applied
    afterwards so that the result is exactly (anti)symmetric in ``nu``."""
    e = np.asarray(e)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        mag = np.abs(nu) ** e.astype(np.float64)
    return np.where((e % 2 == 1) & (nu < 0), -mag, mag)


def _horner_scaled(p: Polynomial, nu):
    """Return ``(v, e)`` with ``p(nu) == v * nu**e`` elementwise.

    ``e`` is 0 where ``|nu| <= 1`` and ``p.degree`` elsewhere, which keeps
    every intermediate bounded by ``sum |p_k|`` and avoids overflow of
    ``nu**(4M)`` at large ``|nu|``.
    """
    nu = np.asarray(nu, dtype=np.float64)
    big = np.abs(nu) > 1
    x = np.where(big, 1.0 / np.where(big, nu, 1.0), nu)
    hi_c, lo_c = p.coef, p.tail
    n = hi_c.size
    if p.lo is None:
        fwd = np.zeros_like(x)
        rev = np.zeros_like(x)
        for k in range(n):
            fwd = fwd * x + hi_c[n - 1 - k]
            rev = rev * x + hi_c[k]
        val = np.where(big, rev, fwd)
    else:
        zero = np.zeros_like(x)
        fh, fl, rh, rl = zero, zero, zero, zero
        for k in range(n):
            fh, fl = dd.dd_mul_d(fh, fl, x)
            fh, fl = dd.dd_add(fh, fl, np.full_like(x, hi_c[n - 1 - k]), np.full_like(x, lo_c[n - 1 - k]))
            rh, rl = dd.dd_mul_d(rh, rl, x)
            rh, rl = dd.dd_add(rh, rl, np.full_like(x, hi_c[k]), np.full_like(x, lo_c[k]))
        val = np.where(big, rh + rl, fh + fl)
    shift = np.where(big, p.degree, 0)
    return val, shift


@dataclass(frozen=True)
class RationalPolynomial:
    """``P(nu)/Q(nu)`` with the parameters it was collapsed from."""

    P: Polynomial
    Q: Polynomial
    precision: Precision = Precision.STANDARD
    params: ParamSet | None = None
    parity: Parity | None = None

    def __post_init__(self):
        object.__setattr__(self, "precision", Precision(self.precision))
        if self.parity is not None:
            object.__setattr__(self, "parity", Parity(self.parity))
        if np.any(self.Q.coef[1::2] != 0) or np.any(self.Q.tail[1::2] != 0):
            raise ValueError("Q must contain even powers of nu only")

    def __call__(self, nu):
        return eval_rational(self, nu)


def collapse(model: PartialFractionModel) -> RationalPolynomial:
    """Clear denominators of the partial-fraction sum.

    Terms are combined pairwise in a balanced tree,
    ``(P1, Q1) + (P2, Q2) -> (P1 Q2 + P2 Q1, Q1 Q2)``, so that every
    coefficient passes through ``O(log M)`` multiplications. All arithmetic
    is double-double; with ``M <= EXTENDED_THRESHOLD`` the result is rounded
    to float64 (``precision = standard``), otherwise tails are kept.
    """
    c = model.coeffs
    M = len(c)
    extended = M > EXTENDED_THRESHOLD
    nodes = []
    for t in c:
        num = np.array([t.alpha, t.eta, t.beta, t.theta])
        quart = np.array([t.kappa, 0.0, t.lam, 0.0, 1.0])
        nodes.append((num, np.zeros(4), quart, np.zeros(5)))
    while len(nodes) > 1:
        merged = []
        for j in range(0, len(nodes) - 1, 2):
            (p1, p1l, q1, q1l), (p2, p2l, q2, q2l) = nodes[j], nodes[j + 1]
            a = dd.dd_convolve(p1, p1l, q2, q2l)
            b = dd.dd_convolve(p2, p2l, q1, q1l)
            ph, pl = _poly_add(*a, *b)
            qh, ql = dd.dd_convolve(q1, q1l, q2, q2l)
            merged.append((ph, pl, qh, ql))
        if len(nodes) % 2:
            merged.append(nodes[-1])
        nodes = merged
    ph, pl, qh, ql = nodes[0]
    # odd Q entries are structurally zero; enforce it exactly
    qh = qh.copy()
    ql = ql.copy()
    qh[1::2] = 0.0
    ql[1::2] = 0.0
    if extended:
        P, Q = Polynomial(ph, pl), Polynomial(qh, ql)
        precision = Precision.EXTENDED
    else:
        P, Q = Polynomial(ph + pl), Polynomial(qh + ql)
        precision = Precision.STANDARD
    return RationalPolynomial(P, Q, precision, c.params, c.parity)


def eval_rational(r: RationalPolynomial, nu):
    """Evaluate ``P(nu)/Q(nu)`` by separate Horner passes and one division.

    Both polynomials are evaluated in the scaled form of
    :func:`_horner_scaled`, and the powers of ``nu`` are combined before
    dividing, so large ``|nu|`` neither overflows nor loses the ratio.
    """
    nu = np.asarray(nu, dtype=np.float64)
    pv, ps = _horner_scaled(r.P, nu)
    qv, qs = _horner_scaled(r.Q, nu)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        out = pv / qv * _power(nu, ps - qs)
    return out[()] if out.ndim == 0 else out


def agreement(r: RationalPolynomial, model: PartialFractionModel, nu) -> tuple[float, float]:
    """Return ``(max |P/Q - partial fractions|, max |partial fractions|)`` over ``nu``."""
    ref = eval_partial_fractions(model, nu)
    got = eval_rational(r, nu)
    return float(np.max(np.abs(got - ref))), float(np.max(np.abs(ref)))


def agreement_tolerance(M: int) -> float:
    """Relative collapse tolerance: 1e-10 up to the extended threshold, 1e-6 above."""
    return 1e-10 if M <= EXTENDED_THRESHOLD else 1e-6


def to_dict(r: RationalPolynomial, compact: bool = True) -> dict:
    d = {
        "format": FORMAT_TAG,
        "precision": r.precision.value,
        "params": None if r.params is None else r.params.to_dict(),
        "parity": None if r.parity is None else r.parity.value,
        "deg_P": r.P.degree,
        "deg_Q": r.Q.degree,
        "compact": compact,
        "p": r.P.coef.tolist(),
    }
    q, ql = r.Q.coef, r.Q.tail
    if compact:
        q, ql = q[::2], ql[::2]
    d["q"] = q.tolist()
    if r.precision is Precision.EXTENDED:
        d["p_lo"] = r.P.tail.tolist()
        d["q_lo"] = ql.tolist()
    return d


def from_dict(d: dict) -> RationalPolynomial:
    if d.get("format") != FORMAT_TAG:
        raise ValueError(f"unrecognised rational export format {d.get('format')!r}")
    precision = Precision(d["precision"])
    p = np.array(d["p"], dtype=np.float64)
    q = np.array(d["q"], dtype=np.float64)
    p_lo = np.array(d["p_lo"], dtype=np.float64) if "p_lo" in d else None
    q_lo = np.array(d["q_lo"], dtype=np.float64) if "q_lo" in d else np.zeros_like(q)
    if d.get("compact", False):
        full, full_lo = np.zeros(2 * q.size - 1), np.zeros(2 * q.size - 1)
        full[::2], full_lo[::2] = q, q_lo
        q, q_lo = full, full_lo
    params = None if d.get("params") is None else ParamSet(**d["params"])
    parity = None if d.get("parity") is None else Parity(d["parity"])
    r = RationalPolynomial(Polynomial(p, p_lo), Polynomial(q, q_lo), precision, params, parity)
    if r.P.degree != d["deg_P"] or r.Q.degree != d["deg_Q"]:
        raise ValueError("recorded degrees do not match coefficient arrays")
    return r


def export_rational(r: RationalPolynomial, path, compact: bool = True) -> None:
    """Write ``r`` as JSON; floats are written in shortest round-trip form."""
    path = Path(path)
    try:
        path.write_text(json.dumps(to_dict(r, compact), indent=1) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write rational export to {path}: {exc}") from exc


def load_rational(path) -> RationalPolynomial:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read rational export {path}: {exc}") from exc
    return from_dict(json.loads(text))
