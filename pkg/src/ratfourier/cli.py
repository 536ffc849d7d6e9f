"""Command-line front end.

Subcommands
-----------
eval         approximate the transform on a nu grid and compare with the reference
coeffs       export the per-term expansion coefficients
collapse     export the single-ratio P/Q form and check it against the partial fractions
reconstruct  time-domain cosine reconstruction for a list of decay constants
baseline     the shifted-grid approximation with the phase multiplier

Exit codes: 0 success, 1 invalid configuration, 2 numeric tolerance
exceeded, 3 I/O failure. Tables go to ``--out`` (summary on stdout) or, if
``--out`` is omitted, to stdout (summary on stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from .approx import PartialFractionModel, eval_baseline, reconstruct_time_domain
from .coeffs import compute_baseline_coeffs, compute_coeffs
from .fnmodel import (
    BuiltinFunction,
    FunctionKind,
    ParamSet,
    Parity,
    SampledFunction,
    load_samples,
    sample_builtin,
    sample_shifted,
)
from .oracle import analytic_reference, make_report
from .polyform import agreement, agreement_tolerance, collapse, eval_rational, to_dict
from .presets import PRESET_FOR_KIND, PRESETS

LOGGER = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_TOLERANCE, EXIT_IO = 0, 1, 2, 3

FUNCTION_NAMES = {
    "rect": FunctionKind.RECT_SMOOTH,
    "t-rect": FunctionKind.T_RECT_SMOOTH,
    "gauss": FunctionKind.GAUSS,
    "t-gauss": FunctionKind.T_GAUSS,
}


class ConfigError(ValueError):
    pass


class ToleranceError(RuntimeError):
    pass


@dataclass
class RunConfig:
    kind: FunctionKind | None = FunctionKind.RECT_SMOOTH
    samples: str | None = None
    parity: Parity | None = None
    params: ParamSet = PRESETS[0].params
    k: int = 35
    nu_min: float = -2 * math.pi
    nu_max: float = 2 * math.pi
    points: int = 1000
    fmt: str = "csv"
    out: str | None = None
    collapse: bool = False
    shift_a: float | None = None
    terms: int | None = None
    tol: float | None = None
    t_range: tuple[float, float] | None = None
    t_points: int = 601
    sigmas: list[float] = field(default_factory=lambda: [0.0, 0.25, 0.75])
    undamped: bool = False

    def sampled(self) -> SampledFunction:
        if self.samples is not None:
            return load_samples(self.samples, self.params, self.parity)
        return sample_builtin(BuiltinFunction(self.kind, self.k), self.params)

    def grid(self) -> np.ndarray:
        return np.linspace(self.nu_min, self.nu_max, self.points)


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ConfigError(f"--preset must be one of {sorted(PRESETS)}, got {args.preset}")
        preset = PRESETS[args.preset]
        cfg.kind, cfg.params = preset.kind, preset.params
    if args.function is not None:
        cfg.kind = FUNCTION_NAMES[args.function]
        if args.preset is None:
            cfg.params = PRESETS[PRESET_FOR_KIND[cfg.kind]].params
    if args.samples is not None:
        if args.function is not None:
            raise ConfigError("--samples and --function are mutually exclusive")
        if args.parity is None:
            raise ConfigError("--samples requires --parity")
        cfg.kind, cfg.samples, cfg.parity = None, args.samples, Parity(args.parity)
    overrides = {k: v for k, v in (("M", args.M), ("N", args.N), ("h", args.h), ("sigma", args.sigma)) if v is not None}
    if overrides:
        try:
            cfg.params = replace(cfg.params, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if args.k is not None:
        cfg.k = args.k
    for name in ("nu_min", "nu_max", "points", "out", "tol"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if cfg.points < 2:
        raise ConfigError(f"--points must be at least 2, got {cfg.points}")
    if not cfg.nu_max > cfg.nu_min:
        raise ConfigError("--nu-max must exceed --nu-min")
    cfg.fmt = args.format
    cfg.collapse = getattr(args, "collapse", False)
    cfg.shift_a = getattr(args, "shift_a", None)
    cfg.terms = getattr(args, "terms", None)
    if getattr(args, "undamped", False):
        cfg.undamped = True
    if getattr(args, "sigmas", None) is not None:
        try:
            cfg.sigmas = [float(s) for s in args.sigmas.split(",")]
        except ValueError:
            raise ConfigError(f"--sigmas must be a comma-separated list of numbers, got {args.sigmas!r}") from None
        if any(s < 0 for s in cfg.sigmas):
            raise ConfigError("--sigmas entries must be >= 0")
    if getattr(args, "t_min", None) is not None or getattr(args, "t_max", None) is not None:
        Mh = cfg.params.M * cfg.params.h
        t_min = args.t_min if args.t_min is not None else -Mh
        t_max = args.t_max if args.t_max is not None else (Mh if cfg.undamped else 4 * Mh)
        cfg.t_range = (t_min, t_max)
    if getattr(args, "t_points", None) is not None:
        cfg.t_points = args.t_points
    return cfg


def _write_table(cfg: RunConfig, columns: dict, summary: dict) -> None:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(columns))
        for row in zip(*columns.values()):
            writer.writerow([repr(float(v)) for v in row])
        text = buf.getvalue()
    else:
        record = {"summary": summary, "columns": {k: np.asarray(v, dtype=float).tolist() for k, v in columns.items()}}
        text = json.dumps(record, indent=1) + "\n"
    _emit(cfg, text)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w") as fh:
            fh.write(text)


def _report(cfg: RunConfig, line: str) -> None:
    print(line, file=sys.stdout if cfg.out is not None else sys.stderr)


def _describe(cfg: RunConfig) -> dict:
    d = {"params": cfg.params.to_dict()}
    if cfg.samples is not None:
        d.update(samples=cfg.samples, parity=cfg.parity.value)
    else:
        d.update(function=cfg.kind.value, k=cfg.k)
    return d


def cmd_eval(cfg: RunConfig) -> int:
    f = cfg.sampled()
    model = PartialFractionModel.from_samples(f)
    nu = cfg.grid()
    if cfg.collapse:
        approx = eval_rational(collapse(model), nu)
    else:
        approx = model(nu)
    summary = _describe(cfg) | {"form": "rational" if cfg.collapse else "partial-fraction"}
    if cfg.kind is None:
        _write_table(cfg, {"nu": nu, "approx": approx}, summary)
        return EXIT_OK
    rep = make_report(nu, approx, analytic_reference(cfg.kind, nu))
    summary |= {"max_abs_diff": rep.max_abs_diff, "argmax_nu": rep.argmax_nu}
    _write_table(cfg, {"nu": nu, "approx": approx, "reference": rep.reference, "abs_diff": rep.abs_diff}, summary)
    _report(cfg, f"max_abs_diff = {rep.max_abs_diff:.6e} at nu = {rep.argmax_nu:.6f}")
    if cfg.tol is not None and rep.max_abs_diff > cfg.tol:
        raise ToleranceError(f"max_abs_diff {rep.max_abs_diff:.3e} exceeds --tol {cfg.tol:.3e}")
    return EXIT_OK


def cmd_coeffs(cfg: RunConfig) -> int:
    c = compute_coeffs(cfg.sampled())
    if cfg.fmt == "csv":
        cols = {k: getattr(c, a) for k, a in (("alpha", "alpha"), ("beta", "beta"), ("eta", "eta"),
                                              ("theta", "theta"), ("kappa", "kappa"), ("lambda", "lam"), ("mu", "mu"))}
        _write_table(cfg, {"m": np.arange(1, len(c) + 1)} | cols, {})
    else:
        _emit(cfg, json.dumps(c.to_dict(), indent=1) + "\n")
    _report(cfg, f"{len(c)} terms, parity {c.parity.value}")
    return EXIT_OK


def cmd_collapse(cfg: RunConfig) -> int:
    model = PartialFractionModel.from_samples(cfg.sampled())
    r = collapse(model)
    diff, scale = agreement(r, model, cfg.grid())
    rel = diff / scale if scale > 0 else diff
    tol = agreement_tolerance(cfg.params.M)
    record = to_dict(r) | {"agreement": {"max_abs_diff": diff, "max_abs_F": scale, "relative": rel, "tolerance": tol}}
    _emit(cfg, json.dumps(record, indent=1) + "\n")
    _report(cfg, f"deg P = {r.P.degree}, deg Q = {r.Q.degree}, precision {r.precision.value}")
    _report(cfg, f"max |P/Q - partial fractions| / max |F| = {rel:.3e} (tolerance {tol:.0e})")
    if rel > tol:
        raise ToleranceError(
            f"collapsed form disagrees with partial fractions by {rel:.3e} > {tol:.0e}; "
            "use the partial-fraction evaluator or fewer terms"
        )
    return EXIT_OK


def cmd_reconstruct(cfg: RunConfig) -> int:
    f = cfg.sampled()
    Mh = cfg.params.M * cfg.params.h
    t_range = cfg.t_range or ((-Mh, Mh) if cfg.undamped else (-Mh, 4 * Mh))
    if cfg.undamped and max(abs(t_range[0]), abs(t_range[1])) > Mh:
        raise ConfigError(f"undamped reconstruction needs |t| <= M*h = {Mh:g}")
    t = np.linspace(t_range[0], t_range[1], cfg.t_points)
    cols = {"t": t}
    for s in cfg.sigmas:
        cols[f"sigma={s:g}"] = reconstruct_time_domain(f, t, damped=not cfg.undamped, sigma=s)
    _write_table(cfg, cols, _describe(cfg) | {"damped": not cfg.undamped})
    _report(cfg, f"{t.size} points on [{t_range[0]:g}, {t_range[1]:g}], sigmas {cfg.sigmas}")
    return EXIT_OK


def cmd_baseline(cfg: RunConfig) -> int:
    if cfg.kind is None:
        raise ConfigError("baseline needs a built-in --function or --preset (samples are on the shifted grid)")
    p = cfg.params
    a = p.N * p.h / 2 if cfg.shift_a is None else cfg.shift_a
    shifted = sample_shifted(BuiltinFunction(cfg.kind, cfg.k), p, a)
    bc = compute_baseline_coeffs(shifted, p, a, cfg.terms)
    nu = cfg.grid()
    F = eval_baseline(bc, nu)
    ref = analytic_reference(cfg.kind, nu)
    diff = np.abs(F - ref)
    i = int(np.argmax(diff))
    summary = _describe(cfg) | {"a": a, "terms": bc.terms, "max_abs_diff": float(diff[i]), "argmax_nu": float(nu[i])}
    _write_table(cfg, {"nu": nu, "re": F.real, "im": F.imag, "reference": ref, "abs_diff": diff}, summary)
    _report(cfg, f"max_abs_diff = {diff[i]:.6e} at nu = {nu[i]:.6f} (a = {a:g}, {bc.terms} terms)")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "coeffs": cmd_coeffs,
    "collapse": cmd_collapse,
    "reconstruct": cmd_reconstruct,
    "baseline": cmd_baseline,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--preset", type=int, help="reference configuration 0..3 (default 0)")
    src.add_argument("--function", choices=sorted(FUNCTION_NAMES), help="built-in input function")
    src.add_argument("--samples", help="file of 't, re, im' rows on the n*h grid")
    src.add_argument("--parity", choices=[p.value for p in Parity], help="parity of --samples data")
    src.add_argument("--k", type=int, help="smoothing exponent of the rect family (default 35)")
    par = common.add_argument_group("parameters")
    par.add_argument("--M", type=int, help="number of terms")
    par.add_argument("--N", type=int, help="half sample count")
    par.add_argument("--h", type=float, help="sampling step")
    par.add_argument("--sigma", type=float, help="decay constant (> 0)")
    grid = common.add_argument_group("output")
    grid.add_argument("--nu-min", type=float, dest="nu_min")
    grid.add_argument("--nu-max", type=float, dest="nu_max")
    grid.add_argument("--points", type=int)
    grid.add_argument("--out", help="output path (default: stdout)")
    grid.add_argument("--format", choices=["csv", "structured"], default="csv")

    parser = argparse.ArgumentParser(prog="ratfourier", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate the approximation")
    p.add_argument("--collapse", action="store_true", help="evaluate the collapsed P/Q form instead")
    p.add_argument("--tol", type=float, help="exit 2 if max abs difference exceeds this")
    sub.add_parser("coeffs", parents=[common], help="export expansion coefficients")
    sub.add_parser("collapse", parents=[common], help="export P/Q and check agreement")
    p = sub.add_parser("reconstruct", parents=[common], help="time-domain reconstruction")
    p.add_argument("--t-min", type=float, dest="t_min")
    p.add_argument("--t-max", type=float, dest="t_max")
    p.add_argument("--t-points", type=int, dest="t_points")
    p.add_argument("--sigmas", help="comma-separated decay constants (default 0,0.25,0.75)")
    p.add_argument("--undamped", action="store_true", help="omit the exp(-sigma t) factor (|t| <= M h)")
    p = sub.add_parser("baseline", parents=[common], help="shifted-grid baseline approximation")
    p.add_argument("--shift-a", type=float, dest="shift_a", help="shift constant (default N*h/2)")
    p.add_argument("--terms", type=int, help="number of terms (default M)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        cfg = _config_from_args(args)
        return COMMANDS[args.command](cfg)
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
