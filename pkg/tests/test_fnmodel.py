import math
import warnings

import numpy as np
import pytest

from ratfourier.fnmodel import (
    BuiltinFunction,
    CoverageWarning,
    FunctionKind,
    ParamSet,
    Parity,
    SampledFunction,
    SampleFileError,
    SaturationWarning,
    load_samples,
    make_params,
    sample_builtin,
    write_samples,
)

FIG5 = (32, 28, 0.04, 2.7)


@pytest.mark.parametrize("args", [FIG5, (16, 23, 0.119, 6.9)])
def test_make_params_accepts_published_sets(args):
    p = make_params(*args)
    assert (p.M, p.N, p.h, p.sigma) == args


@pytest.mark.parametrize(
    "args, field",
    [
        ((32, 28, 0.04, 0.0), "sigma"),
        ((32, 28, 0.04, -1.0), "sigma"),
        ((0, 28, 0.04, 2.7), "M"),
        ((32, 0, 0.04, 2.7), "N"),
        ((32, 28, 0.0, 2.7), "h"),
        ((32.5, 28, 0.04, 2.7), "M"),
    ],
)
def test_make_params_rejects(args, field):
    with pytest.raises(ValueError, match=field):
        make_params(*args)


def test_span_and_coverage():
    p = make_params(*FIG5, width=1.2)
    assert p.span == pytest.approx(2.24)
    assert p.covers()
    assert not p.covers(3.0)
    assert make_params(*FIG5).covers()


@pytest.mark.filterwarnings("ignore::ratfourier.fnmodel.CoverageWarning")
def test_builtin_values_at_origin():
    p = make_params(*FIG5)
    assert sample_builtin(BuiltinFunction("rect_smooth"), p).samples[p.N] == 1.0
    g = sample_builtin(BuiltinFunction("gauss"), p).samples[p.N]
    assert g == math.sqrt(math.pi)
    assert g.real == pytest.approx(1.7724539, abs=1e-7)


def test_rect_tail_sample():
    # 1/(2.24**70 + 1) evaluated with mpmath at 40 digits
    expected = 3.0383564086579052e-25
    f = sample_builtin(BuiltinFunction("rect_smooth", 35), make_params(*FIG5))
    assert f.samples[-1].real == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("k", [1, 2, 35, 100])
def test_rect_half_height_at_edges(k):
    fn = BuiltinFunction("rect_smooth", k)
    assert fn(np.array([-0.5, 0.5])).real.tolist() == [0.5, 0.5]


def test_builtin_formulas():
    t = np.array([0.1, 0.3, 0.7])
    assert np.allclose(BuiltinFunction("t_rect_smooth")(t), 1j * t / ((2 * t) ** 70 + 1), rtol=1e-15)
    assert np.allclose(BuiltinFunction("t_gauss")(t), 1j * np.pi**1.5 * t * np.exp(-((np.pi * t) ** 2)), rtol=1e-15)


@pytest.mark.filterwarnings("ignore::ratfourier.fnmodel.CoverageWarning")
@pytest.mark.parametrize("kind", list(FunctionKind))
def test_builtin_samples_mirror_exactly(kind):
    f = sample_builtin(BuiltinFunction(kind), make_params(*FIG5))
    s = f.samples
    assert np.array_equal(s.real, s.real[::-1])
    assert np.array_equal(s.imag, -s.imag[::-1])
    assert f.parity is kind.parity


def test_saturation_warns_and_zeroes():
    p = make_params(4, 200, 100.0, 1.0)  # (2t)**70 overflows once 2t > ~2.5e4
    with pytest.warns(SaturationWarning):
        f = sample_builtin(BuiltinFunction("rect_smooth"), p)
    assert f.samples[0] == 0


def test_coverage_warning():
    with pytest.warns(CoverageWarning):
        sample_builtin(BuiltinFunction("rect_smooth"), make_params(8, 5, 0.04, 1.0))


def test_sampled_function_length_and_parity_checks():
    p = make_params(2, 2, 0.1, 1.0)
    with pytest.raises(ValueError, match="expected 5"):
        SampledFunction(p, np.ones(4), Parity.EVEN_REAL)
    with pytest.raises(ValueError, match="n=-2"):
        SampledFunction(p, [1.001, 1, 1, 1, 1], Parity.EVEN_REAL)
    with pytest.raises(ValueError, match="parity"):
        SampledFunction(p, [0, 0, 1j, 0, 0], Parity.ODD_IMAGINARY)
    mixed = SampledFunction(p, [1 - 2j, 2 - 1j, 3, 2 + 1j, 1 + 2j], Parity.MIXED)
    assert mixed.parity is Parity.MIXED


@pytest.mark.filterwarnings("ignore::ratfourier.fnmodel.CoverageWarning")
def test_samples_are_read_only():
    f = sample_builtin(BuiltinFunction("gauss"), make_params(2, 2, 0.1, 1.0))
    with pytest.raises(ValueError):
        f.samples[0] = 0


@pytest.mark.filterwarnings("ignore::ratfourier.fnmodel.CoverageWarning")
@pytest.mark.parametrize("kind", list(FunctionKind))
def test_sample_file_round_trip_bitwise(tmp_path, kind):
    p = make_params(*FIG5)
    f = sample_builtin(BuiltinFunction(kind), p)
    path = tmp_path / "s.csv"
    write_samples(f, path)
    g = load_samples(path, p, kind.parity)
    assert g.samples.tobytes() == f.samples.tobytes()


def test_load_rejects_row_count(tmp_path):
    p = make_params(*FIG5)
    f = sample_builtin(BuiltinFunction("rect_smooth"), p)
    path = tmp_path / "s.csv"
    write_samples(f, path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(SampleFileError, match="row count 56"):
        load_samples(path, p, "even-real")


def test_load_rejects_grid_mismatch(tmp_path):
    p = make_params(2, 2, 0.1, 1.0)
    path = tmp_path / "s.csv"
    path.write_text("-0.2,1,0\n-0.1,1,0\n0,1,0\n0.1000001,1,0\n0.2,1,0\n")
    with pytest.raises(SampleFileError, match="grid mismatch at row 3"):
        load_samples(path, p, "even-real")


def test_load_reports_worst_parity_offender(tmp_path):
    p = make_params(2, 2, 0.1, 1.0)
    path = tmp_path / "s.csv"
    path.write_text("# t, re, im\n-0.2,0.5,0\n-0.1,0.999,0\n0,1,0\n0.1,1,0\n0.2,0.5,0\n")
    with pytest.raises(SampleFileError, match="n=-1"):
        load_samples(path, p, "even-real")


def test_load_accepts_header_and_tolerates_tiny_parity_noise(tmp_path):
    p = make_params(2, 2, 0.1, 1.0)
    path = tmp_path / "s.csv"
    path.write_text("# t, re, im\n-0.2,0.5,0\n-0.1,1,0\n0,1,0\n0.1,1.0000000000001,0\n0.2,0.5,0\n")
    f = load_samples(path, p, "even-real")
    assert f.samples.size == 5


def test_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        load_samples(tmp_path / "nope.csv", make_params(2, 2, 0.1, 1.0), "even-real")


def test_paramset_is_immutable():
    p = make_params(*FIG5)
    with pytest.raises(Exception):
        p.M = 3
    assert isinstance(p, ParamSet)
