import math

import pytest

from steinfrechet import SweepSpec, fit_rate, frechet_compare, run_sweep
from steinfrechet.errors import ParameterError
from steinfrechet.sweep import SWEEP_COLUMNS, fmt, read_sweep, rate_series, table1, write_csv


def test_fmt():
    assert fmt(None) == ""
    assert fmt(3) == "3"
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt("ERROR:x") == "ERROR:x"


def test_spec_validation():
    with pytest.raises(ParameterError):
        SweepSpec("pareto", [])
    with pytest.raises(ParameterError):
        SweepSpec("pareto", [100, 10])
    with pytest.raises(ParameterError):
        SweepSpec("pareto", [10, 10.5])


def test_sweep_roundtrip(tmp_path):
    path = tmp_path / "s.csv"
    spec = SweepSpec("pareto", [9, 99, 999], {"alpha": 2.0}, weighted=True, output_path=str(path))
    rows, text = run_sweep(spec)
    assert text.splitlines()[0] == ",".join(SWEEP_COLUMNS)
    back = read_sweep(path)
    assert [r["n"] for r in back] == [9, 99, 999]
    for r, n in zip(back, (9, 99, 999)):
        assert r["delta"] == pytest.approx(1 / (n + 1), abs=1e-10)
        assert r["wass_bound"] is not None
        assert r["kol_oracle"] is None


def test_sweep_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path, workers in ((a, 1), (b, 3)):
        run_sweep(SweepSpec("cauchy", [10, 100, 1000], output_path=str(path)), workers=workers)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_sweep_error_row():
    rows, _ = run_sweep(SweepSpec("loglog_corrected", [1, 100], {"alpha": 1.0}))
    assert rows[0]["delta"].startswith("ERROR:")
    assert isinstance(rows[1]["delta"], float)


def test_fit_rate_exact_power():
    series = [(n, 3.0 / n) for n in (10, 100, 1000, 10**4)]
    fit = fit_rate(series, rate=lambda n: n)
    assert fit.slope == pytest.approx(-1.0, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert [v for _, v in fit.scaled_limits] == pytest.approx([3.0] * 4)


def test_fit_rate_needs_three_points():
    with pytest.raises(ParameterError):
        fit_rate([(10, 1.0), (100, 0.1)])
    with pytest.raises(ParameterError):
        fit_rate([(10, 1.0), (100, 0.0), (1000, 0.1)])


def test_rate_series_skips_errors():
    rows = [{"n": 1, "delta": "ERROR:x"}, {"n": 10, "delta": 0.5}, {"n": 100, "delta": None}]
    assert rate_series(rows) == [(10, 0.5)]


def test_frechet_compare():
    out = frechet_compare(2.0, 3.0)
    assert out["delta_closed"] == pytest.approx(out["delta_quad"], abs=1e-8)
    assert out["delta_w_closed"] == pytest.approx(out["delta_w_quad"], abs=1e-8)
    assert frechet_compare(1.0, 2.0)["note"]
    with pytest.raises(ParameterError):
        frechet_compare(3.0, 2.0)


def test_table1_pareto_row():
    from steinfrechet import catalog

    rows = table1(n_values=(10**4,), laws={"pareto": catalog("pareto", alpha=2.0)})
    assert rows[0]["scaled_kol"] == pytest.approx(2 * math.exp(-2), rel=0.05)


def test_write_csv_returns_text():
    text = write_csv([{"a": 1, "b": None}], ("a", "b"))
    assert text == "a,b\n1,\n"
