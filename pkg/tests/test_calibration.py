import math

import numpy as np
import pytest

from vinepayload.calibration import (
    CalibrationError,
    InclineRecord,
    SchemaError,
    extract_k,
    fit_f_loss,
    fit_f_loss_by_bound,
    fit_line,
    read_incline_csv,
    read_trace_csv,
    synthetic_force_trace,
    synthetic_incline_records,
    write_incline_csv,
    write_trace_csv,
)
from vinepayload.core import PayloadSpec, PressureState
from vinepayload.grasp import effective_contact_area

MASSES = [0.1 * k for k in range(1, 16)]
THETAS = [math.radians(a) for a in (30, 45, 60, 90)]


def test_fit_exact_line():
    fit = fit_line([(0, 1), (1, 3)])
    assert (fit.slope, fit.intercept, fit.r_squared, fit.n_points) == (2.0, 1.0, 1.0, 2)


def test_fit_recovers_generated_line():
    x = np.linspace(0, 20, 50)
    fit = fit_line(zip(x, 0.5 * x + 3.6))
    assert fit.slope == pytest.approx(0.5, abs=1e-9)
    assert fit.intercept == pytest.approx(3.6, abs=1e-9)


def test_fit_constant():
    fit = fit_line([(0, 2.0), (1, 2.0), (5, 2.0)])
    assert fit.slope == 0.0 and fit.intercept == 2.0


def test_fit_degenerate():
    with pytest.raises(CalibrationError):
        fit_line([(1, 1), (1, 2)])
    with pytest.raises(CalibrationError):
        fit_line([(1, 1)])


def test_fit_order_invariant():
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(30, 2))
    a = fit_line(pts)
    b = fit_line(pts[::-1])
    assert a.slope == pytest.approx(b.slope, rel=1e-12)
    assert a.intercept == pytest.approx(b.intercept, rel=1e-12, abs=1e-15)


def test_fit_slope_translation_invariant():
    rng = np.random.default_rng(4)
    pts = rng.normal(size=(30, 2))
    shifted = pts + np.array([7.5, 0.0])
    assert fit_line(pts).slope == pytest.approx(fit_line(shifted).slope, rel=1e-10)


def test_f_loss_round_trip(robot):
    fit = fit_f_loss(synthetic_incline_records(robot, MASSES, THETAS), robot)
    assert fit.intercept == pytest.approx(3.6, abs=1e-6)
    assert fit.slope == pytest.approx(1.0, abs=1e-9)


def test_f_loss_zero(robot):
    r = robot.with_(f_loss=0.0)
    assert fit_f_loss(synthetic_incline_records(r, MASSES, THETAS), r).intercept == pytest.approx(0.0, abs=1e-9)


def test_f_loss_needs_spread(robot):
    with pytest.raises(CalibrationError):
        fit_f_loss([(1000.0, 0.5, 0.5), (1100.0, 0.5, 0.5)], robot)


def test_f_loss_by_bound(robot):
    base = synthetic_incline_records(robot, MASSES, THETAS)
    records = [InclineRecord(r.p_outer * 0.95, r.mass, r.theta, "lower") for r in base]
    records += [InclineRecord(r.p_outer * 1.05, r.mass, r.theta, "upper") for r in base]
    fits = fit_f_loss_by_bound(records, robot)
    assert set(fits) == {"all", "lower", "upper"}
    assert fits["lower"].intercept < fits["all"].intercept < fits["upper"].intercept
    assert fits["all"].intercept == pytest.approx(3.6, abs=1e-9)


def test_extract_k_round_trip(robot):
    payload = PayloadSpec.cylinder(0.04, 0.20, mu_surface=0.27)
    trace = synthetic_force_trace(robot, payload, np.linspace(5000, 1000, 60))
    k_true = effective_contact_area(robot, payload, PressureState(5000.0)).k_effective
    fit = extract_k(trace)
    assert fit.slope == pytest.approx(k_true, rel=1e-3)
    assert fit.slope * 1e3 == pytest.approx(7.125, rel=1e-3)


def test_extract_k_zero_force():
    assert extract_k([(p, 0.0) for p in (1000.0, 2000.0, 3000.0)]).slope == 0.0


def test_extract_k_two_points():
    assert extract_k([(1000.0, 7.0), (3000.0, 21.0)]).slope == pytest.approx(7e-3, rel=1e-14)


def test_extract_k_span_too_small():
    with pytest.raises(CalibrationError):
        extract_k([(1000.0, 1.0), (1400.0, 2.0)])


def test_csv_round_trip(tmp_path, robot):
    records = synthetic_incline_records(robot, MASSES, THETAS)
    path = tmp_path / "incline.csv"
    write_incline_csv(path, records)
    loaded = read_incline_csv(path)
    assert fit_f_loss(loaded, robot).intercept == pytest.approx(3.6, abs=1e-6)

    trace_path = tmp_path / "trace.csv"
    write_trace_csv(trace_path, [(1000.0, 7.0), (3000.0, 21.0)])
    assert read_trace_csv(trace_path) == [(1000.0, 7.0), (3000.0, 21.0)]


def test_csv_missing_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("p_outer_Pa,mass_kg\n1000,0.5\n")
    with pytest.raises(SchemaError, match="theta_deg"):
        read_incline_csv(path)


def test_csv_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(SchemaError):
        read_trace_csv(path)


def test_csv_bad_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("pressure_Pa,force_N\n1000,abc\n")
    with pytest.raises(SchemaError, match="line 2"):
        read_trace_csv(path)
