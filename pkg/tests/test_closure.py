import math

import numpy as np
import pytest

from curvedttw.closure import phase_distance, recurrence
from curvedttw.dynamics import Harmonic, ModelParams, PhaseState
from curvedttw.integrate import IntegratorConfig

CFG = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13, sample_dt=0.05)


def test_phase_distance_wraps_angle():
    a = np.array([1.0, 0.1, 0.0, 0.0])
    b = np.array([1.0, 0.1 + 2 * math.pi, 0.0, 0.0])
    assert phase_distance(a, b) == pytest.approx(0.0, abs=1e-15)


def test_flat_harmonic_recurrence_at_period():
    rec = recurrence(ModelParams(0.0, 1.0, Harmonic()), PhaseState(1.0, 0.3, 0.4, 0.7), 7.0, CFG)
    assert rec.distance <= 1e-6
    assert rec.time == pytest.approx(2 * math.pi, abs=1e-6)


def test_infinite_tolerance_reports_distance():
    # sphere oscillator on a short window: the distance is reported whatever it is
    rec = recurrence(ModelParams(1.0, 1.0), PhaseState(0.5, 0.3, 0.4, 0.7), 1.0, CFG, tol=math.inf)
    assert math.isfinite(rec.distance) and 0 < rec.time <= 1.0
