import math

import numpy as np
import pytest

from steadyinv.errors import NotAsymptoticallyStable, StepSizeTooLarge, ValidationError
from steadyinv.lti import StateSpace, TransferFunction, tf_to_ss
from steadyinv.signal import ModeSum, SignalTerm, canonicalize
from steadyinv.sim import SimConfig, check_response, realize, simulate, verify_tracking

FIRST = StateSpace([[-1.0]], [[1.0]], [[1.0]], [[0.0]])
W1 = TransferFunction([1.0], [1.0, 1.0])


def step_error(dt):
    trace = simulate(FIRST, canonicalize([SignalTerm(1)]), SimConfig(t_final=1.0, dt=dt))
    assert trace.t[-1] == pytest.approx(1.0)
    return abs(trace.y[-1] - (1 - math.exp(-1)))


def test_config_validation():
    with pytest.raises(ValidationError):
        SimConfig(dt=0)
    with pytest.raises(ValidationError):
        SimConfig(t_final=1, dt=2)
    with pytest.raises(ValidationError):
        SimConfig(tail_fraction=1.0)
    with pytest.raises(ValidationError):
        SimConfig(tol=0)


def test_sample_count():
    assert len(simulate(FIRST, ModeSum(), SimConfig(t_final=0.3, dt=0.1))) == 4
    assert SimConfig().n_samples == 50001


def test_zero_input_zero_trace():
    trace = simulate(FIRST, ModeSum())
    assert np.all(trace.y == 0) and np.all(trace.u == 0)


def test_step_response():
    trace = simulate(FIRST, canonicalize([SignalTerm(1)]), SimConfig(t_final=10))
    i = int(round(5 / 1e-3))
    assert trace.t[i] == pytest.approx(5.0)
    assert abs(trace.y[i] - (1 - math.exp(-5))) < 1e-4


def test_sinusoid_tail():
    trace = simulate(FIRST, canonicalize([SignalTerm(1, omega=1)]))
    tail = trace.t >= 25
    want = np.sin(trace.t[tail] - math.pi / 4) / math.sqrt(2)
    assert np.max(np.abs(trace.y[tail] - want)) < 1e-4


def test_rk4_order():
    ratio = step_error(0.1) / step_error(0.05)
    assert 12 <= ratio <= 20


def test_step_size_guard():
    with pytest.raises(StepSizeTooLarge):
        simulate(FIRST, ModeSum(), SimConfig(t_final=100, dt=0.6))


def test_pure_feedthrough():
    ss = StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[3.0]])
    trace = simulate(ss, canonicalize([SignalTerm(1, omega=2)]), SimConfig(t_final=2, dt=0.01))
    assert np.array_equal(trace.y, 3.0 * trace.u)


def test_deterministic():
    u = canonicalize([SignalTerm(1, degree=1, omega=3)])
    a = simulate(FIRST, u, SimConfig(t_final=5))
    b = simulate(FIRST, u, SimConfig(t_final=5))
    assert np.array_equal(a.y, b.y)


def test_balanced_realization_same_transfer(rng):
    tf = TransferFunction([2.0, 1.0, 0.5], np.real(np.poly([-5, -5, -4, -3 + 2j, -3 - 2j]))[::-1])
    _, ss = realize(tf)
    raw = tf_to_ss(tf)
    assert np.max(np.sum(np.abs(ss.A), axis=1)) < np.max(np.sum(np.abs(raw.A), axis=1))
    for s in [0.3j, 1 + 2j, -0.5 + 0.1j]:
        assert ss.transfer_at(s) == pytest.approx(raw.transfer_at(s), rel=1e-12)


def test_verify_sinusoid():
    rep = verify_tracking(W1, canonicalize([SignalTerm(1, omega=1)]))
    assert rep.passed and rep.max_tail_rel_err < 1e-4
    assert rep.transient_end == 25
    assert set(rep.trace_summary) == {"min_abs_err", "max_abs_err", "final_abs_err"}


def test_verify_unstable():
    with pytest.raises(NotAsymptoticallyStable):
        verify_tracking(TransferFunction([1], [-1, 1]), canonicalize([SignalTerm(1, omega=1)]))


def test_verify_exponential():
    rep = verify_tracking(W1, canonicalize([SignalTerm(1, growth=0.2)]), SimConfig(t_final=30))
    assert rep.passed and rep.max_tail_rel_err < 1e-4
    (mode,) = rep.synthesis.input.modes
    assert mode.poly[0].real == pytest.approx(1.2, rel=1e-14)


def test_verify_state_space_plant():
    ss = StateSpace(np.diag([-1.0, -2.0]), [[1], [1]], [[1, 1]], [[0.5]])
    rep = verify_tracking(ss, canonicalize([SignalTerm(1, degree=1), SignalTerm(0.5, omega=2, phase=1)]))
    assert rep.passed and rep.max_tail_rel_err < 1e-6


def test_check_response_confirms_forward_map():
    u = canonicalize([SignalTerm(1, degree=1, growth=0.1, omega=1.5)])
    rep = check_response(W1, u)
    assert rep.max_tail_rel_err < 1e-6


def test_failing_tolerance():
    rep = verify_tracking(W1, canonicalize([SignalTerm(1, omega=1)]), SimConfig(tol=1e-16))
    assert not rep.passed


def test_csv(tmp_path):
    trace = simulate(FIRST, canonicalize([SignalTerm(1, omega=1)]), SimConfig(t_final=1, dt=0.1),
                     reference=canonicalize([SignalTerm(0.5, omega=1)]))
    path = tmp_path / "t.csv"
    trace.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,u,y,y_desired,abs_err"
    assert len(lines) == len(trace) + 1
    row = [float(v) for v in lines[5].split(",")]
    assert row == list(next(r for i, r in enumerate(trace.rows()) if i == 4))
