import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from licstirap.model import (ModelParams, check_conditions, hamiltonian_2, hamiltonian_3,
                             loss_split)
from licstirap.pulses import GaussianPulse, PulseSet


def peaks(omega=50.0, gi=50.0, gc=0.0):
    return PulseSet(GaussianPulse(omega), GaussianPulse(gi), GaussianPulse(gc))


def test_hamiltonian_2_examples():
    h = hamiltonian_2(0.0, peaks(), ModelParams(gamma_loss=100))
    np.testing.assert_array_equal(h, [[0, 25], [25, -75j]])
    h = hamiltonian_2(0.0, peaks(), ModelParams(gamma_loss=100, delta_pump=10))
    np.testing.assert_array_equal(h, [[0, 25], [25, 10 - 75j]])
    h = hamiltonian_2(0.0, peaks(0, 0), ModelParams())
    np.testing.assert_array_equal(h, np.zeros((2, 2)))


def test_hamiltonian_3_entries():
    p = ModelParams(gamma_loss=100, delta_control=10, fano_q=3, model_kind="three_level")
    h = hamiltonian_3(0.0, peaks(50, 50, 50), p)
    assert h[1, 2] == pytest.approx(-(3 + 1j) * 25)
    assert h[2, 1] == h[1, 2]
    assert h[2, 2] == pytest.approx(10 - 25j)
    assert h[1, 1] == pytest.approx(-75j)
    assert h[0, 1] == 25
    assert h[0, 2] == 0


def test_hamiltonian_3_reduces_to_2():
    p = ModelParams(gamma_loss=7, delta_pump=3, delta_control=-4, fano_q=2, stark_1=0.5,
                    stark_2=-0.2, stark_c=0.1, model_kind="three_level")
    ps = PulseSet(GaussianPulse(30, 0.2), GaussianPulse(40, -1), GaussianPulse(0.0, 1))
    for t in (-2.0, 0.0, 0.7):
        h3 = hamiltonian_3(t, ps, p)
        np.testing.assert_array_equal(h3[:2, :2], hamiltonian_2(t, ps, p))
        np.testing.assert_array_equal(h3[2, :2], 0)
        assert h3[2, 2] == -4 + 0.1


def test_all_pulses_off():
    p = ModelParams(delta_pump=2, delta_control=5, model_kind="three_level")
    np.testing.assert_array_equal(hamiltonian_3(0.0, peaks(0, 0, 0), p), np.diag([0, 2, 5]))


def test_loss_split_examples():
    s = loss_split(0.0, peaks(), ModelParams(gamma_loss=100))
    np.testing.assert_allclose(s.loss, np.diag([0, 150]))
    np.testing.assert_allclose(s.ionization, np.diag([0, 50]))
    s = loss_split(0.0, peaks(50, 50, 50), ModelParams(fano_q=3, model_kind="three_level"))
    np.testing.assert_allclose(s.ionization, [[0, 0, 0], [0, 50, 50], [0, 50, 50]], atol=1e-12)
    assert np.linalg.det(s.ionization[1:, 1:]) == pytest.approx(0, abs=1e-9)
    s = loss_split(0.0, peaks(3, 0, 0), ModelParams(model_kind="three_level"))
    np.testing.assert_array_equal(s.loss, 0)


rate = st.floats(0, 100)
detuning = st.floats(-20, 20)


@given(rate, rate, rate, rate, detuning, detuning, st.floats(-6, 6), st.floats(-3, 3))
def test_symmetry_and_psd_loss(om, gi, gc, g, d1, d2, q, t):
    ps = PulseSet(GaussianPulse(om), GaussianPulse(gi, -1), GaussianPulse(gc, -0.5))
    p = ModelParams(delta_pump=d1, delta_control=d2, gamma_loss=g, fano_q=q,
                    model_kind="three_level")
    h = hamiltonian_3(t, ps, p)
    np.testing.assert_array_equal(h, h.T)
    s = loss_split(t, ps, p)
    np.testing.assert_allclose(s.hermitian - 0.5j * s.loss, h, atol=1e-12 * (1 + abs(h).max()))
    np.testing.assert_allclose(s.loss, s.loss.T)
    for m in (s.loss, s.ionization):
        assert np.linalg.eigvalsh(m).min() >= -1e-9 * (1 + abs(m).max())


def test_check_conditions():
    d = check_conditions(0.0, peaks(), ModelParams(gamma_loss=100))
    assert d.pump_area == pytest.approx(50 * math.sqrt(math.pi))
    assert d.pump_area == pytest.approx(88.62, abs=0.01)
    assert d.damping_ratio == pytest.approx(3.0)
    assert d.depletion_ratio == pytest.approx(2500 / 150)
    assert d.pump_area_large and d.ionizing_area_large and not d.damping_large
    d = check_conditions(0.0, peaks(0, 50), ModelParams(gamma_loss=100))
    assert d.damping_ratio == math.inf
    assert d.depletion_ratio == 0.0
    assert len(d.lines()) == 2


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(gamma_loss=-1)
    with pytest.raises(ValueError):
        ModelParams(model_kind="four_level")
    assert ModelParams(stark_1=1, stark_2=3).stark == 2
